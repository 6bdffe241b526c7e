#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qweb/analysis.hpp"
#include "qweb/bond.hpp"
#include "qweb/corpus.hpp"
#include "qweb/replication.hpp"
#include "qweb/serialize.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::vector<std::string> split_terms(const std::string& csv) {
    std::vector<std::string> terms;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) terms.push_back(item);
    }
    return terms;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write output file: " + out_path);
    out << text << "\n";
}

std::string render_value(const nlohmann::json& v) {
    if (v.is_number_float()) return fmt(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

// Aligned two-column rendering of a (possibly nested) report object.
void render_table(const nlohmann::json& j, const std::string& prefix, std::ostream& os) {
    for (const auto& [key, value] : j.items()) {
        const std::string label = prefix.empty() ? key : prefix + "." + key;
        if (value.is_object()) {
            render_table(value, label, os);
        } else {
            os << "  ";
            os.width(36);
            os.setf(std::ios::left);
            os << label;
            os << render_value(value) << "\n";
        }
    }
}

int cmd_index(const std::string& corpus_dir, const std::string& out_path, bool as_json) {
    const auto corpus = qweb::ingest_directory(corpus_dir);
    const auto index = qweb::index_to_json(corpus);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write output file: " + out_path);
        out << index.dump(2) << "\n";
    }
    if (as_json) {
        nlohmann::json summary{{"n", corpus.size()}, {"vocab", corpus.vocabulary_size()}};
        std::cout << summary.dump() << "\n";
    } else {
        std::cout << "n=" << corpus.size() << " vocab=" << corpus.vocabulary_size() << "\n";
    }
    return kExitOk;
}

int cmd_analyze(const std::string& corpus_dir, const std::string& stats_path,
                const std::string& terms_csv, std::optional<double> target,
                const std::string& out_path, bool as_json) {
    nlohmann::json report;
    if (!stats_path.empty()) {
        report = qweb::analyze_stats(qweb::stats_from_file(stats_path), target);
    } else {
        const auto terms = split_terms(terms_csv);
        if (terms.size() != 3)
            throw std::runtime_error("--terms must name exactly three terms A,B,X");
        const auto corpus = qweb::ingest_directory(corpus_dir);
        report = qweb::analyze_corpus(corpus, terms[0], terms[1], terms[2], target);
    }
    if (as_json) {
        emit(report.dump(2), out_path);
    } else {
        std::ostringstream os;
        render_table(report, "", os);
        emit(os.str(), out_path);
    }
    return kExitOk;
}

int cmd_replicate(bool as_json) {
    const double tolerance = qweb::replication_tolerance_from_env();
    const auto results = qweb::run_replication(tolerance);
    bool all_pass = true;
    if (as_json) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& r : results) {
            all_pass = all_pass && r.pass;
            rows.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        }
        std::cout << rows.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            all_pass = all_pass && r.pass;
            std::printf("[%2d/%zu] %s  %s — %s\n", r.id, results.size(),
                        r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        }
        std::printf("%s (tolerance %s)\n", all_pass ? "all checks passed" : "CHECKS FAILED",
                    fmt(tolerance).c_str());
    }
    return all_pass ? kExitOk : kExitCheckFailed;
}

int cmd_bond(const std::string& corpus_dir, const std::string& terms_csv,
             const std::string& out_path, bool as_json) {
    const auto terms = split_terms(terms_csv);
    if (terms.size() < 2) throw std::runtime_error("--terms must name at least two terms");
    const auto corpus = qweb::ingest_directory(corpus_dir);
    const auto rows = qweb::bond_matrix(corpus, terms);
    if (as_json) {
        emit(qweb::bond_rows_to_json(rows).dump(2), out_path);
        return kExitOk;
    }
    std::ostringstream os;
    for (const auto& row : rows) {
        os << "  ";
        os.width(24);
        os.setf(std::ios::left);
        os << (row.term_A + " ~ " + row.term_B);
        if (row.bond) {
            os << fmt(*row.bond) << "  " << qweb::to_string(*row.cls);
        } else {
            os << "undefined";
        }
        os << "\n";
    }
    emit(os.str(), out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Meaning-state modeling of document corpora: Born-rule probabilities, "
                 "interference intervals, conjunction/disjunction ranges, context fits "
                 "and meaning bonds computed from term co-occurrence counts."};
    app.require_subcommand(1);

    std::string corpus_dir, stats_path, terms_csv, out_path;
    double target = -1.0;
    bool as_json = false;
    app.add_flag("--json", as_json, "emit JSON instead of aligned text");

    auto* index = app.add_subcommand("index", "ingest a corpus directory and persist the index");
    index->add_option("--corpus", corpus_dir, "directory of UTF-8 .txt files")->required();
    index->add_option("--out", out_path, "write the index JSON here");

    auto* analyze = app.add_subcommand("analyze", "full co-occurrence report for terms A,B,X");
    analyze->add_option("--corpus", corpus_dir, "directory of UTF-8 .txt files");
    analyze->add_option("--stats", stats_path, "counts JSON file (bypasses the corpus)");
    analyze->add_option("--terms", terms_csv, "comma-separated A,B,X");
    analyze->add_option("--target", target, "target probability (default: n_ABX/n_AB)")
        ->check(CLI::Range(0.0, 1.0));
    analyze->add_option("--out", out_path, "write the report here");

    auto* replicate = app.add_subcommand("replicate", "run the built-in numeric checks");

    auto* bond = app.add_subcommand("bond", "pairwise uniform-state meaning bonds");
    bond->add_option("--corpus", corpus_dir, "directory of UTF-8 .txt files")->required();
    bond->add_option("--terms", terms_csv, "comma-separated term list (>= 2)")->required();
    bond->add_option("--out", out_path, "write the matrix here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (app.got_subcommand(index)) return cmd_index(corpus_dir, out_path, as_json);
        if (app.got_subcommand(analyze)) {
            if (stats_path.empty() == corpus_dir.empty())
                throw std::runtime_error("provide exactly one of --corpus or --stats");
            std::optional<double> t;
            if (target >= 0.0) t = target;
            return cmd_analyze(corpus_dir, stats_path, terms_csv, t, out_path, as_json);
        }
        if (app.got_subcommand(replicate)) return cmd_replicate(as_json);
        if (app.got_subcommand(bond)) return cmd_bond(corpus_dir, terms_csv, out_path, as_json);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
