#include "qweb/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qweb {

namespace {

bool is_token_byte(unsigned char c) {
    if (c >= 0x80) return true;  // any non-ASCII codepoint is a word character
    return std::isalnum(c) != 0;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw std::runtime_error("cannot read file: " + path.string());
    return std::move(buf).str();
}

}  // namespace

bool is_valid_utf8(std::string_view bytes) {
    std::size_t i = 0;
    const std::size_t size = bytes.size();
    while (i < size) {
        const auto b0 = static_cast<unsigned char>(bytes[i]);
        std::size_t len;
        unsigned char lo = 0x80, hi = 0xBF;
        if (b0 < 0x80) {
            ++i;
            continue;
        } else if (b0 >= 0xC2 && b0 <= 0xDF) {
            len = 2;
        } else if (b0 >= 0xE0 && b0 <= 0xEF) {
            len = 3;
            if (b0 == 0xE0) lo = 0xA0;        // reject overlong
            if (b0 == 0xED) hi = 0x9F;        // reject surrogates
        } else if (b0 >= 0xF0 && b0 <= 0xF4) {
            len = 4;
            if (b0 == 0xF0) lo = 0x90;        // reject overlong
            if (b0 == 0xF4) hi = 0x8F;        // reject > U+10FFFF
        } else {
            return false;                     // 0x80..0xC1, 0xF5..0xFF
        }
        if (i + len > size) return false;
        for (std::size_t k = 1; k < len; ++k) {
            const auto b = static_cast<unsigned char>(bytes[i + k]);
            const unsigned char min = (k == 1) ? lo : 0x80;
            const unsigned char max = (k == 1) ? hi : 0xBF;
            if (b < min || b > max) return false;
        }
        i += len;
    }
    return true;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::string current;
    for (const char ch : text) {
        const auto c = static_cast<unsigned char>(ch);
        if (is_token_byte(c)) {
            current.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : ch);
        } else if (!current.empty()) {
            out.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) out.push_back(std::move(current));
    return out;
}

std::set<std::string> token_set(std::string_view text) {
    auto tokens = tokenize(text);
    return {std::make_move_iterator(tokens.begin()), std::make_move_iterator(tokens.end())};
}

Corpus Corpus::from_token_sets(std::vector<std::set<std::string>> docs) {
    Corpus corpus;
    corpus.docs_.reserve(docs.size());
    int id = 0;
    for (auto& tokens : docs) {
        for (const auto& t : tokens) {
            if (t.empty()) throw std::invalid_argument("document token set contains an empty string");
            corpus.postings_[t].push_back(id);
        }
        corpus.docs_.push_back(Document{id, std::move(tokens)});
        ++id;
    }
    return corpus;
}

std::vector<int> Corpus::doc_set(const std::vector<std::string>& terms) const {
    if (terms.empty()) throw std::invalid_argument("doc_set requires at least one term");
    std::vector<int> result;
    bool first = true;
    for (const auto& term : terms) {
        const auto it = postings_.find(term);
        if (it == postings_.end()) return {};
        if (first) {
            result = it->second;
            first = false;
        } else {
            std::vector<int> next;
            next.reserve(std::min(result.size(), it->second.size()));
            std::set_intersection(result.begin(), result.end(), it->second.begin(),
                                  it->second.end(), std::back_inserter(next));
            result = std::move(next);
        }
        if (result.empty()) return {};
    }
    return result;
}

Corpus ingest_directory(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw std::runtime_error("not a directory: " + dir.string());

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt")
            files.push_back(entry.path());
    }
    if (files.empty()) throw std::runtime_error("empty corpus: no .txt files in " + dir.string());
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.filename() < b.filename(); });

    // Parallel read + tokenize into per-document slots; ids come from the
    // sorted file order, so the merge is deterministic.
    std::vector<std::set<std::string>> token_sets(files.size());
    std::vector<std::string> errors(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < files.size(); i = next.fetch_add(1)) {
            try {
                const std::string text = read_file(files[i]);
                if (!is_valid_utf8(text))
                    throw std::runtime_error("file is not valid UTF-8: " + files[i].string());
                token_sets[i] = token_set(text);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const unsigned n_threads =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                           static_cast<unsigned>(files.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t + 1 < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (const auto& err : errors)
        if (!err.empty()) throw std::runtime_error(err);

    return Corpus::from_token_sets(std::move(token_sets));
}

void CooccurrenceStats::validate() const {
    auto check = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string("inconsistent counts: ") + what);
    };
    check(n >= 0 && n_A >= 0 && n_B >= 0 && n_AB >= 0 && n_AX >= 0 && n_BX >= 0 && n_ABX >= 0,
          "negative count");
    check(n_A <= n && n_B <= n && n_AB <= n && n_AX <= n && n_BX <= n && n_ABX <= n,
          "count exceeds n");
    check(n_AB <= std::min(n_A, n_B), "n_AB > min(n_A, n_B)");
    check(n_AX <= n_A, "n_AX > n_A");
    check(n_BX <= n_B, "n_BX > n_B");
    check(n_ABX <= std::min({n_AB, n_AX, n_BX}), "n_ABX > min(n_AB, n_AX, n_BX)");
}

CooccurrenceStats counts(const Corpus& corpus, const std::string& A, const std::string& B,
                         const std::string& X) {
    if (corpus.size() == 0) throw std::invalid_argument("counts requires a non-empty corpus");
    CooccurrenceStats s;
    s.n = corpus.size();
    s.n_A = static_cast<std::int64_t>(corpus.doc_set({A}).size());
    s.n_B = static_cast<std::int64_t>(corpus.doc_set({B}).size());
    s.n_AB = static_cast<std::int64_t>(corpus.doc_set({A, B}).size());
    s.n_AX = static_cast<std::int64_t>(corpus.doc_set({A, X}).size());
    s.n_BX = static_cast<std::int64_t>(corpus.doc_set({B, X}).size());
    s.n_ABX = static_cast<std::int64_t>(corpus.doc_set({A, B, X}).size());
    return s;
}

RelativeFrequencies relative_frequencies(const CooccurrenceStats& stats) {
    if (stats.n_A <= 0) throw std::domain_error("undefined frequency: n_A = 0");
    if (stats.n_B <= 0) throw std::domain_error("undefined frequency: n_B = 0");
    if (stats.n_AB <= 0) throw std::domain_error("undefined frequency: n_AB = 0");
    return RelativeFrequencies{
        static_cast<double>(stats.n_AX) / static_cast<double>(stats.n_A),
        static_cast<double>(stats.n_BX) / static_cast<double>(stats.n_B),
        static_cast<double>(stats.n_ABX) / static_cast<double>(stats.n_AB),
    };
}

}  // namespace qweb
