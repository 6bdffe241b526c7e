#include "qweb/serialize.hpp"

#include <fstream>
#include <stdexcept>

namespace qweb {

using nlohmann::json;

json stats_to_json(const CooccurrenceStats& stats) {
    return json{{"n", stats.n},     {"n_A", stats.n_A},   {"n_B", stats.n_B},
                {"n_AB", stats.n_AB}, {"n_AX", stats.n_AX}, {"n_BX", stats.n_BX},
                {"n_ABX", stats.n_ABX}};
}

CooccurrenceStats stats_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("stats JSON must be an object");
    CooccurrenceStats stats;
    auto field = [&](const char* name) -> std::int64_t {
        if (!j.contains(name))
            throw std::invalid_argument(std::string("stats JSON missing field: ") + name);
        const auto& v = j.at(name);
        if (!v.is_number_integer())
            throw std::invalid_argument(std::string("stats field must be an integer: ") + name);
        return v.get<std::int64_t>();
    };
    stats.n = field("n");
    stats.n_A = field("n_A");
    stats.n_B = field("n_B");
    stats.n_AB = field("n_AB");
    stats.n_AX = field("n_AX");
    stats.n_BX = field("n_BX");
    stats.n_ABX = field("n_ABX");
    stats.validate();
    return stats;
}

CooccurrenceStats stats_from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read stats file: " + path.string());
    json j;
    in >> j;
    return stats_from_json(j);
}

json index_to_json(const Corpus& corpus) {
    json j = json::object();
    for (const auto& [term, ids] : corpus.postings()) j[term] = ids;
    return j;
}

json state_to_json(const QState& psi) {
    json j = json::array();
    for (const auto& a : psi.amplitudes()) j.push_back(json::array({a.real(), a.imag()}));
    return j;
}

QState state_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("state JSON must be a non-empty array");
    std::vector<Complex> amp;
    amp.reserve(j.size());
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2)
            throw std::invalid_argument("state entries must be [re, im] pairs");
        amp.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return QState(std::move(amp));
}

json phase_fit_to_json(const PhaseFit& fit) {
    json j;
    j["feasible"] = fit.feasible;
    j["theta"] = fit.theta ? json(*fit.theta) : json(nullptr);
    j["interval"] = json::array({fit.interval.lo, fit.interval.hi});
    j["achieved"] = fit.achieved ? json(*fit.achieved) : json(nullptr);
    return j;
}

json fock_report_to_json(const FockReport& report) {
    json j;
    j["mode"] = to_string(report.mode);
    j["logical"] = report.logical;
    j["interference_interval"] = json::array({report.interference.lo, report.interference.hi});
    j["range"] = json::array({report.range.lo, report.range.hi});
    j["covers_target"] = report.covers_target;
    return j;
}

json context_fit_to_json(const ContextFit& fit) {
    json j;
    j["target"] = fit.target;
    j["params"] = json{{"p_A", fit.params.p_A},         {"p_B", fit.params.p_B},
                       {"c", fit.params.c},             {"c_prime", fit.params.c_prime},
                       {"phi", fit.params.phi},         {"phi_prime", fit.params.phi_prime}};
    j["achieved"] = fit.achieved;
    j["residual"] = fit.residual;
    j["path"] = to_string(fit.path);
    return j;
}

json bond_rows_to_json(const std::vector<BondRow>& rows) {
    json j = json::array();
    for (const auto& row : rows) {
        json entry;
        entry["A"] = row.term_A;
        entry["B"] = row.term_B;
        entry["bond"] = row.bond ? json(*row.bond) : json(nullptr);
        entry["class"] = row.cls ? to_string(*row.cls) : "undefined";
        j.push_back(std::move(entry));
    }
    return j;
}

}  // namespace qweb
