#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "qweb/bond.hpp"
#include "qweb/context.hpp"
#include "qweb/corpus.hpp"
#include "qweb/fock.hpp"
#include "qweb/interference.hpp"
#include "qweb/quantum.hpp"

namespace qweb {

// Stats: {"n":int,"n_A":int,"n_B":int,"n_AB":int,"n_AX":int,"n_BX":int,"n_ABX":int},
// all fields required, consistency-checked on load.
nlohmann::json stats_to_json(const CooccurrenceStats& stats);
CooccurrenceStats stats_from_json(const nlohmann::json& j);
CooccurrenceStats stats_from_file(const std::filesystem::path& path);

// Inverted index: {term: [ids...]} with terms sorted.
nlohmann::json index_to_json(const Corpus& corpus);

// State: array of [re, im] pairs.
nlohmann::json state_to_json(const QState& psi);
QState state_from_json(const nlohmann::json& j);

// {"feasible":bool,"theta":float|null,"interval":[lo,hi],"achieved":float|null}
nlohmann::json phase_fit_to_json(const PhaseFit& fit);

// {"mode":"and"|"or","logical":f,"interference_interval":[..],"range":[..],"covers_target":bool}
nlohmann::json fock_report_to_json(const FockReport& report);

// {"target":f,"params":{...},"achieved":f,"residual":f,"path":"limit0|limit1|convex|bisection"}
nlohmann::json context_fit_to_json(const ContextFit& fit);

// [{"A":term,"B":term,"bond":float,"class":string}] sorted by (A, B);
// unknown-term rows carry "class":"undefined" and a null bond.
nlohmann::json bond_rows_to_json(const std::vector<BondRow>& rows);

}  // namespace qweb
