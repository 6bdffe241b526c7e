#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "qweb/corpus.hpp"

namespace qweb {

/// Full report for one (A, B, X) triple starting from counts: relative
/// frequencies, uniform average, interference interval, phase fit against the
/// target, the exact superposition value on a realized layout, both Fock
/// ranges and the context fit. Degenerate quantities are reported per field
/// as {"error": ...} instead of failing the whole report. The target defaults
/// to n_ABX / n_AB when not overridden.
nlohmann::json analyze_stats(const CooccurrenceStats& stats, std::optional<double> target_override);

/// Same report computed from a corpus and three terms; the exact
/// superposition route uses the documents' actual index sets.
nlohmann::json analyze_corpus(const Corpus& corpus, const std::string& A, const std::string& B,
                              const std::string& X, std::optional<double> target_override);

}  // namespace qweb
