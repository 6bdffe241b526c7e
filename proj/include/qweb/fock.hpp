#pragma once

#include "qweb/corpus.hpp"
#include "qweb/interference.hpp"

namespace qweb {

/// Two-sector mixing parameters: m^2 weights the logical (two-entity) sector,
/// 1 - m^2 the interference (one-entity) sector. The phases nu and lambda
/// belong to the state definition but do not enter the probability law; they
/// are carried for completeness.
struct FockParams {
    double m = 0.0;
    double nu = 0.0;
    double lambda = 0.0;
};

enum class LogicalMode { conjunction, disjunction };

const char* to_string(LogicalMode mode);

/// mu_A * mu_B
double mu_and(double mu_A, double mu_B);

/// mu_A + mu_B - mu_A * mu_B
double mu_or(double mu_A, double mu_B);

/// m^2 * logical + (1 - m^2) * [ (mu_A + mu_B)/2 + interference ].
/// Throws when the bracketed first-sector value falls outside [0, 1].
double fock_probability(const FockParams& params, LogicalMode mode, double mu_A, double mu_B,
                        double interference);

struct ProbabilityInterval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double p) const { return lo <= p && p <= hi; }
};

/// Values reachable by varying both the phases and the mixing weight:
/// the convex hull of the pure logical value and the interference interval,
/// intersected with [0, 1].
ProbabilityInterval fock_range(const CooccurrenceStats& stats, LogicalMode mode);

struct FockReport {
    LogicalMode mode = LogicalMode::conjunction;
    double logical = 0.0;
    InterferenceInterval interference;
    ProbabilityInterval range;
    double target = 0.0;
    bool covers_target = false;
};

FockReport fock_report(const CooccurrenceStats& stats, LogicalMode mode, double target);

}  // namespace qweb
