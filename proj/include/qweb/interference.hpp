#pragma once

#include <optional>
#include <vector>

#include "qweb/corpus.hpp"
#include "qweb/quantum.hpp"

namespace qweb {

/// Index-set description of two concept states and a measured concept:
/// characteristic-function states over support_A / support_B, measured
/// against the diagonal projector onto support_X. Phase vectors are aligned
/// with the ascending order of their supports; empty vectors mean all-zero.
struct InterferenceSetup {
    std::vector<int> support_A;
    std::vector<int> support_B;
    std::vector<int> support_X;
    std::vector<double> phases_A;
    std::vector<double> phases_B;
    int n = 0;
};

QState chi_A(const InterferenceSetup& setup);
QState chi_B(const InterferenceSetup& setup);

/// Cross term Re<chi_A|M_X|chi_B>: sum of cos(beta_j - alpha_j) over the
/// documents common to A, B and X, scaled by 1/sqrt(n_A n_B).
double interference_term(const InterferenceSetup& setup);

/// Combined-concept probability for orthogonal (disjoint-support) states:
/// (mu_A + mu_B)/2 + interference term, clamped to [0, 1]. Overlapping
/// supports throw, directing the caller to mu_nonorthogonal.
double mu_combined(const InterferenceSetup& setup);

/// Count-level form of the combined probability with one uniform phase
/// difference `theta` across all n_ABX shared documents:
/// (n_AX/n_A + n_BX/n_B)/2 + n_ABX cos(theta)/sqrt(n_A n_B), clamped.
double mu_combined(const CooccurrenceStats& stats, double theta);

/// Exact combined probability for arbitrary (possibly non-orthogonal) states:
/// [ (mu_A+mu_B)/2 + Re<a|M|b> ] / [ 1 + Re<a|b> ]. Equals
/// born_probability(superpose(a, b), M). Throws on a vanishing denominator.
double mu_nonorthogonal(const QState& a, const QState& b, const Projector& M);

/// Range of combined probabilities reachable by phase choice alone, centered
/// on the uniform average with half-width n_ABX/sqrt(n_A n_B). `lo`/`hi` are
/// clamped to [0, 1]; the raw endpoints are kept alongside.
struct InterferenceInterval {
    double lo = 0.0;
    double hi = 0.0;
    double raw_lo = 0.0;
    double raw_hi = 0.0;
    bool clamped = false;

    bool contains(double p) const { return lo <= p && p <= hi; }
};

InterferenceInterval interference_interval(const CooccurrenceStats& stats);

/// Result of fitting a uniform phase difference to a target probability.
struct PhaseFit {
    bool feasible = false;
    std::optional<double> theta;     // uniform difference on the shared documents
    std::optional<double> achieved;  // mu_combined(stats, theta)
    InterferenceInterval interval;
};

/// Solve cos(theta) = (target - (mu_A+mu_B)/2) * sqrt(n_A n_B) / n_ABX.
/// Feasible exactly when the target lies in the interference interval;
/// otherwise reports the interval. Documents in the shared set get theta,
/// all other phase differences are pi/2.
PhaseFit fit_phases(const CooccurrenceStats& stats, double target);

/// Per-document phase vectors realizing a fitted theta over explicit supports:
/// alpha = 0 on support_A; beta = theta on the A-and-B-and-X documents, pi/2 on
/// the remaining A-and-B documents, 0 elsewhere on support_B.
struct PhaseAssignment {
    std::vector<double> phases_A;
    std::vector<double> phases_B;
};

PhaseAssignment fitted_phase_assignment(const std::vector<int>& support_A,
                                        const std::vector<int>& support_B,
                                        const std::vector<int>& support_X, double theta);

/// A canonical index-set layout realizing a count tuple, when one exists
/// (documents indexed [0, n) with A first, the AB overlap shared, B after).
std::optional<InterferenceSetup> synthesize_supports(const CooccurrenceStats& stats);

}  // namespace qweb
