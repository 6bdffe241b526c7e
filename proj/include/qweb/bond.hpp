#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qweb/corpus.hpp"
#include "qweb/quantum.hpp"

namespace qweb {

enum class BondClass { attractive, repulsive, neutral };

const char* to_string(BondClass cls);

/// |bond - 1| band inside which a bond counts as neutral.
inline constexpr double kNeutralBondTolerance = 1e-9;

/// Conditional probability <psi|M_A M_B M_A|psi> / <psi|M_A|psi> — the
/// probability of B after a successful test of A under the projection
/// postulate. Throws "conditioning on null event" when p(A) vanishes.
double conditional_probability(const QState& psi, const Projector& M_A, const Projector& M_B);

struct BondReport {
    double p_B = 0.0;
    double p_B_given_A = 0.0;
    double bond = 0.0;  // p_B_given_A / p_B
    BondClass classification = BondClass::neutral;
};

/// Ratio p(B|A) / p(B): > 1 attractive, < 1 repulsive, 1 neutral (within
/// kNeutralBondTolerance). Throws when either probability vanishes.
BondReport meaning_bond(const QState& psi, const Projector& M_A, const Projector& M_B);

/// Uniform-state bond from counts alone: n * n_AB / (n_A * n_B).
double uniform_bond(const CooccurrenceStats& stats);

BondClass classify_bond(double bond);

struct ExpansionCoefficient {
    double value = 0.0;            // |<e_j| M_A psi / ||M_A psi|| >|
    bool bond_form_defined = true; // false when p_psi(W_j) vanishes
};

/// Modulus of the j-th coefficient of the collapsed state. When the basis
/// probability p_psi(W_j) is non-null this equals
/// sqrt(p_psi(W_j) * bond(W_j | A)); otherwise only the direct amplitude
/// path is defined and the flag is cleared.
ExpansionCoefficient expansion_coefficient(const QState& psi, const Projector& M_A, int j);

struct BondRow {
    std::string term_A;
    std::string term_B;
    std::optional<double> bond;      // empty when a term is unknown
    std::optional<BondClass> cls;
};

/// Pairwise uniform-state bonds for a term list, rows sorted by (A, B).
/// Unknown terms produce rows with no value.
std::vector<BondRow> bond_matrix(const Corpus& corpus, const std::vector<std::string>& terms);

}  // namespace qweb
