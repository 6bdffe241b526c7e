#include "qweb/bond.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qweb {

const char* to_string(BondClass cls) {
    switch (cls) {
        case BondClass::attractive: return "attractive";
        case BondClass::repulsive: return "repulsive";
        case BondClass::neutral: return "neutral";
    }
    return "";
}

BondClass classify_bond(double bond) {
    if (std::abs(bond - 1.0) <= kNeutralBondTolerance) return BondClass::neutral;
    return bond > 1.0 ? BondClass::attractive : BondClass::repulsive;
}

double conditional_probability(const QState& psi, const Projector& M_A, const Projector& M_B) {
    const double p_A = born_probability(psi, M_A);
    if (p_A <= kNullEventTolerance) throw std::domain_error("conditioning on null event");
    const auto w = apply_projector(M_A, psi.amplitudes());  // unnormalized M_A |psi>
    const auto mw = apply_projector(M_B, w);
    Complex num{0.0, 0.0};
    for (std::size_t i = 0; i < w.size(); ++i) num += std::conj(w[i]) * mw[i];
    return std::clamp(num.real() / p_A, 0.0, 1.0);
}

BondReport meaning_bond(const QState& psi, const Projector& M_A, const Projector& M_B) {
    BondReport report;
    report.p_B = born_probability(psi, M_B);
    if (report.p_B <= kNullEventTolerance)
        throw std::domain_error("meaning bond undefined: p(B) vanishes");
    report.p_B_given_A = conditional_probability(psi, M_A, M_B);
    report.bond = report.p_B_given_A / report.p_B;
    report.classification = classify_bond(report.bond);
    return report;
}

double uniform_bond(const CooccurrenceStats& stats) {
    if (stats.n_A <= 0) throw std::domain_error("undefined bond: n_A = 0");
    if (stats.n_B <= 0) throw std::domain_error("undefined bond: n_B = 0");
    return static_cast<double>(stats.n) * static_cast<double>(stats.n_AB) /
           (static_cast<double>(stats.n_A) * static_cast<double>(stats.n_B));
}

ExpansionCoefficient expansion_coefficient(const QState& psi, const Projector& M_A, int j) {
    if (j < 0 || j >= psi.dim()) throw std::invalid_argument("basis index out of range");
    const auto collapsed = collapse(M_A, psi);
    ExpansionCoefficient coeff;
    coeff.value = std::abs(collapsed.state.amplitude(j));
    coeff.bond_form_defined = std::norm(psi.amplitude(j)) > kNullEventTolerance;
    return coeff;
}

std::vector<BondRow> bond_matrix(const Corpus& corpus, const std::vector<std::string>& terms) {
    if (terms.size() < 2) throw std::invalid_argument("bond matrix requires at least two terms");
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
            auto a = terms[i], b = terms[j];
            if (b < a) std::swap(a, b);
            pairs.emplace_back(std::move(a), std::move(b));
        }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    std::vector<BondRow> rows;
    rows.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        BondRow row;
        row.term_A = a;
        row.term_B = b;
        const auto n_A = corpus.doc_set({a}).size();
        const auto n_B = corpus.doc_set({b}).size();
        if (n_A > 0 && n_B > 0) {
            CooccurrenceStats stats;
            stats.n = corpus.size();
            stats.n_A = static_cast<std::int64_t>(n_A);
            stats.n_B = static_cast<std::int64_t>(n_B);
            stats.n_AB = static_cast<std::int64_t>(corpus.doc_set({a, b}).size());
            row.bond = uniform_bond(stats);
            row.cls = classify_bond(*row.bond);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace qweb
