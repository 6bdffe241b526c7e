#include "qweb/interference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qweb {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

void validate_setup(const InterferenceSetup& s) {
    if (s.n < 1) throw std::invalid_argument("setup requires n >= 1");
    auto check_support = [&](const std::vector<int>& J, const char* name) {
        if (J.empty()) throw std::invalid_argument(std::string(name) + " must be non-empty");
        if (!std::is_sorted(J.begin(), J.end()))
            throw std::invalid_argument(std::string(name) + " must be sorted");
        if (std::adjacent_find(J.begin(), J.end()) != J.end())
            throw std::invalid_argument(std::string(name) + " must be duplicate-free");
        if (J.front() < 0 || J.back() >= s.n)
            throw std::invalid_argument(std::string(name) + " index out of range");
    };
    check_support(s.support_A, "support_A");
    check_support(s.support_B, "support_B");
    if (!std::is_sorted(s.support_X.begin(), s.support_X.end()))
        throw std::invalid_argument("support_X must be sorted");
    if (!s.support_X.empty() && (s.support_X.front() < 0 || s.support_X.back() >= s.n))
        throw std::invalid_argument("support_X index out of range");
    if (!s.phases_A.empty() && s.phases_A.size() != s.support_A.size())
        throw std::invalid_argument("phases_A must be empty or aligned with support_A");
    if (!s.phases_B.empty() && s.phases_B.size() != s.support_B.size())
        throw std::invalid_argument("phases_B must be empty or aligned with support_B");
}

std::size_t count_common(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t count = 0, i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else { ++count; ++i; ++j; }
    }
    return count;
}

void check_stats_denominators(const CooccurrenceStats& stats) {
    stats.validate();
    if (stats.n_A <= 0) throw std::domain_error("undefined frequency: n_A = 0");
    if (stats.n_B <= 0) throw std::domain_error("undefined frequency: n_B = 0");
}

}  // namespace

QState chi_A(const InterferenceSetup& setup) {
    validate_setup(setup);
    return make_characteristic_state(setup.support_A, setup.phases_A, setup.n);
}

QState chi_B(const InterferenceSetup& setup) {
    validate_setup(setup);
    return make_characteristic_state(setup.support_B, setup.phases_B, setup.n);
}

double interference_term(const InterferenceSetup& setup) {
    validate_setup(setup);
    const auto& A = setup.support_A;
    const auto& B = setup.support_B;
    double sum = 0.0;
    std::size_t i = 0, j = 0;
    while (i < A.size() && j < B.size()) {
        if (A[i] < B[j]) ++i;
        else if (B[j] < A[i]) ++j;
        else {
            if (std::binary_search(setup.support_X.begin(), setup.support_X.end(), A[i])) {
                const double alpha = setup.phases_A.empty() ? 0.0 : setup.phases_A[i];
                const double beta = setup.phases_B.empty() ? 0.0 : setup.phases_B[j];
                sum += std::cos(beta - alpha);
            }
            ++i;
            ++j;
        }
    }
    return sum / std::sqrt(static_cast<double>(A.size()) * static_cast<double>(B.size()));
}

double mu_combined(const InterferenceSetup& setup) {
    validate_setup(setup);
    if (count_common(setup.support_A, setup.support_B) != 0)
        throw std::domain_error(
            "overlapping supports: the orthogonal closed form does not apply, "
            "use mu_nonorthogonal");
    const double mu_A = static_cast<double>(count_common(setup.support_A, setup.support_X)) /
                        static_cast<double>(setup.support_A.size());
    const double mu_B = static_cast<double>(count_common(setup.support_B, setup.support_X)) /
                        static_cast<double>(setup.support_B.size());
    return clamp01(0.5 * (mu_A + mu_B) + interference_term(setup));
}

double mu_combined(const CooccurrenceStats& stats, double theta) {
    check_stats_denominators(stats);
    const double mu_A = static_cast<double>(stats.n_AX) / static_cast<double>(stats.n_A);
    const double mu_B = static_cast<double>(stats.n_BX) / static_cast<double>(stats.n_B);
    const double scale =
        std::sqrt(static_cast<double>(stats.n_A) * static_cast<double>(stats.n_B));
    return clamp01(0.5 * (mu_A + mu_B) +
                   static_cast<double>(stats.n_ABX) * std::cos(theta) / scale);
}

double mu_nonorthogonal(const QState& a, const QState& b, const Projector& M) {
    const double den = 1.0 + inner_product(a, b).real();
    if (std::abs(den) <= 1e-12)
        throw std::domain_error("vanishing denominator: <a|b> = -1");
    const double num = 0.5 * (born_probability(a, M) + born_probability(b, M)) +
                       matrix_element(a, M, b).real();
    return clamp01(num / den);
}

InterferenceInterval interference_interval(const CooccurrenceStats& stats) {
    check_stats_denominators(stats);
    const double mu_A = static_cast<double>(stats.n_AX) / static_cast<double>(stats.n_A);
    const double mu_B = static_cast<double>(stats.n_BX) / static_cast<double>(stats.n_B);
    const double avg = 0.5 * (mu_A + mu_B);
    const double half_width =
        static_cast<double>(stats.n_ABX) /
        std::sqrt(static_cast<double>(stats.n_A) * static_cast<double>(stats.n_B));
    InterferenceInterval interval;
    interval.raw_lo = avg - half_width;
    interval.raw_hi = avg + half_width;
    interval.lo = clamp01(interval.raw_lo);
    interval.hi = clamp01(interval.raw_hi);
    interval.clamped = (interval.lo != interval.raw_lo) || (interval.hi != interval.raw_hi);
    return interval;
}

PhaseFit fit_phases(const CooccurrenceStats& stats, double target) {
    if (!(target >= 0.0 && target <= 1.0))
        throw std::invalid_argument("target must lie in [0, 1]");
    PhaseFit fit;
    fit.interval = interference_interval(stats);

    const double mu_A = static_cast<double>(stats.n_AX) / static_cast<double>(stats.n_A);
    const double mu_B = static_cast<double>(stats.n_BX) / static_cast<double>(stats.n_B);
    const double avg = 0.5 * (mu_A + mu_B);
    const double half_width =
        static_cast<double>(stats.n_ABX) /
        std::sqrt(static_cast<double>(stats.n_A) * static_cast<double>(stats.n_B));

    if (half_width == 0.0) {
        if (std::abs(target - avg) <= 1e-12) {
            fit.feasible = true;
            fit.theta = kHalfPi;
            fit.achieved = mu_combined(stats, kHalfPi);
        }
        return fit;
    }
    const double cos_theta = (target - avg) / half_width;
    if (std::abs(cos_theta) > 1.0 + 1e-12) return fit;  // infeasible, interval reported
    fit.feasible = true;
    fit.theta = std::acos(std::clamp(cos_theta, -1.0, 1.0));
    fit.achieved = mu_combined(stats, *fit.theta);
    return fit;
}

PhaseAssignment fitted_phase_assignment(const std::vector<int>& support_A,
                                        const std::vector<int>& support_B,
                                        const std::vector<int>& support_X, double theta) {
    PhaseAssignment assign;
    assign.phases_A.assign(support_A.size(), 0.0);
    assign.phases_B.assign(support_B.size(), 0.0);
    for (std::size_t j = 0; j < support_B.size(); ++j) {
        const int doc = support_B[j];
        if (!std::binary_search(support_A.begin(), support_A.end(), doc)) continue;
        const bool in_X = std::binary_search(support_X.begin(), support_X.end(), doc);
        assign.phases_B[j] = in_X ? theta : kHalfPi;
    }
    return assign;
}

std::optional<InterferenceSetup> synthesize_supports(const CooccurrenceStats& stats) {
    stats.validate();
    const auto only_A = stats.n_A - stats.n_AB;
    const auto only_B = stats.n_B - stats.n_AB;
    if (stats.n_A <= 0 || stats.n_B <= 0) return std::nullopt;
    if (stats.n_A + only_B > stats.n) return std::nullopt;
    if (stats.n_AX - stats.n_ABX > only_A) return std::nullopt;
    if (stats.n_BX - stats.n_ABX > only_B) return std::nullopt;

    // Layout: [0, only_A) holds A-only documents, [only_A, n_A) the AB
    // overlap, [n_A, n_A + only_B) B-only documents.
    InterferenceSetup s;
    s.n = static_cast<int>(stats.n);
    for (std::int64_t i = 0; i < stats.n_A; ++i) s.support_A.push_back(static_cast<int>(i));
    for (std::int64_t i = only_A; i < stats.n_A + only_B; ++i)
        s.support_B.push_back(static_cast<int>(i));
    for (std::int64_t i = 0; i < stats.n_AX - stats.n_ABX; ++i)
        s.support_X.push_back(static_cast<int>(i));
    for (std::int64_t i = 0; i < stats.n_ABX; ++i)
        s.support_X.push_back(static_cast<int>(only_A + i));
    for (std::int64_t i = 0; i < stats.n_BX - stats.n_ABX; ++i)
        s.support_X.push_back(static_cast<int>(stats.n_A + i));
    std::sort(s.support_X.begin(), s.support_X.end());
    return s;
}

}  // namespace qweb
