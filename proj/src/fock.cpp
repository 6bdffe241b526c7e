#include "qweb/fock.hpp"

#include <algorithm>
#include <stdexcept>

namespace qweb {

namespace {

void require_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

const char* to_string(LogicalMode mode) {
    return mode == LogicalMode::conjunction ? "and" : "or";
}

double mu_and(double mu_A, double mu_B) {
    require_probability(mu_A, "mu_A");
    require_probability(mu_B, "mu_B");
    return mu_A * mu_B;
}

double mu_or(double mu_A, double mu_B) {
    require_probability(mu_A, "mu_A");
    require_probability(mu_B, "mu_B");
    return mu_A + mu_B - mu_A * mu_B;
}

double fock_probability(const FockParams& params, LogicalMode mode, double mu_A, double mu_B,
                        double interference) {
    if (!(params.m >= 0.0 && params.m <= 1.0))
        throw std::invalid_argument("mixing weight m must lie in [0, 1]");
    const double logical =
        mode == LogicalMode::conjunction ? mu_and(mu_A, mu_B) : mu_or(mu_A, mu_B);
    const double bracket = 0.5 * (mu_A + mu_B) + interference;
    if (bracket < -1e-12 || bracket > 1.0 + 1e-12)
        throw std::domain_error("invalid first-sector probability");
    const double first_sector = std::clamp(bracket, 0.0, 1.0);
    const double m2 = params.m * params.m;
    return m2 * logical + (1.0 - m2) * first_sector;
}

ProbabilityInterval fock_range(const CooccurrenceStats& stats, LogicalMode mode) {
    const auto interval = interference_interval(stats);
    const double mu_A = static_cast<double>(stats.n_AX) / static_cast<double>(stats.n_A);
    const double mu_B = static_cast<double>(stats.n_BX) / static_cast<double>(stats.n_B);
    const double logical =
        mode == LogicalMode::conjunction ? mu_and(mu_A, mu_B) : mu_or(mu_A, mu_B);
    ProbabilityInterval range;
    range.lo = std::clamp(std::min(logical, interval.lo), 0.0, 1.0);
    range.hi = std::clamp(std::max(logical, interval.hi), 0.0, 1.0);
    return range;
}

FockReport fock_report(const CooccurrenceStats& stats, LogicalMode mode, double target) {
    require_probability(target, "target");
    FockReport report;
    report.mode = mode;
    report.interference = interference_interval(stats);
    const double mu_A = static_cast<double>(stats.n_AX) / static_cast<double>(stats.n_A);
    const double mu_B = static_cast<double>(stats.n_BX) / static_cast<double>(stats.n_B);
    report.logical = mode == LogicalMode::conjunction ? mu_and(mu_A, mu_B) : mu_or(mu_A, mu_B);
    report.range = fock_range(stats, mode);
    report.target = target;
    report.covers_target = report.range.contains(target);
    return report;
}

}  // namespace qweb
