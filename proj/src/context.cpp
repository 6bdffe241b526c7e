#include "qweb/context.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace qweb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;

void require_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

void validate_params(const ContextParams& params) {
    if (!(params.p_A > 0.0 && params.p_A <= 1.0) || !(params.p_B > 0.0 && params.p_B <= 1.0))
        throw std::invalid_argument("p_A and p_B must lie in (0, 1]");
    if (!(params.c >= 0.0 && params.c <= 1.0) ||
        !(params.c_prime >= 0.0 && params.c_prime <= 1.0))
        throw std::invalid_argument("c and c_prime must lie in [0, 1]");
    if (!std::isfinite(params.phi) || !std::isfinite(params.phi_prime))
        throw std::invalid_argument("phases must be finite");
}

struct RatioTerms {
    double num = 0.0;
    double den = 0.0;
};

RatioTerms context_terms(const ContextParams& params, double mu_A, double mu_B) {
    validate_params(params);
    require_probability(mu_A, "mu_A");
    require_probability(mu_B, "mu_B");
    const double sp = std::sqrt(params.p_A * params.p_B);
    const double g = std::sqrt(mu_A * mu_B);
    const double g_bar = std::sqrt((1.0 - mu_A) * (1.0 - mu_B));
    const double cross = g * params.c * std::cos(params.phi);
    const double cross_bar = g_bar * params.c_prime * std::cos(params.phi_prime);
    RatioTerms t;
    t.num = params.p_A * mu_A + params.p_B * mu_B + 2.0 * sp * cross;
    t.den = params.p_A + params.p_B + 2.0 * sp * (cross + cross_bar);
    return t;
}

// p_A / p_B = ratio, normalized so that max(p_A, p_B) = 1.
void set_weights(ContextParams& params, double ratio) {
    if (!(ratio > 0.0) || !std::isfinite(ratio))
        throw std::domain_error("weight ratio must be positive and finite");
    if (ratio >= 1.0) {
        params.p_A = 1.0;
        params.p_B = 1.0 / ratio;
    } else {
        params.p_A = ratio;
        params.p_B = 1.0;
    }
}

double wrap_phase(double phi) {
    if (phi < 0.0) phi += 2.0 * kPi;
    if (phi >= 2.0 * kPi) phi -= 2.0 * kPi;
    return phi;
}

// Monotone bisection of f over [lo, hi] for f(x) = target. `increasing`
// states the direction of f; the bracket is assumed valid.
double bisect(const std::function<double(double)>& f, double lo, double hi, double target,
              bool increasing) {
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::abs(fm - target) <= 1e-13 || hi - lo <= 1e-17) return mid;
        const bool go_right = increasing ? (fm < target) : (fm > target);
        if (go_right) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

[[noreturn]] void boundary_error(double mu_A, double mu_B, double target) {
    throw std::domain_error("boundary degeneracy: target " + std::to_string(target) +
                            " is unreachable with mu_A = " + std::to_string(mu_A) +
                            ", mu_B = " + std::to_string(mu_B));
}

}  // namespace

double mu_with_context_raw(const ContextParams& params, double mu_A, double mu_B) {
    const auto t = context_terms(params, mu_A, mu_B);
    if (t.den <= 1e-12) throw std::domain_error("degenerate context: vanishing denominator");
    return t.num / t.den;
}

double mu_with_context(const ContextParams& params, double mu_A, double mu_B) {
    return std::clamp(mu_with_context_raw(params, mu_A, mu_B), 0.0, 1.0);
}

double mu_with_context_counts(const ContextParams& params, const CooccurrenceStats& stats) {
    stats.validate();
    if (stats.n_A <= 0) throw std::domain_error("undefined frequency: n_A = 0");
    if (stats.n_B <= 0) throw std::domain_error("undefined frequency: n_B = 0");
    const double mu_A = static_cast<double>(stats.n_AX) / static_cast<double>(stats.n_A);
    const double mu_B = static_cast<double>(stats.n_BX) / static_cast<double>(stats.n_B);
    return mu_with_context(params, mu_A, mu_B);
}

double convex_combination(double p_A, double p_B, double mu_A, double mu_B) {
    require_probability(mu_A, "mu_A");
    require_probability(mu_B, "mu_B");
    if (p_A < 0.0 || p_B < 0.0 || p_A + p_B <= 0.0)
        throw std::invalid_argument("weights must be non-negative with a positive sum");
    return (p_A * mu_A + p_B * mu_B) / (p_A + p_B);
}

const char* to_string(SolvePath path) {
    switch (path) {
        case SolvePath::limit0: return "limit0";
        case SolvePath::limit1: return "limit1";
        case SolvePath::convex: return "convex";
        case SolvePath::bisection: return "bisection";
    }
    return "";
}

ContextFit solve_context(double mu_A, double mu_B, double target) {
    require_probability(mu_A, "mu_A");
    require_probability(mu_B, "mu_B");
    require_probability(target, "target");

    auto finish = [&](ContextParams params, SolvePath path) {
        ContextFit fit;
        fit.params = params;
        fit.target = target;
        fit.achieved = mu_with_context(params, mu_A, mu_B);
        fit.residual = std::abs(fit.achieved - target);
        fit.path = path;
        return fit;
    };

    const double lo_mu = std::min(mu_A, mu_B);
    const double hi_mu = std::max(mu_A, mu_B);

    if (target == 0.0) {
        if (mu_A == 0.0 && mu_B == 0.0) return finish(ContextParams{}, SolvePath::limit0);
        if (mu_A > 0.0 && mu_B > 0.0) {
            // numerator (sqrt(p_A mu_A) - sqrt(p_B mu_B))^2 vanishes identically
            ContextParams params;
            set_weights(params, mu_B / mu_A);
            params.c = 1.0;
            params.phi = kPi;
            params.c_prime = 1.0;
            params.phi_prime = kHalfPi;
            return finish(params, SolvePath::limit0);
        }
        boundary_error(mu_A, mu_B, target);
    }
    if (target == 1.0) {
        if (mu_A == 1.0 && mu_B == 1.0) return finish(ContextParams{}, SolvePath::limit1);
        if (mu_A < 1.0 && mu_B < 1.0) {
            // denominator minus numerator vanishes identically
            ContextParams params;
            set_weights(params, (1.0 - mu_B) / (1.0 - mu_A));
            params.c = 1.0;
            params.phi = kHalfPi;
            params.c_prime = 1.0;
            params.phi_prime = kPi;
            return finish(params, SolvePath::limit1);
        }
        boundary_error(mu_A, mu_B, target);
    }

    if (mu_A == mu_B) {
        if (target == mu_A) return finish(ContextParams{}, SolvePath::convex);
        ContextParams params;
        params.c = 1.0;
        params.c_prime = 1.0;
        if (target < mu_A) {
            if (mu_A == 0.0 || mu_A == 1.0) boundary_error(mu_A, mu_B, target);
            params.phi_prime = 0.0;  // cos(phi') = 1
            auto f = [&](double x) {
                ContextParams p = params;
                p.phi = std::acos(x);
                return mu_with_context_raw(p, mu_A, mu_B);
            };
            params.phi = std::acos(bisect(f, -1.0, 1.0, target, /*increasing=*/true));
            return finish(params, SolvePath::bisection);
        }
        if (mu_A == 0.0 || mu_A == 1.0) boundary_error(mu_A, mu_B, target);
        params.phi = kHalfPi;  // keep the A-B cross term out of the numerator
        auto f = [&](double x_prime) {
            ContextParams p = params;
            p.phi_prime = std::acos(x_prime);
            return mu_with_context_raw(p, mu_A, mu_B);
        };
        params.phi_prime = std::acos(bisect(f, -1.0, 1.0, target, /*increasing=*/false));
        return finish(params, SolvePath::bisection);
    }

    if (lo_mu < target && target < hi_mu) {
        ContextParams params;
        set_weights(params, (target - mu_B) / (mu_A - target));
        params.phi = kHalfPi;
        params.phi_prime = kHalfPi;
        return finish(params, SolvePath::convex);
    }

    if (target <= lo_mu) {
        if (mu_A == 0.0 || mu_B == 0.0) boundary_error(mu_A, mu_B, target);
        // limit-0 ratio, cos(phi') pinned at 1: the value climbs monotonically
        // from 0 at cos(phi) = -1 and passes min(mu_A, mu_B) before cos(phi) = 1.
        ContextParams params;
        set_weights(params, mu_B / mu_A);
        params.c = 1.0;
        params.c_prime = 1.0;
        params.phi_prime = 0.0;
        auto f = [&](double x) {
            ContextParams p = params;
            p.phi = std::acos(x);
            return mu_with_context_raw(p, mu_A, mu_B);
        };
        params.phi = std::acos(bisect(f, -1.0, 1.0, target, /*increasing=*/true));
        return finish(params, SolvePath::bisection);
    }

    // target >= hi_mu
    if (mu_A == 1.0 || mu_B == 1.0) boundary_error(mu_A, mu_B, target);
    // limit-1 ratio, cos(phi) pinned at -1: the value descends monotonically
    // from 1 at cos(phi') = -1 and passes max(mu_A, mu_B) before cos(phi') = 1.
    ContextParams params;
    set_weights(params, (1.0 - mu_B) / (1.0 - mu_A));
    params.c = 1.0;
    params.c_prime = 1.0;
    params.phi = kPi;
    auto f = [&](double x_prime) {
        ContextParams p = params;
        p.phi_prime = std::acos(x_prime);
        return mu_with_context_raw(p, mu_A, mu_B);
    };
    params.phi_prime = std::acos(bisect(f, -1.0, 1.0, target, /*increasing=*/false));
    return finish(params, SolvePath::bisection);
}

double general_context_probability(const QState& a, const QState& b, const Projector& N,
                                   const Projector& M) {
    if (a.dim() != b.dim() || projector_dim(N) != a.dim() || projector_dim(M) != a.dim())
        throw std::invalid_argument("dimension mismatch");
    const auto u = apply_projector(N, a.amplitudes());
    const auto v = apply_projector(N, b.amplitudes());
    std::vector<Complex> w(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] + v[i];
    double den = 0.0;
    for (const auto& x : w) den += std::norm(x);
    if (std::sqrt(den) < 1e-12)
        throw std::domain_error("state annihilated by context");
    const auto mw = apply_projector(M, w);
    Complex num{0.0, 0.0};
    for (std::size_t i = 0; i < w.size(); ++i) num += std::conj(w[i]) * mw[i];
    return std::clamp(num.real() / den, 0.0, 1.0);
}

ContextCoordinates extract_context_coordinates(const QState& a, const QState& b,
                                               const Projector& N, const Projector& M) {
    if (a.dim() != b.dim() || projector_dim(N) != a.dim() || projector_dim(M) != a.dim())
        throw std::invalid_argument("dimension mismatch");
    const auto u = apply_projector(N, a.amplitudes());
    const auto v = apply_projector(N, b.amplitudes());
    const auto u1 = apply_projector(M, u);  // P1 = M N components (N, M commuting)
    const auto v1 = apply_projector(M, v);
    std::vector<Complex> u2(u.size()), v2(v.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        u2[i] = u[i] - u1[i];
        v2[i] = v[i] - v1[i];
    }
    auto norm_of = [](const std::vector<Complex>& x) {
        double s = 0.0;
        for (const auto& c : x) s += std::norm(c);
        return std::sqrt(s);
    };
    auto overlap = [](const std::vector<Complex>& x, const std::vector<Complex>& y) {
        Complex s{0.0, 0.0};
        for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
        return s;
    };

    const double a1 = norm_of(u1), b1 = norm_of(v1);
    const double a2 = norm_of(u2), b2 = norm_of(v2);
    const double p_A = a1 * a1 + a2 * a2;
    const double p_B = b1 * b1 + b2 * b2;
    if (p_A <= 1e-12 || p_B <= 1e-12)
        throw std::domain_error("context annihilates one of the states");

    ContextCoordinates coords;
    coords.params.p_A = std::min(p_A, 1.0);
    coords.params.p_B = std::min(p_B, 1.0);
    coords.mu_A = std::clamp(a1 * a1 / p_A, 0.0, 1.0);
    coords.mu_B = std::clamp(b1 * b1 / p_B, 0.0, 1.0);
    if (a1 * b1 > 1e-12) {
        const Complex g = overlap(u1, v1) / (a1 * b1);
        coords.params.c = std::min(std::abs(g), 1.0);
        coords.params.phi = wrap_phase(std::arg(g));
    } else {
        coords.params.c = 0.0;
        coords.params.phi = kHalfPi;
    }
    if (a2 * b2 > 1e-12) {
        const Complex g = overlap(u2, v2) / (a2 * b2);
        coords.params.c_prime = std::min(std::abs(g), 1.0);
        coords.params.phi_prime = wrap_phase(std::arg(g));
    } else {
        coords.params.c_prime = 0.0;
        coords.params.phi_prime = kHalfPi;
    }
    return coords;
}

}  // namespace qweb
