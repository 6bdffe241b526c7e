#pragma once

#include "qweb/corpus.hpp"
#include "qweb/quantum.hpp"

namespace qweb {

/// Parametrized "interference plus context" coordinates: sector weights
/// p_A, p_B in (0, 1], overlap moduli c, c' in [0, 1] and phases phi, phi'
/// in [0, 2pi).
struct ContextParams {
    double p_A = 1.0;
    double p_B = 1.0;
    double c = 1.0;
    double c_prime = 1.0;
    double phi = 1.5707963267948966;        // pi/2: no interference
    double phi_prime = 1.5707963267948966;  // pi/2
};

/// Combined probability under a context projector, in closed form:
///
///   [ p_A mu_A + p_B mu_B + 2 sqrt(p_A p_B) sqrt(mu_A mu_B) c cos(phi) ]
///   -----------------------------------------------------------------------
///   [ p_A + p_B + 2 sqrt(p_A p_B) ( sqrt(mu_A mu_B)         c  cos(phi)
///                                 + sqrt(mu~_A mu~_B)       c' cos(phi') ) ]
///
/// with mu~ = 1 - mu. The raw ratio can formally leave [0, 1];
/// mu_with_context clamps, mu_with_context_raw does not. A denominator
/// at or below 1e-12 throws "degenerate context".
double mu_with_context(const ContextParams& params, double mu_A, double mu_B);
double mu_with_context_raw(const ContextParams& params, double mu_A, double mu_B);

/// Count substitution mu_A = n_AX/n_A, mu_B = n_BX/n_B (complements from
/// n_A - n_AX and n_B - n_BX). Identical to mu_with_context afterwards.
double mu_with_context_counts(const ContextParams& params, const CooccurrenceStats& stats);

/// (p_A mu_A + p_B mu_B) / (p_A + p_B); the phi = phi' = pi/2 special case.
double convex_combination(double p_A, double p_B, double mu_A, double mu_B);

enum class SolvePath { limit0, limit1, convex, bisection };

const char* to_string(SolvePath path);

struct ContextFit {
    ContextParams params;
    double target = 0.0;
    double achieved = 0.0;
    double residual = 0.0;
    SolvePath path = SolvePath::convex;
};

/// Find parameters reproducing any target in [0, 1]:
///  - target 0: c = 1, phi = pi, p_A/p_B = mu_B/mu_A (numerator identically 0);
///  - target 1: c' = 1, phi' = pi, p_A/p_B = mu~_B/mu~_A (numerator = denominator);
///  - target between mu_A and mu_B: phi = phi' = pi/2 and the convex weight;
///  - otherwise: c = c' = 1, the matching limit ratio, and a monotone
///    bisection on cos(phi) (low targets, cos(phi') = 1) or cos(phi')
///    (high targets).
/// Throws on boundary-degenerate inputs that cannot reach the target.
ContextFit solve_context(double mu_A, double mu_B, double target);

/// Exact combined probability with a pre-measurement context projector N and
/// measurement projector M:
///   [ <a|NMN|a> + <b|NMN|b> + 2 Re<a|NMN|b> ] / || N(|a> + |b>) ||^2 .
/// Equals born_probability(collapse(N, superpose(a, b)).state, M).
/// Throws when N annihilates the superposition.
double general_context_probability(const QState& a, const QState& b, const Projector& N,
                                   const Projector& M);

/// Orthogonal-decomposition coordinates extracted from a concrete instance
/// (requires commuting N, M): feeding them back through the closed form
/// reproduces general_context_probability.
struct ContextCoordinates {
    ContextParams params;
    double mu_A = 0.0;  // post-context probability of M for |a>
    double mu_B = 0.0;
};

ContextCoordinates extract_context_coordinates(const QState& a, const QState& b,
                                               const Projector& N, const Projector& M);

}  // namespace qweb
