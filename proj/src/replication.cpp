#include "qweb/replication.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "qweb/bond.hpp"
#include "qweb/context.hpp"
#include "qweb/corpus.hpp"
#include "qweb/fock.hpp"
#include "qweb/interference.hpp"
#include "qweb/quantum.hpp"

namespace qweb {

namespace {

constexpr double kPi = std::numbers::pi;

// Worked X and Y word-count cases over a 140-document collection.
const CooccurrenceStats kStatsX{140, 100, 50, 10, 80, 15, 5};
const CooccurrenceStats kStatsY{140, 100, 50, 10, 10, 10, 5};

// 3 x 7 detection-screen grid, 54 impacts. The central column (cells 3, 10,
// 17, row-major zero-based) holds 7 + 8 + 3 = 18 impacts, one third of all.
const ImpactRecord kScreenCounts{{2, 2, 1, 7, 3, 3, 3, 2, 2, 2, 8, 3, 3, 2, 1, 2, 2, 3, 2, 1, 0}};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

class Checker {
public:
    void expect_near(const std::string& what, double got, double want, double tol) {
        std::ostringstream line;
        line << what << "=" << fmt(got);
        if (std::abs(got - want) > tol) {
            ok_ = false;
            line << " (expected " << fmt(want) << " within " << fmt(tol) << ")";
        }
        push(line.str());
    }

    void expect_true(const std::string& what, bool got) {
        if (!got) ok_ = false;
        push(what + (got ? "" : " FAILED"));
    }

    void expect_max(const std::string& what, double worst, double tol) {
        std::ostringstream line;
        line << what << " max_err=" << fmt(worst);
        if (!(worst <= tol)) {
            ok_ = false;
            line << " (allowed " << fmt(tol) << ")";
        }
        push(line.str());
    }

    void note(const std::string& text) { push(text); }

    CheckResult result(int id, std::string name) const {
        return CheckResult{id, std::move(name), ok_, detail_};
    }

private:
    void push(const std::string& line) {
        if (!detail_.empty()) detail_ += ", ";
        detail_ += line;
    }

    bool ok_ = true;
    std::string detail_;
};

QState random_state(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> mod(0.05, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    std::vector<double> r(static_cast<std::size_t>(n)), p(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        r[static_cast<std::size_t>(j)] = mod(rng);
        p[static_cast<std::size_t>(j)] = phase(rng);
    }
    return make_general_state(r, p);
}

std::vector<int> random_subset(std::mt19937& rng, int n, bool ensure_nonempty) {
    std::bernoulli_distribution coin(0.5);
    std::vector<int> out;
    for (int j = 0; j < n; ++j)
        if (coin(rng)) out.push_back(j);
    if (out.empty() && ensure_nonempty) {
        std::uniform_int_distribution<int> pick(0, n - 1);
        out.push_back(pick(rng));
    }
    return out;
}

DenseProjector random_dense_projector(std::mt19937& rng, int n, int rank) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<Complex>> basis;
    while (static_cast<int>(basis.size()) < rank) {
        std::vector<Complex> v(static_cast<std::size_t>(n));
        for (auto& x : v) x = Complex{gauss(rng), gauss(rng)};
        for (const auto& u : basis) {
            Complex overlap{0.0, 0.0};
            for (int j = 0; j < n; ++j) overlap += std::conj(u[static_cast<std::size_t>(j)]) * v[static_cast<std::size_t>(j)];
            for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] -= overlap * u[static_cast<std::size_t>(j)];
        }
        double norm2 = 0.0;
        for (const auto& x : v) norm2 += std::norm(x);
        if (norm2 < 1e-6) continue;
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& x : v) x *= inv;
        basis.push_back(std::move(v));
    }
    return DenseProjector::span_of(basis, n);
}

Projector random_projector(std::mt19937& rng, int n, bool allow_dense) {
    std::bernoulli_distribution coin(0.5);
    if (allow_dense && coin(rng)) {
        std::uniform_int_distribution<int> rank(1, std::max(1, n - 1));
        return random_dense_projector(rng, n, rank(rng));
    }
    return IndexProjector(random_subset(rng, n, true), n);
}

CheckResult check_x_case_interval() {
    Checker ck;
    const auto freq = relative_frequencies(kStatsX);
    ck.expect_near("mu_A", freq.mu_A, 0.8, 1e-12);
    ck.expect_near("mu_B", freq.mu_B, 0.3, 1e-12);
    ck.expect_near("uniform_avg", 0.5 * (freq.mu_A + freq.mu_B), 0.55, 1e-12);
    const auto interval = interference_interval(kStatsX);
    ck.expect_near("half_width", 0.5 * (interval.hi - interval.lo), 0.0707106781, 1e-9);
    ck.expect_near("interval_lo", interval.lo, 0.4792893219, 1e-9);
    ck.expect_near("interval_hi", interval.hi, 0.6207106781, 1e-9);
    return ck.result(1, "X-case frequencies and interference interval");
}

CheckResult check_x_case_phase_fit() {
    Checker ck;
    const auto fit = fit_phases(kStatsX, 0.5);
    ck.expect_true("feasible", fit.feasible);
    if (fit.feasible) {
        ck.expect_near("mu_combined(theta)", mu_combined(kStatsX, *fit.theta), 0.5, 1e-12);
        ck.expect_near("theta", *fit.theta, 3.0 * kPi / 4.0, 1e-9);
    }
    return ck.result(2, "X-case phase fit reaches the count ratio");
}

CheckResult check_y_case_interval() {
    Checker ck;
    const auto freq = relative_frequencies(kStatsY);
    ck.expect_near("mu_A", freq.mu_A, 0.1, 1e-12);
    ck.expect_near("mu_B", freq.mu_B, 0.2, 1e-12);
    const auto interval = interference_interval(kStatsY);
    ck.expect_near("interval_lo", interval.lo, 0.0792893219, 1e-9);
    ck.expect_near("interval_hi", interval.hi, 0.2207106781, 1e-9);
    const auto fit = fit_phases(kStatsY, 0.5);
    ck.expect_true("target 0.5 infeasible", !fit.feasible);
    return ck.result(3, "Y-case interval excludes the count ratio");
}

CheckResult check_y_case_fock_ranges() {
    Checker ck;
    const auto r_and = fock_range(kStatsY, LogicalMode::conjunction);
    ck.expect_near("and_lo", r_and.lo, 0.02, 1e-12);
    ck.expect_near("and_hi", r_and.hi, 0.2207106781, 1e-9);
    const auto r_or = fock_range(kStatsY, LogicalMode::disjunction);
    ck.expect_near("or_lo", r_or.lo, 0.0792893219, 1e-9);
    ck.expect_near("or_hi", r_or.hi, 0.28, 1e-12);
    ck.expect_true("0.5 outside both ranges", !r_and.contains(0.5) && !r_or.contains(0.5));
    return ck.result(4, "Y-case conjunction/disjunction ranges");
}

CheckResult check_y_case_context_solver(double tolerance) {
    Checker ck;
    const auto fit = solve_context(0.1, 0.2, 0.5);
    ck.expect_near("achieved", fit.achieved, 0.5, tolerance);
    ck.expect_max("residual", fit.residual, tolerance);

    ContextParams zero;
    zero.p_A = 1.0;
    zero.p_B = 0.5;
    zero.c = 1.0;
    zero.phi = kPi;
    zero.c_prime = 1.0;
    zero.phi_prime = kPi / 2.0;
    ck.expect_near("limit0", mu_with_context(zero, 0.1, 0.2), 0.0, 1e-12);

    ContextParams one;
    one.p_A = 0.8;
    one.p_B = 0.9;
    one.c = 1.0;
    one.phi = kPi / 2.0;
    one.c_prime = 1.0;
    one.phi_prime = kPi;
    ck.expect_near("limit1", mu_with_context(one, 0.1, 0.2), 1.0, 1e-12);
    return ck.result(5, "Y-case context solver and limit constructions");
}

CheckResult check_screen_grid() {
    Checker ck;
    const auto freq = empirical_probabilities(kScreenCounts);
    ck.expect_near("mu(C1)", freq[0], 2.0 / 54.0, 1e-15);
    ck.expect_near("mu(C2)", freq[1], 2.0 / 54.0, 1e-15);
    ck.expect_near("mu(C3)", freq[2], 1.0 / 54.0, 1e-15);
    ck.expect_near("mu(C4)", freq[3], 7.0 / 54.0, 1e-15);
    ck.expect_near("mu(C20)", freq[19], 1.0 / 54.0, 1e-15);
    ck.expect_near("mu(C21)", freq[20], 0.0, 0.0);
    const double central = aggregate_probability(kScreenCounts, {3, 10, 17});
    ck.expect_true("central column = 1/3 exactly", central == 1.0 / 3.0);
    ck.note("central=" + fmt(central));
    return ck.result(6, "screen-grid empirical probabilities");
}

CheckResult check_uniform_born() {
    Checker ck;
    std::mt19937 rng(7001);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    double worst = 0.0;
    for (int n = 1; n <= 64; ++n) {
        std::vector<double> phases(static_cast<std::size_t>(n));
        for (auto& p : phases) p = phase(rng);
        const auto psi = make_uniform_state(n, phases);
        for (int i = 0; i < n; ++i) {
            const double p = born_probability(psi, IndexProjector({i}, n));
            worst = std::max(worst, std::abs(p - 1.0 / n));
        }
    }
    ck.expect_max("uniform born vs 1/n", worst, 1e-12);

    double worst_local = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<int> dim(2, 24);
        const int n = dim(rng);
        const auto support = random_subset(rng, n, true);
        std::vector<double> phases(support.size());
        for (auto& p : phases) p = phase(rng);
        const auto chi = make_characteristic_state(support, phases, n);
        const double expected = 1.0 / static_cast<double>(support.size());
        for (int i = 0; i < n; ++i) {
            const double p = born_probability(chi, IndexProjector({i}, n));
            const bool inside = std::binary_search(support.begin(), support.end(), i);
            worst_local = std::max(worst_local, std::abs(p - (inside ? expected : 0.0)));
        }
    }
    ck.expect_max("locally uniform born vs 1/m", worst_local, 1e-12);
    return ck.result(7, "uniform and locally-uniform Born values");
}

CheckResult check_oracle_equivalence(double tolerance) {
    Checker ck;
    std::mt19937 rng(8001);
    std::uniform_int_distribution<int> dim(4, 32);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);

    // Orthogonal closed form vs superpose + Born on disjoint supports.
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = dim(rng);
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::uniform_int_distribution<int> size_a(1, n / 2);
        const int ka = size_a(rng);
        std::uniform_int_distribution<int> size_b(1, n - ka);
        const int kb = size_b(rng);
        InterferenceSetup setup;
        setup.n = n;
        setup.support_A.assign(perm.begin(), perm.begin() + ka);
        setup.support_B.assign(perm.begin() + ka, perm.begin() + ka + kb);
        std::sort(setup.support_A.begin(), setup.support_A.end());
        std::sort(setup.support_B.begin(), setup.support_B.end());
        setup.support_X = random_subset(rng, n, false);
        setup.phases_A.resize(setup.support_A.size());
        setup.phases_B.resize(setup.support_B.size());
        for (auto& p : setup.phases_A) p = phase(rng);
        for (auto& p : setup.phases_B) p = phase(rng);

        const double closed = mu_combined(setup);
        const double oracle = born_probability(superpose(chi_A(setup), chi_B(setup)),
                                               IndexProjector(setup.support_X, n));
        worst = std::max(worst, std::abs(closed - oracle));
    }
    ck.expect_max("disjoint closed form vs oracle", worst, tolerance);

    // Non-orthogonal ratio form vs superpose + Born.
    worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = dim(rng);
        const auto a = random_state(rng, n);
        const auto b = random_state(rng, n);
        if (std::abs(1.0 + inner_product(a, b).real()) < 1e-6) continue;
        const auto M = random_projector(rng, n, n <= 12);
        const double ratio = mu_nonorthogonal(a, b, M);
        const double oracle = born_probability(superpose(a, b), M);
        worst = std::max(worst, std::abs(ratio - oracle));
    }
    ck.expect_max("non-orthogonal form vs oracle", worst, tolerance);

    // Parametrized context form vs exact ratio vs collapse + Born.
    double worst_33_23 = 0.0, worst_23_oracle = 0.0;
    int done = 0;
    while (done < 1000) {
        std::uniform_int_distribution<int> small(4, 16);
        const int n = small(rng);
        const IndexProjector N(random_subset(rng, n, true), n);
        const IndexProjector M(random_subset(rng, n, true), n);
        const auto a = random_state(rng, n);
        const auto b = random_state(rng, n);
        if (born_probability(a, N) <= 1e-6 || born_probability(b, N) <= 1e-6) continue;
        std::vector<Complex> sum(a.amplitudes());
        for (int j = 0; j < n; ++j) sum[static_cast<std::size_t>(j)] += b.amplitude(j);
        double proj_norm = 0.0;
        for (const int j : N.indices()) proj_norm += std::norm(sum[static_cast<std::size_t>(j)]);
        if (proj_norm < 1e-6) continue;

        const auto coords = extract_context_coordinates(a, b, N, M);
        const double eq_closed = std::clamp(
            mu_with_context_raw(coords.params, coords.mu_A, coords.mu_B), 0.0, 1.0);
        const double eq_exact = general_context_probability(a, b, N, M);
        const double oracle =
            born_probability(collapse(Projector(N), superpose(a, b)).state, Projector(M));
        worst_33_23 = std::max(worst_33_23, std::abs(eq_closed - eq_exact));
        worst_23_oracle = std::max(worst_23_oracle, std::abs(eq_exact - oracle));
        ++done;
    }
    ck.expect_max("parametrized vs exact context form", worst_33_23, tolerance);
    ck.expect_max("exact context form vs collapse oracle", worst_23_oracle, tolerance);

    // Conditional probability vs collapse + Born.
    worst = 0.0;
    done = 0;
    while (done < 1000) {
        std::uniform_int_distribution<int> small(2, 12);
        const int n = small(rng);
        const auto psi = random_state(rng, n);
        const auto M_A = random_projector(rng, n, true);
        const auto M_B = random_projector(rng, n, true);
        if (born_probability(psi, M_A) <= 1e-6) continue;
        const double cond = conditional_probability(psi, M_A, M_B);
        const double oracle = born_probability(collapse(M_A, psi).state, M_B);
        worst = std::max(worst, std::abs(cond - oracle));
        ++done;
    }
    ck.expect_max("conditional probability vs collapse oracle", worst, tolerance);
    return ck.result(8, "oracle equivalence property suite");
}

CheckResult check_monotonicity_grid() {
    Checker ck;
    std::mt19937 rng(9001);
    std::uniform_real_distribution<double> weight(0.05, 1.0);
    std::uniform_real_distribution<double> mu(0.02, 0.98);
    std::uniform_real_distribution<double> overlap(0.05, 1.0);
    const int grid = 21;
    double worst_decrease = 0.0, worst_increase = 0.0;

    for (int draw = 0; draw < 100; ++draw) {
        ContextParams params;
        double mu_A = 0.0, mu_B = 0.0;
        while (true) {
            params.p_A = weight(rng);
            params.p_B = weight(rng);
            params.c = overlap(rng);
            params.c_prime = overlap(rng);
            mu_A = mu(rng);
            mu_B = mu(rng);
            // keep the denominator safely positive over the whole grid
            const double sp = std::sqrt(params.p_A * params.p_B);
            const double worst_den =
                params.p_A + params.p_B -
                2.0 * sp * (std::sqrt(mu_A * mu_B) * params.c +
                            std::sqrt((1.0 - mu_A) * (1.0 - mu_B)) * params.c_prime);
            if (worst_den > 1e-3) break;
        }

        auto value = [&](double x, double x_prime) {
            ContextParams p = params;
            p.phi = std::acos(x);
            p.phi_prime = std::acos(x_prime);
            return mu_with_context_raw(p, mu_A, mu_B);
        };
        auto coord = [&](int k) { return -1.0 + 2.0 * k / (grid - 1); };

        for (int i = 0; i < grid; ++i) {
            for (int k = 0; k + 1 < grid; ++k) {
                // non-increasing in cos(phi') at fixed cos(phi)
                const double step = value(coord(i), coord(k + 1)) - value(coord(i), coord(k));
                worst_decrease = std::max(worst_decrease, step);
                // non-decreasing in cos(phi) along the two boundary rows
                const double row_lo = value(coord(k + 1), -1.0) - value(coord(k), -1.0);
                const double row_hi = value(coord(k + 1), 1.0) - value(coord(k), 1.0);
                worst_increase = std::max({worst_increase, -row_lo, -row_hi});
            }
        }
    }
    ck.expect_max("non-increase in cos(phi') violation", worst_decrease, 1e-12);
    ck.expect_max("non-decrease in cos(phi) violation", worst_increase, 1e-12);
    return ck.result(9, "context-form monotonicity grid");
}

CheckResult check_bond_suite() {
    Checker ck;
    std::mt19937 rng(10001);
    std::uniform_int_distribution<int> dim(2, 16);

    double worst_self = 0.0;
    bool self_ge_one = true;
    int done = 0;
    while (done < 200) {
        const int n = dim(rng);
        const auto psi = random_state(rng, n);
        const auto M = random_projector(rng, n, n <= 10);
        const double p = born_probability(psi, M);
        if (p <= 1e-3) continue;
        const auto report = meaning_bond(psi, M, M);
        worst_self = std::max(worst_self, std::abs(report.bond - 1.0 / p));
        if (report.bond < 1.0 - 1e-12) self_ge_one = false;
        ++done;
    }
    ck.expect_max("self-bond vs 1/p(B)", worst_self, 1e-12);
    ck.expect_true("no self-repulsion", self_ge_one);

    // Planted corpora: count formula vs projector-path bond on the uniform state.
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    double worst_uniform = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<int> docs(4, 20);
        const int n = docs(rng);
        const auto J_A = random_subset(rng, n, true);
        const auto J_B = random_subset(rng, n, true);
        std::vector<std::set<std::string>> token_sets(static_cast<std::size_t>(n));
        for (const int j : J_A) token_sets[static_cast<std::size_t>(j)].insert("alpha");
        for (const int j : J_B) token_sets[static_cast<std::size_t>(j)].insert("beta");
        for (int j = 0; j < n; ++j) token_sets[static_cast<std::size_t>(j)].insert("page");
        const auto corpus = Corpus::from_token_sets(std::move(token_sets));
        const auto stats = counts(corpus, "alpha", "beta", "page");

        std::vector<double> phases(static_cast<std::size_t>(n));
        for (auto& p : phases) p = phase(rng);
        const auto psi = make_uniform_state(n, phases);
        const auto report = meaning_bond(psi, IndexProjector(corpus.doc_set({"alpha"}), n),
                                         IndexProjector(corpus.doc_set({"beta"}), n));
        worst_uniform = std::max(worst_uniform, std::abs(report.bond - uniform_bond(stats)));
    }
    ck.expect_max("count formula vs projector path", worst_uniform, 1e-12);

    // Non-commuting rank-1 pair in dimension 2: the bond is direction-dependent.
    const QState psi(std::vector<Complex>{{1.0, 0.0}, {0.0, 0.0}});
    const Projector M_A = IndexProjector({0}, 2);
    const double h = 0.5;
    const Projector M_B = DenseProjector::from_matrix({{h, 0.0}, {h, 0.0}, {h, 0.0}, {h, 0.0}}, 2);
    const double b_given_a = meaning_bond(psi, M_A, M_B).bond;
    const double a_given_b = meaning_bond(psi, M_B, M_A).bond;
    ck.expect_near("bond(B|A)", b_given_a, 1.0, 1e-12);
    ck.expect_near("bond(A|B)", a_given_b, 0.5, 1e-12);
    ck.expect_true("asymmetry", std::abs(b_given_a - a_given_b) > 1e-6);
    return ck.result(10, "meaning-bond suite");
}

CheckResult check_solver_sweep(double tolerance) {
    Checker ck;
    double worst = 0.0;
    for (int i = 1; i <= 9; ++i) {
        for (int j = 1; j <= 9; ++j) {
            const double mu_A = i / 10.0;
            const double mu_B = j / 10.0;
            for (int k = 0; k <= 20; ++k) {
                const double target = (k == 20) ? 1.0 : k * 0.05;
                const auto fit = solve_context(mu_A, mu_B, target);
                worst = std::max(worst, fit.residual);
            }
        }
    }
    ck.expect_max("solver residual over 9x9x21 sweep", worst, tolerance);
    return ck.result(11, "context-solver range completeness");
}

}  // namespace

double replication_tolerance_from_env() {
    if (const char* env = std::getenv("QWEB_TOLERANCE")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && v > 0.0) return v;
    }
    return kDefaultReplicationTolerance;
}

std::vector<CheckResult> run_replication(double tolerance) {
    std::vector<CheckResult> results;
    results.push_back(check_x_case_interval());
    results.push_back(check_x_case_phase_fit());
    results.push_back(check_y_case_interval());
    results.push_back(check_y_case_fock_ranges());
    results.push_back(check_y_case_context_solver(tolerance));
    results.push_back(check_screen_grid());
    results.push_back(check_uniform_born());
    results.push_back(check_oracle_equivalence(tolerance));
    results.push_back(check_monotonicity_grid());
    results.push_back(check_bond_suite());
    results.push_back(check_solver_sweep(tolerance));
    return results;
}

}  // namespace qweb
