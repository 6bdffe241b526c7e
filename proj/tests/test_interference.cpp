#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "qweb/interference.hpp"

using namespace qweb;

namespace {

constexpr double kPi = std::numbers::pi;

const CooccurrenceStats kStatsX{140, 100, 50, 10, 80, 15, 5};
const CooccurrenceStats kStatsY{140, 100, 50, 10, 10, 10, 5};

InterferenceSetup random_overlapping_setup(std::mt19937& rng, int n) {
    std::bernoulli_distribution coin(0.5);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    InterferenceSetup s;
    s.n = n;
    while (s.support_A.empty() || s.support_B.empty()) {
        s.support_A.clear();
        s.support_B.clear();
        for (int j = 0; j < n; ++j) {
            if (coin(rng)) s.support_A.push_back(j);
            if (coin(rng)) s.support_B.push_back(j);
        }
    }
    for (int j = 0; j < n; ++j)
        if (coin(rng)) s.support_X.push_back(j);
    s.phases_A.resize(s.support_A.size());
    s.phases_B.resize(s.support_B.size());
    for (auto& p : s.phases_A) p = phase(rng);
    for (auto& p : s.phases_B) p = phase(rng);
    return s;
}

}  // namespace

TEST_CASE("interference term matches the projected inner product") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<int> dim(2, 16);
        const auto setup = random_overlapping_setup(rng, dim(rng));
        const auto a = chi_A(setup);
        const auto b = chi_B(setup);
        const IndexProjector m_x(setup.support_X, setup.n);
        const double expected = matrix_element(a, Projector(m_x), b).real();
        CHECK(interference_term(setup) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("interference term extremes") {
    InterferenceSetup s;
    s.n = 8;
    s.support_A = {0, 1, 2, 3};
    s.support_B = {2, 3, 4, 5};
    s.support_X = {2, 3, 6};
    // all phase differences pi/2: the cross term vanishes
    s.phases_A = {0.0, 0.0, 0.0, 0.0};
    s.phases_B = {kPi / 2, kPi / 2, kPi / 2, kPi / 2};
    CHECK(interference_term(s) == doctest::Approx(0.0).epsilon(1e-15));
    // all differences zero: the maximum n_ABX / sqrt(n_A n_B)
    s.phases_B = {0.0, 0.0, 0.0, 0.0};
    CHECK(interference_term(s) == doctest::Approx(2.0 / 4.0).epsilon(1e-12));
}

TEST_CASE("combined probability equals the superposition oracle on disjoint supports") {
    std::mt19937 rng(22);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> dim(2, 32);
        const int n = dim(rng);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::uniform_int_distribution<int> size_a(1, std::max(1, n / 2));
        const int ka = size_a(rng);
        std::uniform_int_distribution<int> size_b(1, n - ka);
        const int kb = size_b(rng);

        InterferenceSetup s;
        s.n = n;
        s.support_A.assign(perm.begin(), perm.begin() + ka);
        s.support_B.assign(perm.begin() + ka, perm.begin() + ka + kb);
        std::sort(s.support_A.begin(), s.support_A.end());
        std::sort(s.support_B.begin(), s.support_B.end());
        std::bernoulli_distribution coin(0.5);
        for (int j = 0; j < n; ++j)
            if (coin(rng)) s.support_X.push_back(j);
        s.phases_A.resize(s.support_A.size());
        s.phases_B.resize(s.support_B.size());
        for (auto& p : s.phases_A) p = phase(rng);
        for (auto& p : s.phases_B) p = phase(rng);

        const double oracle = born_probability(superpose(chi_A(s), chi_B(s)),
                                               IndexProjector(s.support_X, n));
        CHECK(mu_combined(s) == doctest::Approx(oracle).epsilon(1e-12));
    }
}

TEST_CASE("combined probability rejects overlapping supports") {
    InterferenceSetup s;
    s.n = 4;
    s.support_A = {0, 1};
    s.support_B = {1, 2};
    CHECK_THROWS_WITH_AS(mu_combined(s), doctest::Contains("mu_nonorthogonal"),
                         std::domain_error);
}

TEST_CASE("count-level combined probability reproduces the worked case") {
    // pi/2 differences keep only the uniform average
    CHECK(mu_combined(kStatsX, kPi / 2) == doctest::Approx(0.55).epsilon(1e-12));
    // fitted phases reach the count ratio
    const auto fit = fit_phases(kStatsX, 0.5);
    REQUIRE(fit.feasible);
    CHECK(mu_combined(kStatsX, *fit.theta) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(*fit.theta == doctest::Approx(3.0 * kPi / 4.0).epsilon(1e-12));
}

TEST_CASE("non-orthogonal form equals the superposition oracle") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> mod(0.05, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 12;
        std::vector<double> ra(n), pa(n), rb(n), pb(n);
        for (int j = 0; j < n; ++j) {
            ra[j] = mod(rng);
            pa[j] = phase(rng);
            rb[j] = mod(rng);
            pb[j] = phase(rng);
        }
        const auto a = make_general_state(ra, pa);
        const auto b = make_general_state(rb, pb);
        std::bernoulli_distribution coin(0.5);
        std::vector<int> jx;
        for (int j = 0; j < n; ++j)
            if (coin(rng)) jx.push_back(j);
        const IndexProjector m(jx, n);
        const double oracle = born_probability(superpose(a, b), Projector(m));
        CHECK(mu_nonorthogonal(a, b, Projector(m)) == doctest::Approx(oracle).epsilon(1e-12));
    }
}

TEST_CASE("non-orthogonal form on trivial pairs") {
    const auto chi_1 = make_characteristic_state({0, 1}, {}, 6);
    const auto chi_2 = make_characteristic_state({3, 4}, {}, 6);
    const IndexProjector m({0, 3}, 6);
    // orthogonal inputs reduce to the closed form value
    CHECK(mu_nonorthogonal(chi_1, chi_2, Projector(m)) ==
          doctest::Approx(0.5 * (0.5 + 0.5)).epsilon(1e-12));
    // identical inputs give the plain Born value
    CHECK(mu_nonorthogonal(chi_1, chi_1, Projector(m)) ==
          doctest::Approx(born_probability(chi_1, Projector(m))).epsilon(1e-12));

    std::vector<Complex> negated(chi_1.amplitudes());
    for (auto& x : negated) x = -x;
    CHECK_THROWS_AS(mu_nonorthogonal(chi_1, QState(std::move(negated)), Projector(m)),
                    std::domain_error);
}

TEST_CASE("interference interval endpoints and clamping") {
    const auto ix = interference_interval(kStatsX);
    CHECK(ix.lo == doctest::Approx(0.4792893218813452).epsilon(1e-12));
    CHECK(ix.hi == doctest::Approx(0.6207106781186548).epsilon(1e-12));
    CHECK_FALSE(ix.clamped);

    const auto iy = interference_interval(kStatsY);
    CHECK(iy.lo == doctest::Approx(0.0792893218813452).epsilon(1e-12));
    CHECK(iy.hi == doctest::Approx(0.2207106781186548).epsilon(1e-12));

    // no shared support: the interval degenerates to the average
    const CooccurrenceStats no_shared{100, 10, 10, 2, 5, 5, 0};
    const auto deg = interference_interval(no_shared);
    CHECK(deg.lo == deg.hi);
    CHECK(deg.lo == doctest::Approx(0.5).epsilon(1e-12));

    // extreme counts push the raw endpoints outside [0, 1]
    const CooccurrenceStats extreme{100, 10, 10, 10, 10, 10, 10};
    const auto cl = interference_interval(extreme);
    CHECK(cl.clamped);
    CHECK(cl.hi == 1.0);
    CHECK(cl.raw_hi > 1.0);
}

TEST_CASE("phase fitting: worked cases and round trip") {
    const auto fx = fit_phases(kStatsX, 0.5);
    REQUIRE(fx.feasible);
    CHECK(std::cos(*fx.theta) == doctest::Approx(-0.7071067811865476).epsilon(1e-9));
    REQUIRE(fx.achieved);
    CHECK(*fx.achieved == doctest::Approx(0.5).epsilon(1e-12));

    const auto fy = fit_phases(kStatsY, 0.5);
    CHECK_FALSE(fy.feasible);
    CHECK(fy.interval.lo == doctest::Approx(0.0792893218813452).epsilon(1e-9));
    CHECK(fy.interval.hi == doctest::Approx(0.2207106781186548).epsilon(1e-9));

    // the midpoint needs no interference at all
    const auto mid = fit_phases(kStatsX, 0.55);
    REQUIRE(mid.feasible);
    CHECK(*mid.theta == doctest::Approx(kPi / 2).epsilon(1e-12));

    // round trip across the whole feasible range
    std::mt19937 rng(24);
    std::uniform_real_distribution<double> t(0.4792893219, 0.6207106781);
    for (int trial = 0; trial < 50; ++trial) {
        const double target = t(rng);
        const auto fit = fit_phases(kStatsX, target);
        REQUIRE(fit.feasible);
        CHECK(mu_combined(kStatsX, *fit.theta) == doctest::Approx(target).epsilon(1e-12));
    }

    // n_ABX = 0 leaves only the exact average reachable
    const CooccurrenceStats no_shared{100, 10, 10, 2, 5, 5, 0};
    CHECK(fit_phases(no_shared, 0.5).feasible);
    CHECK_FALSE(fit_phases(no_shared, 0.6).feasible);
}

TEST_CASE("phase sweep traces the interval monotonically from hi to lo") {
    const auto interval = interference_interval(kStatsX);
    double prev = mu_combined(kStatsX, 0.0);
    CHECK(prev == doctest::Approx(interval.hi).epsilon(1e-12));
    for (int k = 1; k <= 64; ++k) {
        const double theta = kPi * k / 64.0;
        const double value = mu_combined(kStatsX, theta);
        CHECK(value <= prev + 1e-12);
        prev = value;
    }
    CHECK(prev == doctest::Approx(interval.lo).epsilon(1e-12));
}

TEST_CASE("marginals stay phase invariant while the combination moves") {
    std::mt19937 rng(25);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    const auto layout = synthesize_supports(kStatsX);
    REQUIRE(layout.has_value());
    const IndexProjector m_x(layout->support_X, layout->n);
    const double mu_a_ref = born_probability(chi_A(*layout), Projector(m_x));
    const double mu_b_ref = born_probability(chi_B(*layout), Projector(m_x));
    for (int trial = 0; trial < 20; ++trial) {
        InterferenceSetup s = *layout;
        s.phases_A.resize(s.support_A.size());
        s.phases_B.resize(s.support_B.size());
        for (auto& p : s.phases_A) p = phase(rng);
        for (auto& p : s.phases_B) p = phase(rng);
        CHECK(born_probability(chi_A(s), Projector(m_x)) ==
              doctest::Approx(mu_a_ref).epsilon(1e-12));
        CHECK(born_probability(chi_B(s), Projector(m_x)) ==
              doctest::Approx(mu_b_ref).epsilon(1e-12));
    }
}

TEST_CASE("synthesized supports realize the counts") {
    const auto layout = synthesize_supports(kStatsX);
    REQUIRE(layout.has_value());
    CHECK(static_cast<std::int64_t>(layout->support_A.size()) == kStatsX.n_A);
    CHECK(static_cast<std::int64_t>(layout->support_B.size()) == kStatsX.n_B);
    std::vector<int> ab;
    std::set_intersection(layout->support_A.begin(), layout->support_A.end(),
                          layout->support_B.begin(), layout->support_B.end(),
                          std::back_inserter(ab));
    CHECK(static_cast<std::int64_t>(ab.size()) == kStatsX.n_AB);
    std::vector<int> abx;
    std::set_intersection(ab.begin(), ab.end(), layout->support_X.begin(),
                          layout->support_X.end(), std::back_inserter(abx));
    CHECK(static_cast<std::int64_t>(abx.size()) == kStatsX.n_ABX);

    // unrealizable tuples are reported as such
    const CooccurrenceStats impossible{20, 10, 9, 9, 8, 0, 0};
    CHECK_FALSE(synthesize_supports(impossible).has_value());
}
