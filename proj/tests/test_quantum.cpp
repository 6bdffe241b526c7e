#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "qweb/quantum.hpp"

using namespace qweb;

namespace {

constexpr double kPi = std::numbers::pi;

QState random_state(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> mod(0.05, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    std::vector<double> r(n), p(n);
    for (int j = 0; j < n; ++j) {
        r[j] = mod(rng);
        p[j] = phase(rng);
    }
    return make_general_state(r, p);
}

DenseProjector random_dense_projector(std::mt19937& rng, int n, int rank) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<Complex>> basis;
    while (static_cast<int>(basis.size()) < rank) {
        std::vector<Complex> v(n);
        for (auto& x : v) x = Complex{gauss(rng), gauss(rng)};
        for (const auto& u : basis) {
            Complex overlap{0.0, 0.0};
            for (int j = 0; j < n; ++j) overlap += std::conj(u[j]) * v[j];
            for (int j = 0; j < n; ++j) v[j] -= overlap * u[j];
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

double state_norm2(const QState& s) {
    double n2 = 0.0;
    for (const auto& a : s.amplitudes()) n2 += std::norm(a);
    return n2;
}

}  // namespace

TEST_CASE("state constructors normalize and validate") {
    const std::vector<double> basis_mod{1.0, 0.0, 0.0};
    const std::vector<double> zero_phases{0.0, 0.0, 0.0};
    const auto e0 = make_general_state(basis_mod, zero_phases);
    CHECK(e0.amplitude(0) == Complex{1.0, 0.0});
    CHECK(e0.amplitude(1) == Complex{0.0, 0.0});

    const auto uniform = make_uniform_state(4);
    for (int j = 0; j < 4; ++j) CHECK(uniform.amplitude(j).real() == doctest::Approx(0.5));

    CHECK(make_uniform_state(1).amplitude(0) == Complex{1.0, 0.0});
    CHECK_THROWS_AS(make_uniform_state(0), std::invalid_argument);
    CHECK_THROWS_AS(make_general_state(std::vector<double>{0.0, 0.0}, zero_phases),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_general_state(std::vector<double>{0.0, 0.0}, std::vector<double>{0.0, 0.0}),
                    std::invalid_argument);

    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = random_state(rng, 8);
        CHECK(std::abs(state_norm2(s) - 1.0) <= 1e-12);
    }
}

TEST_CASE("characteristic states are locally uniform") {
    const std::vector<int> support{0, 1, 2};
    const auto chi = make_characteristic_state(support, {}, 10);
    for (int i = 0; i < 10; ++i) {
        const double p = born_probability(chi, IndexProjector({i}, 10));
        if (i < 3) CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
        else CHECK(p == 0.0);
    }

    // full support reduces to the uniform state
    std::vector<int> all{0, 1, 2, 3};
    const auto full = make_characteristic_state(all, {}, 4);
    const auto uniform = make_uniform_state(4);
    for (int j = 0; j < 4; ++j) CHECK(std::abs(full.amplitude(j) - uniform.amplitude(j)) < 1e-15);

    std::mt19937 rng(12);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    std::vector<double> phases{phase(rng), phase(rng), phase(rng)};
    const auto chi_p = make_characteristic_state({2, 5, 7}, phases, 10);
    CHECK(std::abs(state_norm2(chi_p) - 1.0) <= 1e-12);

    CHECK_THROWS_AS(make_characteristic_state({}, {}, 4), std::invalid_argument);
}

TEST_CASE("step states split weight between a support and its complement") {
    const std::vector<int> support{1, 4, 6};
    const auto stepped = make_step_state(std::sqrt(0.7), support, {}, {}, 10);
    CHECK(born_probability(stepped, IndexProjector(support, 10)) ==
          doctest::Approx(0.7).epsilon(1e-12));
    CHECK(std::abs(state_norm2(stepped) - 1.0) <= 1e-12);

    const auto inside_only = make_step_state(1.0, support, {}, {}, 10);
    const auto chi = make_characteristic_state(support, {}, 10);
    for (int j = 0; j < 10; ++j) CHECK(std::abs(inside_only.amplitude(j) - chi.amplitude(j)) < 1e-15);

    const auto outside_only = make_step_state(0.0, support, {}, {}, 10);
    CHECK(born_probability(outside_only, IndexProjector(support, 10)) == 0.0);

    std::vector<int> full(10);
    std::iota(full.begin(), full.end(), 0);
    CHECK_THROWS_AS(make_step_state(0.5, full, {}, {}, 10), std::invalid_argument);
    CHECK_THROWS_AS(make_step_state(0.5, {}, {}, {}, 10), std::invalid_argument);
}

TEST_CASE("born probability: basis, completeness and additivity") {
    const auto e0 = make_general_state(std::vector<double>{1.0, 0.0, 0.0},
                                       std::vector<double>{0.0, 0.0, 0.0});
    CHECK(born_probability(e0, IndexProjector({0}, 3)) == doctest::Approx(1.0));
    CHECK(born_probability(e0, IndexProjector({1, 2}, 3)) == 0.0);

    std::mt19937 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = random_state(rng, 12);
        CHECK(born_probability(s, IndexProjector::identity(12)) == doctest::Approx(1.0).epsilon(1e-12));

        // additivity over disjoint index sets
        const IndexProjector left({0, 2, 4, 6}, 12);
        const IndexProjector right({1, 3, 5}, 12);
        const IndexProjector both({0, 1, 2, 3, 4, 5, 6}, 12);
        CHECK(born_probability(s, left) + born_probability(s, right) ==
              doctest::Approx(born_probability(s, both)).epsilon(1e-12));
    }

    CHECK_THROWS_AS(born_probability(e0, IndexProjector({0}, 4)), std::invalid_argument);
}

TEST_CASE("born probability is phase invariant for diagonal projectors") {
    std::mt19937 rng(14);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    const int n = 9;
    std::vector<double> mod(n), ph(n), ph2(n);
    std::uniform_real_distribution<double> m(0.05, 1.0);
    for (int j = 0; j < n; ++j) {
        mod[j] = m(rng);
        ph[j] = phase(rng);
        ph2[j] = phase(rng);  // completely different phases
    }
    const auto s1 = make_general_state(mod, ph);
    const auto s2 = make_general_state(mod, ph2);
    const IndexProjector proj({0, 3, 5, 8}, n);
    CHECK(born_probability(s1, proj) == doctest::Approx(born_probability(s2, proj)).epsilon(1e-12));

    // global phase invariance
    std::vector<Complex> rotated(s1.amplitudes());
    const Complex global = std::polar(1.0, 1.234);
    for (auto& a : rotated) a *= global;
    const QState s3(std::move(rotated));
    CHECK(born_probability(s1, proj) == doctest::Approx(born_probability(s3, proj)).epsilon(1e-12));
}

TEST_CASE("dense projectors validate their matrix laws") {
    std::mt19937 rng(15);
    const auto proj = random_dense_projector(rng, 6, 2);
    // M = M^dagger and M^2 = M within tolerance
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) {
            CHECK(std::abs(proj.at(r, c) - std::conj(proj.at(c, r))) <= 1e-10);
            Complex sq{0.0, 0.0};
            for (int k = 0; k < 6; ++k) sq += proj.at(r, k) * proj.at(k, c);
            CHECK(std::abs(sq - proj.at(r, c)) <= 1e-10);
        }

    std::vector<Complex> not_projector(4, Complex{0.5, 0.1});
    CHECK_THROWS_AS(DenseProjector::from_matrix(not_projector, 2), std::invalid_argument);
}

TEST_CASE("superpose handles orthogonal, overlapping and annihilating pairs") {
    const auto e0 = make_general_state(std::vector<double>{1, 0, 0}, std::vector<double>{0, 0, 0});
    const auto e1 = make_general_state(std::vector<double>{0, 1, 0}, std::vector<double>{0, 0, 0});
    const auto mix = superpose(e0, e1);
    CHECK(mix.amplitude(0).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(mix.amplitude(1).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(mix.amplitude(2) == Complex{0.0, 0.0});

    // disjoint characteristic states: the normalizer is exactly 1/sqrt(2)
    const auto chi_a = make_characteristic_state({0, 1}, {}, 6);
    const auto chi_b = make_characteristic_state({3, 4}, {}, 6);
    const auto both = superpose(chi_a, chi_b);
    CHECK(both.amplitude(0).real() == doctest::Approx(1.0 / 2.0).epsilon(1e-12));

    std::mt19937 rng(16);
    for (int trial = 0; trial < 25; ++trial) {
        const auto a = random_state(rng, 7);
        const auto b = random_state(rng, 7);
        CHECK(std::abs(state_norm2(superpose(a, b)) - 1.0) <= 1e-12);
    }

    std::vector<Complex> negated(e0.amplitudes());
    for (auto& a : negated) a = -a;
    CHECK_THROWS_WITH_AS(superpose(e0, QState(std::move(negated))),
                         doctest::Contains("destructive annihilation"), std::domain_error);
}

TEST_CASE("collapse renormalizes onto the projector's range") {
    const auto uniform = make_uniform_state(8);
    const IndexProjector proj({1, 3, 5}, 8);
    const auto result = collapse(proj, uniform);
    CHECK(result.probability == doctest::Approx(3.0 / 8.0).epsilon(1e-12));
    const auto chi = make_characteristic_state({1, 3, 5}, {}, 8);
    for (int j = 0; j < 8; ++j) CHECK(std::abs(result.state.amplitude(j) - chi.amplitude(j)) < 1e-12);

    // an eigenstate passes through unchanged with probability one
    const auto again = collapse(proj, result.state);
    CHECK(again.probability == doctest::Approx(1.0).epsilon(1e-12));
    for (int j = 0; j < 8; ++j)
        CHECK(std::abs(again.state.amplitude(j) - result.state.amplitude(j)) < 1e-12);

    // random dense projector: the output is a fixed point of the projector
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto psi = random_state(rng, 6);
        const auto dense = random_dense_projector(rng, 6, 2);
        const auto collapsed = collapse(Projector(dense), psi);
        const auto reapplied = dense.apply(collapsed.state.amplitudes());
        for (int j = 0; j < 6; ++j)
            CHECK(std::abs(reapplied[j] - collapsed.state.amplitude(j)) <= 1e-10);
    }

    const auto outside = make_characteristic_state({0, 2}, {}, 8);
    CHECK_THROWS_WITH_AS(collapse(IndexProjector({5}, 8), outside),
                         doctest::Contains("annihilated"), std::domain_error);
}

TEST_CASE("empirical probabilities from impact counts") {
    const ImpactRecord fig{{2, 2, 1, 7, 3, 3, 3, 2, 2, 2, 8, 3, 3, 2, 1, 2, 2, 3, 2, 1, 0}};
    CHECK(fig.total() == 54);
    const auto freq = empirical_probabilities(fig);
    CHECK(freq[3] == doctest::Approx(7.0 / 54.0).epsilon(1e-15));
    double sum = 0.0;
    for (const double f : freq) sum += f;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(aggregate_probability(fig, {3, 10, 17}) == 1.0 / 3.0);

    const ImpactRecord single{{0, 9, 0}};
    const auto sf = empirical_probabilities(single);
    CHECK(sf[0] == 0.0);
    CHECK(sf[1] == 1.0);
    CHECK(sf[2] == 0.0);

    CHECK_THROWS_AS(empirical_probabilities(ImpactRecord{{0, 0}}), std::domain_error);
}

TEST_CASE("classical average of probability profiles") {
    const std::vector<double> a{0.8, 0.1};
    const std::vector<double> b{0.3, 0.2};
    const auto avg = classical_average(a, b);
    CHECK(avg[0] == doctest::Approx(0.55).epsilon(1e-15));
    CHECK(avg[1] == doctest::Approx(0.15).epsilon(1e-15));

    const auto same = classical_average(a, a);
    CHECK(same[0] == a[0]);
    CHECK(same[1] == a[1]);

    CHECK_THROWS_AS(classical_average(a, std::vector<double>{0.1}), std::invalid_argument);
}
