#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "thermetry/athermality.hpp"
#include "thermetry/fisher.hpp"
#include "thermetry/types.hpp"

using namespace thermetry;

namespace {

std::vector<double> random_probs(std::mt19937_64& rng, std::size_t d,
                                 double floor_p = 0.0) {
    std::uniform_real_distribution<double> u(floor_p, 1.0);
    std::vector<double> p(d);
    double s = 0.0;
    for (auto& v : p) {
        v = u(rng);
        s += v;
    }
    for (auto& v : p) v /= s;
    return p;
}

// one two-level partial thermalization: column-stochastic, fixes the Gibbs
// distribution, moves probability between levels i and j
void partial_thermalize(std::vector<double>& p, const std::vector<double>& g,
                        std::size_t i, std::size_t j, double s) {
    const double gi = g[i], gj = g[j];
    const double a = s * std::min(1.0, gj / gi);
    const double b = a * gi / gj;
    const double pi = p[i], pj = p[j];
    p[i] = (1.0 - a) * pi + b * pj;
    p[j] = a * pi + (1.0 - b) * pj;
}

} // namespace

TEST_CASE("beta ordering sorts by boltzmann-weighted probability") {
    const DiagonalState p({0.5, 0.3, 0.2});
    const EnergySpectrum s({0.0, 1.0, 3.0});
    const BetaOrdering bo = beta_order(p, s, 0.5);
    // q = (0.5, 0.3 e^{0.5}, 0.2 e^{1.5}) -> level 2 first, then 0, then 1
    REQUIRE(bo.order.size() == 3);
    CHECK(bo.order[0] == 2);
    CHECK(bo.order[1] == 0);
    CHECK(bo.order[2] == 1);
    CHECK(bo.widths[0] == doctest::Approx(std::exp(-1.5)).epsilon(1e-15));
    CHECK(bo.z_s == doctest::Approx(s.partition_function(0.5)).epsilon(1e-15));
    for (std::size_t k = 0; k + 1 < 3; ++k)
        CHECK(bo.weights[k] >= bo.weights[k + 1]);
}

TEST_CASE("beta ordering breaks ties by energy then index") {
    // equal q for levels 0 and 1 at beta = 0
    const DiagonalState p({0.4, 0.4, 0.2});
    const EnergySpectrum s({0.0, 1.0, 2.0});
    const BetaOrdering bo = beta_order(p, s, 0.0);
    CHECK(bo.order[0] == 0);
    CHECK(bo.order[1] == 1);
    CHECK(bo.order[2] == 2);
}

TEST_CASE("two-level closed form agrees with the profile integral") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> up(0.0, 1.0);
    std::uniform_real_distribution<double> ub(0.0, 5.0);
    std::uniform_real_distribution<double> ue(0.1, 4.0);
    for (int rep = 0; rep < 100; ++rep) {
        const double p1 = up(rng);
        const double beta = ub(rng);
        const double eps = ue(rng);
        const DiagonalState st({1.0 - p1, p1});
        const EnergySpectrum sp({0.0, eps});
        const double a = max_qfi_thermal(st, sp, beta);
        const double b = max_qfi_qubit(st, eps, beta);
        CHECK(std::abs(a - b) <= 1e-12);
    }
}

TEST_CASE("two-level hand value at beta eps = ln 2, p = (1/2, 1/2)") {
    const DiagonalState st({0.5, 0.5});
    CHECK(max_qfi_qubit(st, 1.0, std::log(2.0)) ==
          doctest::Approx(1.0 / 12.0).epsilon(1e-15));
    CHECK(max_qfi_thermal(st, EnergySpectrum({0.0, 1.0}), std::log(2.0)) ==
          doctest::Approx(1.0 / 12.0).epsilon(1e-14));
}

TEST_CASE("gibbs states carry no phase-sensing advantage") {
    const EnergySpectrum sp({0.0, 0.7, 1.9, 2.4});
    for (double beta : {0.2, 1.0, 3.0}) {
        const DiagonalState g = DiagonalState::gibbs(sp, beta);
        CHECK(std::abs(max_qfi_thermal(g, sp, beta)) < 1e-25);
        CHECK(std::abs(interaction_speed(g, sp, beta)) < 1e-25);
    }
}

TEST_CASE("beta = 0 reduces to the fixed-spectrum maximum") {
    std::mt19937_64 rng(991);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t d = 2 + rep % 5;
        const std::vector<double> p = random_probs(rng, d);
        std::vector<double> e(d);
        std::uniform_real_distribution<double> ue(0.0, 1.0);
        double acc = 0.0;
        for (auto& v : e) {
            v = acc;
            acc += 0.1 + ue(rng);
        }
        const DiagonalState st(p);
        const EnergySpectrum sp(e);
        const double kernel = max_qfi_thermal(st, sp, 0.0);
        const double high = qfi_temperature_limits(st, sp).high;
        CHECK(std::abs(kernel - high) <= 1e-12 * (1.0 + high));
    }
}

TEST_CASE("temperature limits bracket the interpolation") {
    const DiagonalState st({0.55, 0.25, 0.12, 0.08});
    const EnergySpectrum sp({0.0, 0.9, 2.1, 3.3});
    const TemperatureLimits lim = qfi_temperature_limits(st, sp);

    double expected_low = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        expected_low += st.probs()[i] * sp.energies()[i] * sp.energies()[i];
    CHECK(lim.low == doctest::Approx(expected_low).epsilon(1e-15));

    // deep low-temperature regime: e^{-beta * gap_min} ~ 1e-10
    const double gap_min = 0.9;
    const double beta_cold = std::log(1e10) / gap_min;
    const double cold = max_qfi_thermal(st, sp, beta_cold);
    CHECK(std::abs(cold - lim.low) <= 1e-6 * lim.low);

    const double hot = max_qfi_thermal(st, sp, 1e-9);
    CHECK(std::abs(hot - lim.high) <= 1e-6 * lim.high);
}

TEST_CASE("maximally excited two-level state reaches eps^2 at every beta") {
    const DiagonalState st({0.0, 1.0});
    for (double beta : {0.0, 0.5, 2.0, 10.0})
        CHECK(max_qfi_qubit(st, 1.0, beta) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("thermo curve runs from (0,0) to (Z_S, 1) and is concave") {
    const DiagonalState st({0.5, 0.3, 0.2});
    const EnergySpectrum sp({0.0, 1.0, 3.0});
    const double beta = 0.7;
    const ThermoCurve c = thermo_curve(st, sp, beta);
    REQUIRE(c.xs.size() == 4);
    CHECK(c.xs.front() == 0.0);
    CHECK(c.ys.front() == 0.0);
    CHECK(c.xs.back() == doctest::Approx(sp.partition_function(beta)));
    CHECK(c.ys.back() == doctest::Approx(1.0));
    // slopes q_k nonincreasing
    for (std::size_t k = 0; k + 2 < c.xs.size(); ++k) {
        const double s1 = (c.ys[k + 1] - c.ys[k]) / (c.xs[k + 1] - c.xs[k]);
        const double s2 =
            (c.ys[k + 2] - c.ys[k + 1]) / (c.xs[k + 2] - c.xs[k + 1]);
        CHECK(s1 >= s2 - 1e-12);
    }
    CHECK(c.value_at(0.0) == 0.0);
    CHECK(c.value_at(c.xs.back()) == doctest::Approx(1.0));
    CHECK(c.value_at(0.5 * c.xs[1]) ==
          doctest::Approx(0.5 * c.ys[1]).epsilon(1e-14));
}

TEST_CASE("every state sits above gibbs in the thermo order") {
    std::mt19937_64 rng(17);
    const EnergySpectrum sp({0.0, 0.8, 1.7});
    for (double beta : {0.3, 1.2}) {
        const DiagonalState g = DiagonalState::gibbs(sp, beta);
        for (int rep = 0; rep < 20; ++rep) {
            const DiagonalState x(random_probs(rng, 3));
            CHECK(thermo_majorizes(g, x, sp, beta));
        }
    }
}

TEST_CASE("partial thermalization never increases the qfi limit") {
    std::mt19937_64 rng(271);
    std::uniform_real_distribution<double> us(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> ui(0, 3);
    const EnergySpectrum sp({0.0, 0.8, 1.7, 2.9});
    const double beta = 0.6;
    std::vector<double> gp = DiagonalState::gibbs(sp, beta).probs();
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> before = random_probs(rng, 4);
        std::vector<double> after = before;
        for (int k = 0; k < 3; ++k) {
            std::size_t i = ui(rng), j = ui(rng);
            if (i == j) continue;
            partial_thermalize(after, gp, i, j, us(rng));
        }
        const DiagonalState sb(before), sa(after);
        const double fb = max_qfi_thermal(sb, sp, beta);
        const double fa = max_qfi_thermal(sa, sp, beta);
        CHECK(fa <= fb + 1e-10);
        CHECK(thermo_majorizes(sa, sb, sp, beta));
    }
}

TEST_CASE("interaction speed is the unweighted mirrored integral") {
    // two-level: (1/2) Integral f(q(x), q(L-x)) dx = f(p0 e^{-b e}, p1),
    // the qfi closed form stripped of its eps^2 gap factor
    const double p1 = 0.35, beta = 0.8, eps = 1.0;
    const DiagonalState st({1.0 - p1, p1});
    const EnergySpectrum sp({0.0, eps});
    const double x = std::exp(-beta * eps);
    const double expected = fisher_difference((1.0 - p1) * x, p1);
    CHECK(interaction_speed(st, sp, beta) ==
          doctest::Approx(expected).epsilon(1e-13));
    CHECK(interaction_speed(st, sp, beta) ==
          doctest::Approx(max_qfi_qubit(st, eps, beta) / (eps * eps))
              .epsilon(1e-13));
}

TEST_CASE("energy step profiles mirror each other") {
    const EnergySpectrum sp({0.0, 1.0, 3.0});
    const double beta = 0.5;
    const auto [fwd, rev] = build_energy_steps(sp, beta);
    CHECK(fwd.domain_length() ==
          doctest::Approx(sp.partition_function(beta)).epsilon(1e-15));
    const double L = fwd.domain_length();
    for (double x : {0.01, 0.2, 0.5, 0.9 * L}) {
        CHECK(fwd.value_at(x) == rev.value_at(L - x));
    }
    // tallest level first, nonincreasing
    CHECK(fwd.value_at(1e-12) == 3.0);
    CHECK(fwd.value_at(L - 1e-9) == 0.0);
}
