#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "thermetry/errors.hpp"
#include "thermetry/optical.hpp"

using namespace thermetry;

TEST_CASE("boltzmann ratio domain") {
    CHECK_THROWS_AS(BoltzmannRatio(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(BoltzmannRatio(1.1), std::invalid_argument);
    CHECK(BoltzmannRatio(0.5).mean_n() == doctest::Approx(1.0));
    CHECK_THROWS_AS((void)BoltzmannRatio(1.0).mean_n(), std::domain_error);
}

TEST_CASE("number-state coherence is (1+r) n + r") {
    for (int n : {0, 1, 2, 5, 9}) {
        const PhotonDistribution p = PhotonDistribution::fock(n);
        CHECK(p.mean() == doctest::Approx(static_cast<double>(n)));
        CHECK(p.exact_support());
        CHECK(p.tail_bound() == 0.0);
        for (double rv : {0.0, 0.3, 1.0}) {
            const BoltzmannRatio r(rv);
            const double expected = (1.0 + rv) * n + rv;
            CHECK(latent_coherence(p, r) ==
                  doctest::Approx(expected).epsilon(1e-14));
        }
    }
}

TEST_CASE("thermal state at its own background ratio has zero coherence") {
    for (double rs : {0.2, 0.5, 0.8}) {
        const PhotonDistribution p = PhotonDistribution::thermal(rs);
        CHECK(latent_coherence(p, BoltzmannRatio(rs)) == 0.0);
    }
}

TEST_CASE("thermal-state coherence matches the closed form") {
    for (double rs : {0.1, 0.35, 0.6}) {
        const PhotonDistribution p = PhotonDistribution::thermal(rs);
        for (double rv : {0.0, 0.25, 0.5, 0.9, 1.0}) {
            const double closed =
                (rs - rv) * (rs - rv) / ((rs + rv) * (1.0 - rs));
            const double series = latent_coherence(p, BoltzmannRatio(rv));
            if (rs == rv) continue;
            CHECK(series == doctest::Approx(closed).epsilon(1e-10));
        }
    }
}

TEST_CASE("poisson distribution moments") {
    const double lambda = 3.7;
    const PhotonDistribution p = PhotonDistribution::poisson(lambda);
    CHECK(p.mean() == doctest::Approx(lambda).epsilon(1e-12));
    CHECK(p.variance() == doctest::Approx(lambda).epsilon(1e-10));
    CHECK(q_parameter(p) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(p.falling_moment(2) ==
          doctest::Approx(lambda * lambda).epsilon(1e-10));
    CHECK_THROWS_AS((void)PhotonDistribution::poisson(600.0),
                    std::invalid_argument);
}

TEST_CASE("explicit distributions must be normalized") {
    CHECK_THROWS_AS((void)PhotonDistribution::from_probs({0.5, 0.4}),
                    std::invalid_argument);
    const PhotonDistribution p = PhotonDistribution::from_probs({0.25, 0.75});
    CHECK(p.mean() == doctest::Approx(0.75));
    CHECK(p.exact_support());
}

TEST_CASE("mixing preserves normalization and mixes moments") {
    const PhotonDistribution a = PhotonDistribution::fock(2);
    const PhotonDistribution b = PhotonDistribution::thermal(0.4);
    const PhotonDistribution m = PhotonDistribution::mix(a, b, 0.3);
    CHECK(m.mean() ==
          doctest::Approx(0.3 * a.mean() + 0.7 * b.mean()).epsilon(1e-12));
    CHECK_FALSE(m.exact_support());
    CHECK(m.tail_bound() < 1e-12);
}

TEST_CASE("trade-off identity on random truncated distributions") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 1 + rep % 12;
        std::vector<double> probs(static_cast<std::size_t>(n) + 1);
        double s = 0.0;
        for (auto& v : probs) {
            v = u(rng);
            s += v;
        }
        for (auto& v : probs) v /= s;
        const PhotonDistribution p = PhotonDistribution::from_probs(probs);
        for (double rv : {0.1, 0.5, 0.9, 1.0}) {
            CHECK(std::abs(tradeoff_check(p, BoltzmannRatio(rv))) <= 1e-10);
        }
    }
}

TEST_CASE("witness bounds are ordered and fock states violate the lower one") {
    const BoltzmannRatio r(0.4);
    CHECK(classical_witness_bound(2.0, r) == doctest::Approx(0.6 * 2.0 + 0.4));
    CHECK(all_states_bound(2.0, r) == doctest::Approx(1.4 * 2.0 + 0.4));
    for (int n : {1, 2, 6}) {
        const WitnessReport rep =
            run_classical_witness(PhotonDistribution::fock(n), r);
        CHECK(rep.fired);
        CHECK(rep.coherence <= rep.all_states_bound + 1e-12);
        CHECK(rep.coherence > rep.classical_bound);
    }
    // vacuum saturates both bounds without firing
    const WitnessReport vac =
        run_classical_witness(PhotonDistribution::fock(0), r);
    CHECK_FALSE(vac.fired);
}

TEST_CASE("classical families never fire the witness") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 25; ++rep) {
        const PhotonDistribution pois =
            PhotonDistribution::poisson(0.2 + 8.0 * u(rng));
        const PhotonDistribution th =
            PhotonDistribution::thermal(0.85 * u(rng));
        const PhotonDistribution m = PhotonDistribution::mix(pois, th, u(rng));
        for (double rv : {0.25, 0.5, 1.0}) {
            CHECK_FALSE(run_classical_witness(m, BoltzmannRatio(rv)).fired);
        }
    }
}

TEST_CASE("order-k coherence reduces to the latent coherence at k = 1") {
    const PhotonDistribution p = PhotonDistribution::poisson(2.5);
    for (double rv : {0.2, 0.7}) {
        const BoltzmannRatio r(rv);
        CHECK(generalized_coherence_k(p, r, 1) ==
              doctest::Approx(latent_coherence(p, r)).epsilon(1e-13));
        CHECK(generalized_coherence_k(p, r, 2) <=
              generalized_classical_bound(p, r, 2) + 1e-10);
    }
}

TEST_CASE("poisson coherence via the integral representation") {
    for (double lambda : {0.5, 2.0, 10.0}) {
        const PhotonDistribution p = PhotonDistribution::poisson(lambda);
        for (double rv : {0.2, 0.5, 1.0}) {
            const BoltzmannRatio r(rv);
            const double integral = poisson_coherence(lambda, r);
            const double series = latent_coherence(p, r);
            CHECK(std::abs(integral - series) <= 1e-8);
        }
    }
    // r = 0 short-circuits to the mean
    CHECK(poisson_coherence(3.0, BoltzmannRatio(0.0)) == 3.0);
    // lambda >> 1 at r = 1: C -> 1/2
    CHECK(std::abs(poisson_coherence(100.0, BoltzmannRatio(1.0)) - 0.5) <=
          0.01);
}

TEST_CASE("illumination qfi at vanishing background occupation") {
    const PhotonDistribution p = PhotonDistribution::poisson(1.5);
    CHECK(illumination_qfi_zero_ratio(p) ==
          doctest::Approx(4.0 * (p.mean() + 1.0)).epsilon(1e-14));
    // distinct from the illuminance at r = 0, which vanishes identically
    CHECK(illuminance(p, BoltzmannRatio(0.0)) == 0.0);
}

TEST_CASE("optimal-measurement weights vanish on a matched thermal state") {
    const double rs = 0.45;
    const PhotonDistribution p = PhotonDistribution::thermal(rs);
    const std::vector<double> w = sld_weights(p, BoltzmannRatio(rs));
    REQUIRE(w.size() == static_cast<std::size_t>(p.n_max()) + 1);
    // every weight inside the truncated support cancels; the final entry
    // compares r p_N against the vacuum beyond the edge and is -1
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        CHECK(std::abs(w[i]) < 1e-14);
    CHECK(w.back() == -1.0);
    // fock states give unit weights at the support edges
    const std::vector<double> wf =
        sld_weights(PhotonDistribution::fock(2), BoltzmannRatio(0.5));
    CHECK(wf[1] == 1.0);  // p_2 against r p_1 = 0
    CHECK(wf[2] == -1.0); // p_3 = 0 against r p_2
}

TEST_CASE("two-mode covariance closed forms") {
    // coherent light against a background of equal occupation: -1/4
    const double lambda = 2.0;
    const PhotonDistribution p = PhotonDistribution::poisson(lambda);
    const BoltzmannRatio r(lambda / (1.0 + lambda));
    CHECK(two_mode_covariance(p, r) == doctest::Approx(-0.25).epsilon(1e-10));
    // strongly bunched light: Var = 9 >= mean (mean + 1) = 2
    std::vector<double> bunched(11, 0.0);
    bunched[0] = 0.9;
    bunched[10] = 0.1;
    CHECK_FALSE(negative_covariance_achievable(
        PhotonDistribution::from_probs(bunched)));
    CHECK(negative_covariance_achievable(PhotonDistribution::fock(2)));
    CHECK(negative_covariance_achievable(p));
    // both arms in vacuum is degenerate
    CHECK_THROWS_AS(
        (void)two_mode_covariance(PhotonDistribution::fock(0),
                                  BoltzmannRatio(0.0)),
        std::domain_error);
}

TEST_CASE("phase qfi scales with the squared energy quantum") {
    const PhotonDistribution p = PhotonDistribution::fock(3);
    const BoltzmannRatio r(0.5);
    const double base = optical_phase_qfi(p, r, 1.0);
    CHECK(optical_phase_qfi(p, r, 2.0) ==
          doctest::Approx(4.0 * base).epsilon(1e-15));
    // (n_r + 1) C_r with n_r = 1
    CHECK(base ==
          doctest::Approx(2.0 * latent_coherence(p, r)).epsilon(1e-14));
    // the interaction-speed limit is the same quantity at unit scale
    CHECK(optical_interaction_speed(p, r) == base);
}

TEST_CASE("thermal beam coherence peaks between the reference temperatures") {
    const double tb = 300.0, ts = 3000.0;
    std::vector<double> grid;
    for (int i = 0; i < 120; ++i)
        grid.push_back(5e-6 + (1e-4 - 5e-6) * i / 119.0);
    const BeamScanResult res = thermal_beam_scan(tb, ts, grid);
    CHECK(res.best_coherence > 2.0);
    CHECK(res.best_wavelength > grid.front());
    CHECK(res.best_wavelength < grid.back());
    // equal temperatures: nothing to sense
    for (double lam : grid)
        CHECK(thermal_beam_coherence(tb, tb, lam) == 0.0);
    // a source colder than the background is still a well-defined coherence,
    // but the peak scan models a hot source and refuses the reversed order
    CHECK(thermal_beam_coherence(3000.0, 300.0, 1e-5) > 0.0);
    CHECK_THROWS_AS((void)thermal_beam_scan(3000.0, 300.0, grid),
                    std::invalid_argument);
}

TEST_CASE("loose truncation is caught at witness time") {
    const PhotonDistribution p = PhotonDistribution::thermal(0.9, 1e-4);
    CHECK_THROWS_AS((void)run_classical_witness(p, BoltzmannRatio(0.5)),
                    CertificationError);
}
