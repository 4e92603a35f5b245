#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "aokr/error.hpp"
#include "aokr/grating.hpp"
#include "aokr/pseudoclassical.hpp"
#include "oracles.hpp"

using namespace aokr;

namespace {

constexpr double pi = oracle::pi;

DimensionlessConfig config_for(const PhysicalConfig& p, double beta, double eps) {
    auto d = derive_dimensionless(p, beta);
    d.epsilon = eps;
    return d;
}

}  // namespace

TEST_CASE("stratified initial ensemble") {
    const auto ens = init_ensemble(1000, 0.2, 0.5, 9);
    REQUIRE(ens.size() == 1000);
    CHECK(ens.j.size() == 1000);
    CHECK(ens.s.size() == 1000);
    const double cell = 2.0 * pi / 1000.0;
    for (std::size_t i = 0; i < ens.size(); ++i) {
        CHECK(ens.theta[i] >= cell * i);
        CHECK(ens.theta[i] < cell * (i + 1));
        CHECK(ens.j[i] == 0.5);
        CHECK(ens.s[i] == 1.0);
    }
    CHECK(ens.kick_index == 0);
    const auto est = survival_estimate(ens);
    CHECK(est.mean == 1.0);
    CHECK(est.std_error == 0.0);
    CHECK_THROWS_AS(init_ensemble(0, 0.0, 0.0, 1), ConfigError);
}

TEST_CASE("survival estimate of fixed weights") {
    Ensemble ens;
    ens.theta = {0.0, 1.0};
    ens.j = {0.0, 0.0};
    ens.s = {1.0, 0.0};
    const auto est = survival_estimate(ens);
    CHECK(est.mean == 0.5);
    CHECK(est.std_error == doctest::Approx(0.5));
    CHECK(est.trajectories == 2);
}

TEST_CASE("single step applies the mask") {
    const PhysicalConfig p;
    const double sig = oracle::sigma_theta(p.omega_rabi, p.gamma, p.pulse_duration);
    const auto prof = harmonic_profile(p, 65536);
    const auto d = config_for(p, 0.0, 0.0);

    Ensemble ens;
    ens.theta = {pi, pi + sig, pi - sig};
    ens.j = {0.0, 0.0, 0.0};
    ens.s = {1.0, 1.0, 1.0};
    step(ens, prof, d);
    CHECK(ens.s[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(ens.s[1] - std::exp(-1.0)) < 1e-6);
    CHECK(std::abs(ens.s[2] - std::exp(-1.0)) < 1e-6);
    CHECK(ens.kick_index == 1);
    // A trajectory sitting on the node at resonance stays there.
    for (int k = 0; k < 20; ++k) step(ens, prof, d);
    CHECK(ens.s[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ens.theta[0] == doctest::Approx(pi).epsilon(1e-12));

    // Stratification makes the first-kick survival essentially exact.
    auto big = init_ensemble(100000, 0.0, 0.0, 3);
    step(big, prof, d);
    CHECK(std::abs(survival_estimate(big).mean - sig / (2.0 * std::sqrt(pi))) < 1e-6);
}

TEST_CASE("map survival follows the closed form at resonance") {
    const PhysicalConfig p;
    const double sig = oracle::sigma_theta(p.omega_rabi, p.gamma, p.pulse_duration);
    const auto prof = harmonic_profile(p);
    const auto series = run_map(default_trajectories, 0.0, 0.0, 11, prof, config_for(p, 0.0, 0.0), 7, {true, 0});
    REQUIRE(series.values.size() == 8);
    CHECK(series.values[0] == 1.0);
    for (int n = 1; n <= 7; ++n) {
        INFO("n = " << n);
        CHECK(std::abs(series.values[n] - oracle::survival_eps0(n, 0.0, 2, sig)) < 3.0 * series.std_errors[n] + 1e-12);
        CHECK(series.values[n] <= series.values[n - 1]);
    }
    CHECK(std::abs(series.final_value() - 0.02456) < 3.0 * series.final_std_error() + 1e-5);
}

TEST_CASE("zero kicks") {
    const PhysicalConfig p;
    const auto prof = harmonic_profile(p);
    const auto series = run_map(100, 0.0, 0.0, 1, prof, config_for(p, 0.0, 0.1), 0);
    CHECK(series.values == std::vector<double>{1.0});
    CHECK_THROWS_AS(run_map(100, 0.0, 0.0, 1, prof, config_for(p, 0.0, 0.1), -2), ConfigError);
}

TEST_CASE("per-trajectory survival never grows") {
    PhysicalConfig p;
    p.detuning = p.gamma;
    const auto prof = build_profile(p, 4096);
    auto ens = init_ensemble(5000, 0.0, 0.0, 5);
    const auto d = config_for(p, 0.0, 0.07);
    for (int k = 0; k < 7; ++k) {
        const auto before = ens.s;
        step(ens, prof, d);
        for (std::size_t i = 0; i < ens.size(); ++i) {
            CHECK(ens.s[i] <= before[i]);
            CHECK(ens.s[i] >= 0.0);
            CHECK(ens.theta[i] >= 0.0);
            CHECK(ens.theta[i] < 2.0 * pi);
        }
    }
}

TEST_CASE("determinism across runs and worker counts") {
    PhysicalConfig p;
    p.detuning = p.gamma;
    const auto prof = build_profile(p, 4096);
    const auto d = config_for(p, 0.1, -0.06);
    const auto a = run_map(20000, 0.1, 0.0, 42, prof, d, 7, {true, 1});
    const auto b = run_map(20000, 0.1, 0.0, 42, prof, d, 7, {true, 1});
    const auto c = run_map(20000, 0.1, 0.0, 42, prof, d, 7, {true, 5});
    CHECK(a.values == b.values);
    CHECK(a.values == c.values);
    CHECK(a.std_errors == c.std_errors);
    const auto other = run_map(20000, 0.1, 0.0, 43, prof, d, 7, {true, 1});
    CHECK(other.values != a.values);
}

TEST_CASE("quasimomentum periodicity is exact for dyadic beta") {
    const PhysicalConfig p;
    const auto prof = harmonic_profile(p);
    for (double beta : {0.125, 0.3125}) {
        auto a = init_ensemble(4000, beta, 0.0, 8);
        auto b = init_ensemble(4000, beta + 0.5, 0.0, 8);
        const auto da = config_for(p, beta, 0.05);
        const auto db = config_for(p, beta + 0.5, 0.05);
        for (int k = 0; k < 7; ++k) {
            step(a, prof, da);
            step(b, prof, db);
        }
        CHECK(a.theta == b.theta);
        CHECK(a.j == b.j);
        CHECK(a.s == b.s);
    }
}

TEST_CASE("epsilon sign symmetry at resonance") {
    const PhysicalConfig p;
    const auto prof = harmonic_profile(p);
    for (double eps : {0.02, 0.05, 0.1}) {
        const auto plus = run_map(100000, 0.0, 0.0, 21, prof, config_for(p, 0.0, eps), 7, {true, 0});
        const auto minus = run_map(100000, 0.0, 0.0, 77, prof, config_for(p, 0.0, -eps), 7, {true, 0});
        const double err = std::hypot(plus.final_std_error(), minus.final_std_error());
        CHECK(std::abs(plus.final_value() - minus.final_value()) < 3.0 * err);
    }
}

TEST_CASE("dropping the random kick changes nothing at epsilon = 0") {
    const PhysicalConfig p;
    const auto prof = harmonic_profile(p);
    const auto d = config_for(p, 0.0, 0.0);
    const auto with = run_map(10000, 0.0, 0.0, 4, prof, d, 7, {true, 1});
    const auto without = run_map(10000, 0.0, 0.0, 4, prof, d, 7, {false, 1});
    CHECK(with.values == without.values);
}

TEST_CASE("pure phase kicks reduce to the standard map") {
    const std::size_t n = 4096;
    const double k = 10.0;
    std::vector<complex> g(n);
    for (std::size_t j = 0; j < n; ++j) g[j] = std::polar(1.0, -k * std::cos(2.0 * pi * j / n));
    const auto prof = GratingProfile::from_values(g, KickDistribution::analytic(0.0));
    const PhysicalConfig p;
    const auto d = config_for(p, 0.0, 0.05);

    auto ens = init_ensemble(2000, 0.0, 0.0, 2);
    auto ref = ens;
    for (int step_no = 0; step_no < 10; ++step_no) {
        step(ens, prof, d);
        for (std::size_t i = 0; i < ref.size(); ++i) {
            ref.j[i] += d.epsilon * k * std::sin(ref.theta[i]);
            ref.theta[i] = std::fmod(ref.theta[i] + ref.j[i] + 2.0 * pi, 2.0 * pi);
        }
    }
    double max_j = 0.0, max_diff = 0.0;
    for (std::size_t i = 0; i < ens.size(); ++i) {
        max_j = std::max(max_j, std::abs(ens.j[i]));
        max_diff = std::max(max_diff, std::abs(ens.j[i] - ref.j[i]));
        CHECK(ens.s[i] == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(max_j < 10.0);
    CHECK(max_diff < 1e-3);
}
