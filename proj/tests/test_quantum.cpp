#include <doctest.h>

#include <cmath>
#include <vector>

#include "aokr/error.hpp"
#include "aokr/grating.hpp"
#include "aokr/quantum.hpp"
#include "oracles.hpp"

using namespace aokr;

namespace {

constexpr double pi = oracle::pi;

DimensionlessConfig resonant(double beta = 0.0, double eps = 0.0, int kicks = 7) {
    PhysicalConfig p;
    auto d = derive_dimensionless(p, beta);
    d.epsilon = eps;
    d.kicks = kicks;
    return d;
}

GratingProfile constant_profile(std::size_t n, complex value) {
    return GratingProfile::from_values(std::vector<complex>(n, value), KickDistribution::analytic(0.0));
}

}  // namespace

TEST_CASE("plane wave initial state") {
    const auto s = init_plane_wave(0.0, 128);
    CHECK(s.amplitudes().size() == 257);
    CHECK(s.norm() == 1.0);
    CHECK(s.at(0) == complex(1.0));
    CHECK(s.tail_mass() == 0.0);
    const auto t = init_plane_wave(0.3, 128);
    CHECK(t.beta() == 0.3);
    CHECK(t.norm() == 1.0);
    CHECK_THROWS_AS(QuantumState(0.0, 0), ConfigError);
    CHECK(quantum_grid_size(128) == 4096);
    CHECK(quantum_grid_size(32) == 1024);
}

TEST_CASE("identity grating leaves the state unchanged") {
    auto s = init_plane_wave(0.0, 16);
    s.at(1) = {0.2, -0.1};
    s.at(-3) = {0.0, 0.3};
    const auto out = apply_kick(s, constant_profile(quantum_grid_size(16), 1.0));
    for (int n = -16; n <= 16; ++n) CHECK(std::abs(out.at(n) - s.at(n)) < 1e-12);
}

TEST_CASE("single kick survival is the mean of the mask") {
    const PhysicalConfig p;
    const double sig = oracle::sigma_theta(p.omega_rabi, p.gamma, p.pulse_duration);
    const auto prof = harmonic_profile(p, quantum_grid_size(128));
    const auto out = apply_kick(init_plane_wave(0.0, 128), prof);
    CHECK(std::abs(out.norm() - sig / (2.0 * std::sqrt(pi))) < 1e-12);
    CHECK(std::abs(out.norm() - 0.06497) < 1e-4);
}

TEST_CASE("kick matches a brute-force convolution") {
    const PhysicalConfig p;
    const int n_max = 32;
    const auto prof = harmonic_profile(p, quantum_grid_size(n_max));
    const std::vector<complex> g(prof.values().begin(), prof.values().end());
    const auto coeff = oracle::fourier_coefficients(g, 2 * n_max);

    // Plane wave: the kicked amplitudes are the Fourier coefficients of A,
    // a Gaussian in n with standard deviation 1/(sqrt(2) sigma_theta) in |c_n|^2.
    const auto once = apply_kick(init_plane_wave(0.0, n_max), prof);
    for (int n = -n_max; n <= n_max; ++n) CHECK(std::abs(once.at(n) - coeff[n + 2 * n_max]) < 1e-12);
    double m2 = 0.0;
    for (int n = -n_max; n <= n_max; ++n) m2 += n * n * std::norm(once.at(n));
    const double sig = oracle::sigma_theta(p.omega_rabi, p.gamma, p.pulse_duration);
    CHECK(std::sqrt(m2 / once.norm()) == doctest::Approx(1.0 / (std::sqrt(2.0) * sig)).epsilon(1e-6));

    // A spread state after a free flight.
    auto dcfg = resonant(0.2, 0.07);
    const auto spread = apply_free(once, dcfg);
    const std::vector<complex> c(spread.amplitudes().begin(), spread.amplitudes().end());
    const auto expect = oracle::convolve(coeff, c, n_max);
    const auto twice = apply_kick(spread, prof);
    for (int n = -n_max; n <= n_max; ++n) CHECK(std::abs(twice.at(n) - expect[n + n_max]) < 1e-12);
}

TEST_CASE("free flight phases") {
    auto s = QuantumState(0.0, 8);
    for (int n = -8; n <= 8; ++n) s.at(n) = std::polar(0.2, 0.3 * n);

    SUBCASE("full Talbot revival") {
        const auto out = apply_free(s, resonant(0.0, 0.0));
        for (int n = -8; n <= 8; ++n) CHECK(std::abs(out.at(n) - s.at(n)) < 1e-12);
    }
    SUBCASE("half Talbot alternates sign") {
        auto d = resonant(0.0, 0.0);
        d.ell = 1;
        const auto out = apply_free(s, d);
        for (int n = -8; n <= 8; ++n) CHECK(std::abs(out.at(n) - (n % 2 ? -1.0 : 1.0) * s.at(n)) < 1e-12);
    }
    SUBCASE("direct substitution") {
        auto unit = QuantumState(0.25, 8);
        unit.at(3) = 1.0;
        const auto out = apply_free(unit, resonant(0.25, 0.1));
        const double phase = -(0.1 * 9.0 / 2.0 + 9.0 * pi);
        CHECK(std::abs(out.at(3) - std::polar(1.0, phase)) < 1e-12);
    }
    SUBCASE("norm preserved") {
        for (double eps : {0.0, 0.013, -0.2, 1.7}) {
            const auto out = apply_free(s, resonant(0.37, eps));
            CHECK(std::abs(out.norm() - s.norm()) < 1e-12);
        }
    }
}

TEST_CASE("resonant evolution reproduces the closed form") {
    const PhysicalConfig p;
    const double sig = oracle::sigma_theta(p.omega_rabi, p.gamma, p.pulse_duration);
    const auto prof = harmonic_profile(p, quantum_grid_size(128));
    for (double beta : {0.0, 0.5}) {
        auto s = init_plane_wave(beta, 128);
        const auto series = evolve(s, prof, resonant(beta), 7);
        REQUIRE(series.values.size() == 8);
        CHECK(series.values[0] == 1.0);
        for (int n = 1; n <= 7; ++n)
            CHECK(std::abs(series.values[n] - oracle::survival_eps0(n, beta, 2, sig)) < 1e-10);
        CHECK(std::abs(series.final_value() - 0.02456) < 1e-5);
    }
}

TEST_CASE("survival series is nonincreasing") {
    PhysicalConfig p;
    for (double det : {0.0, 1.0}) {
        p.detuning = det * p.gamma;
        const auto prof = build_profile(p, quantum_grid_size(128));
        for (double eps : {-0.15, 0.0, 0.08}) {
            auto d = derive_dimensionless(p, 0.1);
            d.epsilon = eps;
            auto s = init_plane_wave(0.1, 128);
            const auto series = evolve(s, prof, d, 7);
            for (std::size_t i = 1; i < series.values.size(); ++i) CHECK(series.values[i] <= series.values[i - 1] + 1e-15);
        }
    }
}

TEST_CASE("quasimomentum periodicity") {
    const PhysicalConfig p;
    const auto prof = build_profile(p, quantum_grid_size(128));
    for (int ell : {1, 2, 3}) {
        for (double beta : {0.05, 0.21}) {
            auto a = resonant(beta, 0.04);
            a.ell = ell;
            auto b = a;
            b.beta = std::fmod(beta + 1.0 / ell, 1.0);
            auto sa = init_plane_wave(a.beta, 128);
            auto sb = init_plane_wave(b.beta, 128);
            CHECK(std::abs(evolve(sa, prof, a, 7).final_value() - evolve(sb, prof, b, 7).final_value()) < 1e-10);
        }
    }
}

TEST_CASE("ladder truncation has converged") {
    PhysicalConfig p;
    for (double det : {0.0, 1.0}) {
        p.detuning = det * p.gamma;
        for (double eps : {0.0, 0.1, -0.2}) {
            auto d = derive_dimensionless(p, 0.0);
            d.epsilon = eps;
            const auto a = run_quantum(p, d, ProfileModel::exact, 128);
            const auto b = run_quantum(p, d, ProfileModel::exact, 256);
            CHECK(a.n_max == 128);
            CHECK(std::abs(a.series.final_value() - b.series.final_value()) < 1e-8);
            CHECK(a.momentum_distribution.size() == 257);
        }
    }
}

TEST_CASE("pure phase grating never absorbs") {
    const std::size_t n = quantum_grid_size(64);
    std::vector<complex> g(n);
    for (std::size_t j = 0; j < n; ++j) g[j] = std::polar(1.0, -0.8 * std::cos(2.0 * pi * j / n));
    const auto prof = GratingProfile::from_values(g, KickDistribution::analytic(0.0));
    auto s = init_plane_wave(0.0, 64);
    const auto series = evolve(s, prof, resonant(0.13, 0.02, 10), 10);
    for (double v : series.values) CHECK(std::abs(v - 1.0) < 1e-12);
}

TEST_CASE("zero kicks and errors") {
    const PhysicalConfig p;
    const auto prof = harmonic_profile(p, quantum_grid_size(16));
    auto s = init_plane_wave(0.0, 16);
    const auto series = evolve(s, prof, resonant(), 0);
    CHECK(series.values == std::vector<double>{1.0});
    CHECK_THROWS_AS(evolve(s, prof, resonant(), -1), ConfigError);
    auto big = init_plane_wave(0.0, 128);
    CHECK_THROWS_AS(apply_kick(big, prof), ResolutionError);

    // A flat-spectrum grating pushes mass to the ladder edge.
    std::vector<complex> spike(quantum_grid_size(16), 0.0);
    spike[0] = 1.0;
    const auto bad = GratingProfile::from_values(spike, KickDistribution::analytic(0.0));
    try {
        apply_kick(init_plane_wave(0.0, 16), bad);
        FAIL("expected AliasingError");
    } catch (const AliasingError& e) {
        CHECK(e.tail_mass() > tail_mass_limit);
    }
}
