#pragma once

#include <cstdint>

#include "aokr/params.hpp"
#include "aokr/survival.hpp"

namespace aokr {

/// Gaussian ellipse in (theta, J) phase space:
///   rho = S / (pi eps) exp(-sigma_h^2 (J - <J>)^2 / eps^2) exp(-(theta - alpha J - phi)^2 / sigma_h^2)
/// phi is stored in [0, 2 pi); phi_turns counts the 2 pi windings so the
/// recursion can use the continuous intercept.
struct EllipseState {
    double survival = 1.0;
    double j_mean = 0.0;
    double alpha = 0.0;
    double sigma_h = 0.0;
    double phi = 0.0;
    std::int64_t phi_turns = 0;
    int pulses_applied = 0;
    bool clamped = false;  ///< survival fell below survival_floor and was set to 0

    double unwrapped_phi() const noexcept { return phi + constants::two_pi * static_cast<double>(phi_turns); }
};

inline constexpr double survival_floor = 1e-300;

/// The plane wave after one pulse and one free flight.
/// Throws UnsupportedConfiguration unless dcfg.resonant.
EllipseState first_pulse(const DimensionlessConfig& dcfg);

/// Next pulse and free flight.
EllipseState recurse(const EllipseState& state, const DimensionlessConfig& dcfg);

struct ClampedProbability {
    double value = 0.0;
    bool clamped = false;
};

/// Closed-form survival at epsilon = 0 after n >= 1 pulses.
ClampedProbability survival_analytic_eps0(int n, double beta, int ell, double sigma_theta);

/// first_pulse then kicks - 1 recurse calls; [1, S_1, ..., S_kicks].
SurvivalSeries run_recursion(const DimensionlessConfig& dcfg, int kicks);

}  // namespace aokr
