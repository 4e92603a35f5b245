#include "aokr/gaussian.hpp"

#include <cmath>
#include <numbers>

#include "aokr/error.hpp"

namespace aokr {

namespace {

constexpr double pi = std::numbers::pi;

void set_phi(EllipseState& s, double unwrapped) {
    const double turns = std::floor(unwrapped / constants::two_pi);
    s.phi_turns = static_cast<std::int64_t>(turns);
    s.phi = unwrapped - constants::two_pi * turns;
    if (s.phi >= constants::two_pi) {
        s.phi -= constants::two_pi;
        ++s.phi_turns;
    }
}

ClampedProbability clamp(double s) {
    if (!std::isfinite(s) || s < survival_floor) return {0.0, true};
    return {s, false};
}

}  // namespace

EllipseState first_pulse(const DimensionlessConfig& dcfg) {
    if (!dcfg.resonant)
        throw UnsupportedConfiguration("Gaussian recursion is only defined for resonant light (detuning = 0)");
    if (!(dcfg.sigma_theta > 0.0)) throw ConfigError("sigma_theta must be > 0");

    // Uniform density 1/(2 pi) times the mask exp(-(theta-pi)^2/sigma^2),
    // then one free flight: theta -> theta + J + drift shears the ellipse (alpha = 1).
    EllipseState s;
    s.survival = dcfg.sigma_theta / (2.0 * std::sqrt(pi));
    s.j_mean = 0.0;
    s.alpha = 1.0;
    s.sigma_h = dcfg.sigma_theta;
    set_phi(s, pi + drift_angle(dcfg.ell, dcfg.beta));
    s.pulses_applied = 1;
    return s;
}

EllipseState recurse(const EllipseState& state, const DimensionlessConfig& dcfg) {
    const double eps2 = dcfg.epsilon * dcfg.epsilon;
    const double st2 = dcfg.sigma_theta * dcfg.sigma_theta;
    const double sh2 = state.sigma_h * state.sigma_h;
    const double alpha = state.alpha;
    const double jm = state.j_mean;
    const double phi = state.unwrapped_phi();

    const double d = sh2 * st2 + sh2 * sh2 + alpha * alpha * eps2;
    const double centre = phi + alpha * jm - pi;  // ellipse centre relative to the mask node

    EllipseState next = state;
    next.pulses_applied = state.pulses_applied + 1;

    // Survival.
    auto s = clamp(state.survival * std::sqrt(sh2 * st2 / d) * std::exp(-sh2 * centre * centre / d));
    next.survival = s.value;
    next.clamped = state.clamped || s.clamped;

    // Width along theta (unchanged by free flight).
    const double sh2_next = st2 * d / (2.0 * sh2 * st2 + st2 * st2 + sh2 * sh2 + alpha * alpha * eps2);
    next.sigma_h = std::sqrt(sh2_next);

    // Intercept and inverse slope after the pulse, then the free-flight shifts.
    const double phi_a = sh2_next * ((phi * (st2 + sh2) + jm * alpha * sh2) / d + pi / st2);
    const double alpha_a = alpha * sh2_next * st2 / d;
    set_phi(next, phi_a + drift_angle(dcfg.ell, dcfg.beta));
    next.alpha = alpha_a + 1.0;

    // Mean momentum (unchanged by free flight).
    next.j_mean = eps2 * alpha_a * phi_a / (sh2_next * sh2_next) +
                  st2 * (sh2 * sh2 * jm - eps2 * alpha * phi) / (sh2_next * d);
    return next;
}

ClampedProbability survival_analytic_eps0(int n, double beta, int ell, double sigma_theta) {
    if (n < 1) throw ConfigError("closed form needs at least one pulse");
    if (!(sigma_theta > 0.0)) throw ConfigError("sigma_theta must be > 0");
    const double dphi = drift_angle(ell, beta);
    const double nn = n;
    const double exponent = -dphi * dphi * (nn - 1.0) * nn * (nn + 1.0) / (12.0 * sigma_theta * sigma_theta);
    return clamp(sigma_theta / (2.0 * std::sqrt(pi * nn)) * std::exp(exponent));
}

SurvivalSeries run_recursion(const DimensionlessConfig& dcfg, int kicks) {
    if (kicks < 0) throw ConfigError("kicks must be >= 0");
    SurvivalSeries series;
    series.values.push_back(1.0);
    if (kicks == 0) return series;
    auto state = first_pulse(dcfg);
    series.values.push_back(state.survival);
    for (int k = 1; k < kicks; ++k) {
        state = recurse(state, dcfg);
        series.values.push_back(state.survival);
    }
    return series;
}

}  // namespace aokr
