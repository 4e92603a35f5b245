#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <numbers>
#include <string>

namespace aokr {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double rb85_mass = 84.911789738 * atomic_mass_unit;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
}  // namespace constants

/// Laboratory-frame parameters of the pulsed standing wave (SI units,
/// angular frequencies in rad/s).
///
/// Defaults are the 85Rb / 780 nm parameters: Gamma = 2 pi 6 MHz,
/// Omega = 2 Gamma, 500 ns pulses, resonant light, seven kicks at the
/// full Talbot time (ell = 2).
struct PhysicalConfig {
    double mass = constants::rb85_mass;
    double k_l = constants::two_pi / 780e-9;
    double omega_rabi = 2.0 * constants::two_pi * 6e6;
    double detuning = 0.0;
    double gamma = constants::two_pi * 6e6;
    double pulse_duration = 500e-9;
    double period_offset = 0.0;
    int ell = 2;
    int kicks = 7;

    /// Throws ConfigError when an invariant is violated.
    void validate() const;
};

/// Kicked-rotor quantities consumed by every engine.
struct DimensionlessConfig {
    double epsilon = 0.0;
    int ell = 2;
    double beta = 0.0;
    double sigma_theta = 0.0;
    double sigma_j = 0.0;
    int kicks = 0;
    bool resonant = true;  ///< detuning == 0, i.e. the harmonic model applies
};

DimensionlessConfig derive_dimensionless(const PhysicalConfig& phys, double beta);

/// pi M / (hbar k_l^2): free evolution over ell * T_T / 2 multiplies
/// momentum state n by exp(-i pi ell n^2).
double talbot_time(const PhysicalConfig& phys);

/// 4 hbar k_l^2 / M, the factor converting a period offset into epsilon.
double epsilon_rate(const PhysicalConfig& phys);

/// Period offset that produces the requested epsilon.
double period_offset_for_epsilon(const PhysicalConfig& phys, double epsilon);

/// Width of the resonant mask s(theta) = exp(-(theta - pi)^2 / sigma_theta^2).
double mask_width(const PhysicalConfig& phys);

/// (4 hbar k_l^2 / M) t; kicks stop being instantaneous once this is not small.
double raman_nath_parameter(const PhysicalConfig& phys);
inline constexpr double raman_nath_warning_threshold = 0.1;
bool raman_nath_violated(const PhysicalConfig& phys);

/// Free-flight drift pi ell (1 + 2 beta) reduced to (-pi, pi].
double drift_angle(int ell, double beta);

/// Reduce an angle to [0, 2 pi).
double wrap_two_pi(double angle);

// Flat `key = value` configuration files ('#' starts a comment).
using KeyValueMap = std::map<std::string, std::string>;

KeyValueMap parse_key_value(std::istream& in);
KeyValueMap load_key_value_file(const std::string& path);

/// Apply a recognised PhysicalConfig key; returns false for unknown keys.
/// Keys: mass, k_l, omega_rabi, detuning, gamma, pulse_duration,
/// period_offset, ell, kicks.
bool apply_physical_key(PhysicalConfig& phys, const std::string& key, const std::string& value);

}  // namespace aokr
