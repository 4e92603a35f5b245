#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "aokr/grating.hpp"
#include "aokr/params.hpp"
#include "aokr/survival.hpp"

namespace aokr {

/// Amplitudes on the momentum ladder n in [-n_max, n_max] at fixed
/// quasimomentum beta. The squared norm is the survival probability.
class QuantumState {
public:
    QuantumState(double beta, int n_max);

    double beta() const noexcept { return beta_; }
    int n_max() const noexcept { return n_max_; }

    std::span<complex> amplitudes() noexcept { return amplitudes_; }
    std::span<const complex> amplitudes() const noexcept { return amplitudes_; }

    complex& at(int n) { return amplitudes_.at(static_cast<std::size_t>(n + n_max_)); }
    const complex& at(int n) const { return amplitudes_.at(static_cast<std::size_t>(n + n_max_)); }

    double norm() const;
    /// Probability carried by |n| > 0.9 n_max.
    double tail_mass() const;
    std::vector<double> probabilities() const;

private:
    double beta_;
    int n_max_;
    std::vector<complex> amplitudes_;
};

inline constexpr int default_n_max = 128;
inline constexpr int max_n_max = 1024;
inline constexpr double tail_mass_limit = 1e-8;

/// Smallest power of two >= 8 (2 n_max + 1).
std::size_t quantum_grid_size(int n_max);

QuantumState init_plane_wave(double beta, int n_max);

/// Multiply by G(theta) in position space. Requires profile.size() >= 8 (2 n_max + 1).
/// Throws AliasingError when the result violates the tail-mass limit.
QuantumState apply_kick(const QuantumState& state, const GratingProfile& profile);

/// exp(-i (eps n^2 / 2 + pi ell n (1 + 2 beta))) on every ladder entry.
QuantumState apply_free(const QuantumState& state, const DimensionlessConfig& dcfg);

/// Kick then free flight, `kicks` times, in place. Records |psi|^2 after each kick.
SurvivalSeries evolve(QuantumState& state, const GratingProfile& profile,
                      const DimensionlessConfig& dcfg, int kicks);

struct QuantumRun {
    SurvivalSeries series;
    std::vector<double> momentum_distribution;  ///< |c_n|^2, n = -n_max..n_max
    int n_max = 0;
};

/// Plane-wave start, doubling n_max (and the profile grid) on AliasingError
/// until max_n_max. `profile`, when given, is used for the first attempt.
QuantumRun run_quantum(const PhysicalConfig& phys, const DimensionlessConfig& dcfg,
                       ProfileModel model, int n_max = default_n_max,
                       const GratingProfile* profile = nullptr);

}  // namespace aokr
