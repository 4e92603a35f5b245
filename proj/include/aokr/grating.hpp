#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "aokr/params.hpp"

namespace aokr {

using complex = std::complex<double>;

/// Eigenvalues (J) of the two-level Hamiltonian without kinetic energy.
/// lambda2 is the long-lived branch: |Im lambda2| <= |Im lambda1|.
struct EigenPair {
    complex lambda1;
    complex lambda2;
};

EigenPair eigenvalues(double x, const PhysicalConfig& cfg);

/// Eigenvalues along a sequence of positions with the square-root sign chosen
/// so both branches vary continuously between neighbouring samples.
std::vector<EigenPair> eigenvalue_branches(std::span<const double> x, const PhysicalConfig& cfg);

/// True when |lambda1 - lambda2| < 1e-8 (|lambda1| + |lambda2|).
bool is_confluent(const EigenPair& eig);

/// Ground-state amplitude after one square pulse of length cfg.pulse_duration.
complex grating_amplitude(double x, const PhysicalConfig& cfg);

/// Distribution of the random diffraction kick. Samples are drawn in reduced
/// units kappa = delta_J / epsilon, so one table serves every epsilon.
class KickDistribution {
public:
    enum class Kind { analytic_gaussian, tabulated };

    static constexpr std::size_t default_bins = 4096;
    static constexpr double span_in_std = 8.0;

    /// Gaussian in kappa with the given standard deviation (>= 0).
    static KickDistribution analytic(double reduced_sigma);

    /// |integral A(theta) exp(-i kappa (theta - pi)) dtheta|^2 on a uniform
    /// periodic grid of amplitudes, tabulated over +-8 standard deviations.
    static KickDistribution tabulate(std::span<const double> amplitude,
                                     std::size_t bins = default_bins);

    Kind kind() const noexcept { return kind_; }
    double reduced_sigma() const noexcept { return reduced_sigma_; }
    double sigma_j(double epsilon) const noexcept { return reduced_sigma_ * std::abs(epsilon); }

    std::span<const double> reduced_grid() const noexcept { return grid_; }
    std::span<const double> cdf() const noexcept { return cdf_; }
    std::vector<double> dj_grid(double epsilon) const;

    /// Cumulative probability of kappa <= k.
    double cdf_at(double k) const;

    /// Maps two uniforms in (0,1) to a reduced kick. Both kinds consume both.
    double sample(double u1, double u2) const;

private:
    Kind kind_ = Kind::analytic_gaussian;
    double reduced_sigma_ = 0.0;
    std::vector<double> grid_;
    std::vector<double> cdf_;
};

/// Single-pulse grating sampled on theta = 2 k_l x in [0, 2 pi). Immutable.
class GratingProfile {
public:
    /// Build from arbitrary samples G(theta_j), theta_j = 2 pi j / N.
    static GratingProfile from_values(std::vector<complex> values, KickDistribution kicks);

    std::size_t size() const noexcept { return values_.size(); }
    double spacing() const noexcept;

    std::span<const double> theta_grid() const noexcept { return theta_; }
    std::span<const complex> values() const noexcept { return values_; }
    std::span<const double> amplitude() const noexcept { return amplitude_; }
    std::span<const double> phase_unwrapped() const noexcept { return phase_; }
    std::span<const double> mask() const noexcept { return mask_; }
    std::span<const double> phase_gradient() const noexcept { return gradient_; }
    const KickDistribution& kicks() const noexcept { return kicks_; }

    /// Number of samples evaluated through the confluent (lambda1 = lambda2) limit.
    std::size_t confluent_points() const noexcept { return confluent_points_; }

    // Linear interpolation at arbitrary theta (any real value, taken mod 2 pi).
    double mask_at(double theta) const noexcept;
    double gradient_at(double theta) const noexcept;

private:
    friend GratingProfile build_profile(const PhysicalConfig&, std::size_t);

    std::vector<double> theta_;
    std::vector<complex> values_;
    std::vector<double> amplitude_;
    std::vector<double> phase_;
    std::vector<double> mask_;
    std::vector<double> gradient_;
    KickDistribution kicks_;
    std::size_t confluent_points_ = 0;
};

/// Exact grating for arbitrary detuning. Kicks are the analytic Gaussian for
/// resonant light, otherwise tabulated from the sampled amplitude.
GratingProfile build_profile(const PhysicalConfig& cfg, std::size_t grid_size);

inline constexpr std::size_t default_harmonic_grid = 4096;

/// Resonant harmonic model: A = exp(-(theta-pi)^2 / (2 sigma_theta^2)), no phase.
/// Throws UnsupportedConfiguration for nonzero detuning.
GratingProfile harmonic_profile(const PhysicalConfig& cfg,
                                std::size_t grid_size = default_harmonic_grid);

enum class ProfileModel { exact, harmonic };

GratingProfile make_profile(const PhysicalConfig& cfg, ProfileModel model, std::size_t grid_size);

}  // namespace aokr
