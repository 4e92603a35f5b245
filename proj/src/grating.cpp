#include "aokr/grating.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "aokr/error.hpp"

namespace aokr {

namespace {

constexpr double pi = std::numbers::pi;
constexpr complex I{0.0, 1.0};

// sin(z)/z, series near the origin.
complex sinc(complex z) {
    if (std::abs(z) < 1e-3) {
        const complex z2 = z * z;
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sin(z) / z;
}

EigenPair label_pair(complex mean, complex half_split) {
    EigenPair p{mean - half_split, mean + half_split};
    if (std::abs(p.lambda2.imag()) > std::abs(p.lambda1.imag())) std::swap(p.lambda1, p.lambda2);
    return p;
}

struct EigenTerms {
    complex mean;   // -a/2
    complex root;   // sqrt(a^2 + hbar^2 Omega^2 cos^2)
};

EigenTerms eigen_terms(double x, const PhysicalConfig& cfg) {
    const double hbar = constants::hbar;
    const complex a = hbar * complex(cfg.detuning, 0.5 * cfg.gamma);
    const double c = hbar * cfg.omega_rabi * std::cos(cfg.k_l * x);
    return {-0.5 * a, std::sqrt(a * a + c * c)};
}

void check_resolution(std::size_t grid_size, double sigma_theta) {
    if (grid_size < 64) throw ResolutionError("grating grid needs at least 64 points");
    const double h = constants::two_pi / static_cast<double>(grid_size);
    const auto within = 2 * static_cast<std::size_t>(std::floor(sigma_theta / h)) + 1;
    if (within < 8)
        throw ResolutionError("grating grid of " + std::to_string(grid_size) +
                              " points has fewer than 8 samples within one mask width of the node");
}

std::vector<double> uniform_theta(std::size_t n) {
    std::vector<double> theta(n);
    for (std::size_t j = 0; j < n; ++j) theta[j] = constants::two_pi * static_cast<double>(j) / static_cast<double>(n);
    return theta;
}

double interpolate(std::span<const double> table, double theta) {
    const auto n = table.size();
    const double x = wrap_two_pi(theta) * static_cast<double>(n) / constants::two_pi;
    const double fl = std::floor(x);
    const double w = x - fl;
    const auto i = static_cast<std::size_t>(fl) % n;
    return table[i] * (1.0 - w) + table[(i + 1) % n] * w;
}

}  // namespace

EigenPair eigenvalues(double x, const PhysicalConfig& cfg) {
    const auto t = eigen_terms(x, cfg);
    return label_pair(t.mean, 0.5 * t.root);
}

std::vector<EigenPair> eigenvalue_branches(std::span<const double> x, const PhysicalConfig& cfg) {
    std::vector<EigenPair> out;
    out.reserve(x.size());
    complex prev_root;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto t = eigen_terms(x[i], cfg);
        complex root = t.root;
        if (i == 0) {
            // The first sample fixes which branch is called lambda2 (long-lived).
            if (std::abs((t.mean + 0.5 * root).imag()) > std::abs((t.mean - 0.5 * root).imag())) root = -root;
        } else if (std::abs(root - prev_root) > std::abs(-root - prev_root)) {
            root = -root;
        }
        prev_root = root;
        out.push_back({t.mean - 0.5 * root, t.mean + 0.5 * root});
    }
    return out;
}

bool is_confluent(const EigenPair& eig) {
    return std::abs(eig.lambda1 - eig.lambda2) < 1e-8 * (std::abs(eig.lambda1) + std::abs(eig.lambda2));
}

complex grating_amplitude(double x, const PhysicalConfig& cfg) {
    // With m = (l1 + l2) t / (2 hbar) and d = (l2 - l1) t / (2 hbar):
    //   G = exp(-i m) [cos d + i m sin(d)/d]
    // Even in d; at the confluent point d = 0 this is exp(-i m)(1 + i m).
    const double t = cfg.pulse_duration;
    const complex a = complex(cfg.detuning, 0.5 * cfg.gamma) * t;
    const double c = cfg.omega_rabi * t * std::cos(cfg.k_l * x);
    const complex m = -0.5 * a;
    const complex d = 0.5 * std::sqrt(a * a + c * c);
    complex g = std::exp(-I * m) * (std::cos(d) + I * m * sinc(d));
    if (cfg.detuning == 0.0) g = {g.real(), 0.0};  // resonant grating is real
    return g;
}

// ---------------------------------------------------------------------------

KickDistribution KickDistribution::analytic(double reduced_sigma) {
    if (!(reduced_sigma >= 0.0) || !std::isfinite(reduced_sigma))
        throw ConfigError("kick standard deviation must be finite and >= 0");
    KickDistribution k;
    k.kind_ = Kind::analytic_gaussian;
    k.reduced_sigma_ = reduced_sigma;
    return k;
}

KickDistribution KickDistribution::tabulate(std::span<const double> amplitude, std::size_t bins) {
    const std::size_t n = amplitude.size();
    if (n < 8) throw ResolutionError("amplitude table too short to tabulate kicks");
    if (bins < 16) throw ConfigError("kick table needs at least 16 bins");
    const double h = constants::two_pi / static_cast<double>(n);

    // Core width from Parseval: <kappa^2> = int A'^2 / int A^2 on the periodic grid.
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double da = (amplitude[(j + 1) % n] - amplitude[(j + n - 1) % n]) / (2.0 * h);
        num += da * da;
        den += amplitude[j] * amplitude[j];
    }
    if (!(den > 0.0)) throw ConfigError("grating amplitude vanishes everywhere");
    const double width = std::sqrt(num / den);

    KickDistribution k;
    k.kind_ = Kind::tabulated;
    if (!(width > 0.0)) {
        // Flat amplitude: no diffraction.
        k.kind_ = Kind::analytic_gaussian;
        k.reduced_sigma_ = 0.0;
        return k;
    }

    const double half_span = span_in_std * width;
    const double dk = 2.0 * half_span / static_cast<double>(bins);

    // |F(kappa)|^2 at bin edges and midpoints (2 bins + 1 nodes), F by the
    // periodic trapezoid rule with phasors advanced by rotation.
    const std::size_t nodes = 2 * bins + 1;
    std::vector<double> density(nodes);
    for (std::size_t q = 0; q < nodes; ++q) {
        const double kappa = -half_span + 0.5 * dk * static_cast<double>(q);
        const complex rot = std::polar(1.0, -kappa * h);
        complex phasor = std::polar(1.0, kappa * pi);  // exp(-i kappa (0 - pi))
        complex sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            sum += amplitude[j] * phasor;
            phasor *= rot;
        }
        density[q] = std::norm(sum * h);
    }

    k.grid_.resize(bins + 1);
    k.cdf_.resize(bins + 1);
    double acc = 0.0;
    double second_moment = 0.0;
    k.grid_[0] = -half_span;
    k.cdf_[0] = 0.0;
    for (std::size_t b = 0; b < bins; ++b) {
        const double mass = dk / 6.0 * (density[2 * b] + 4.0 * density[2 * b + 1] + density[2 * b + 2]);
        const double mid = -half_span + dk * (static_cast<double>(b) + 0.5);
        acc += mass;
        second_moment += mass * mid * mid;
        k.grid_[b + 1] = -half_span + dk * static_cast<double>(b + 1);
        k.cdf_[b + 1] = acc;
    }
    for (auto& c : k.cdf_) c /= acc;
    k.cdf_.back() = 1.0;
    k.reduced_sigma_ = std::sqrt(second_moment / acc);
    return k;
}

std::vector<double> KickDistribution::dj_grid(double epsilon) const {
    std::vector<double> out(grid_.size());
    std::transform(grid_.begin(), grid_.end(), out.begin(), [epsilon](double k) { return epsilon * k; });
    return out;
}

double KickDistribution::cdf_at(double k) const {
    if (kind_ == Kind::analytic_gaussian) {
        if (reduced_sigma_ == 0.0) return k >= 0.0 ? 1.0 : 0.0;
        return 0.5 * std::erfc(-k / (reduced_sigma_ * std::numbers::sqrt2));
    }
    if (k <= grid_.front()) return 0.0;
    if (k >= grid_.back()) return 1.0;
    const double dk = grid_[1] - grid_[0];
    const double x = (k - grid_.front()) / dk;
    const auto b = std::min(static_cast<std::size_t>(x), grid_.size() - 2);
    const double w = x - static_cast<double>(b);
    return cdf_[b] * (1.0 - w) + cdf_[b + 1] * w;
}

double KickDistribution::sample(double u1, double u2) const {
    if (kind_ == Kind::analytic_gaussian) {
        // Box-Muller, cosine branch.
        return reduced_sigma_ * std::sqrt(-2.0 * std::log(u1)) * std::cos(constants::two_pi * u2);
    }
    (void)u2;
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u1);
    const auto b = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(it - cdf_.begin() - 1, 0,
                                                                          static_cast<std::ptrdiff_t>(cdf_.size()) - 2));
    const double lo = cdf_[b], hi = cdf_[b + 1];
    const double w = hi > lo ? (u1 - lo) / (hi - lo) : 0.5;
    return grid_[b] + w * (grid_[b + 1] - grid_[b]);
}

// ---------------------------------------------------------------------------

double GratingProfile::spacing() const noexcept {
    return constants::two_pi / static_cast<double>(values_.size());
}

GratingProfile GratingProfile::from_values(std::vector<complex> values, KickDistribution kicks) {
    const std::size_t n = values.size();
    if (n < 8) throw ResolutionError("grating profile needs at least 8 samples");

    GratingProfile p;
    p.theta_ = uniform_theta(n);
    p.values_ = std::move(values);
    p.kicks_ = std::move(kicks);
    p.amplitude_.resize(n);
    p.mask_.resize(n);
    p.phase_.resize(n);
    p.gradient_.resize(n);

    const double h = constants::two_pi / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
        const complex g = p.values_[j];
        p.amplitude_[j] = std::abs(g);
        p.mask_[j] = p.amplitude_[j] * p.amplitude_[j];
        p.phase_[j] = j == 0 ? std::arg(g) : p.phase_[j - 1] + std::arg(g * std::conj(p.values_[j - 1]));

        // d Theta/d theta = Im(G* G') / |G|^2 with a centred difference for G'.
        const complex dg = p.values_[(j + 1) % n] - p.values_[(j + n - 1) % n];
        const double norm = std::norm(g);
        p.gradient_[j] = norm > 0.0 ? (std::conj(g) * dg).imag() / (2.0 * h * norm) : 0.0;
    }
    return p;
}

double GratingProfile::mask_at(double theta) const noexcept { return interpolate(mask_, theta); }

double GratingProfile::gradient_at(double theta) const noexcept { return interpolate(gradient_, theta); }

GratingProfile build_profile(const PhysicalConfig& cfg, std::size_t grid_size) {
    cfg.validate();
    const double sigma_theta = mask_width(cfg);
    check_resolution(grid_size, sigma_theta);

    std::vector<complex> values(grid_size);
    std::size_t confluent = 0;
    for (std::size_t j = 0; j < grid_size; ++j) {
        const double theta = constants::two_pi * static_cast<double>(j) / static_cast<double>(grid_size);
        const double x = theta / (2.0 * cfg.k_l);
        values[j] = grating_amplitude(x, cfg);
        if (is_confluent(eigenvalues(x, cfg))) ++confluent;
    }

    auto kicks = KickDistribution::analytic(0.0);
    if (cfg.detuning == 0.0) {
        kicks = KickDistribution::analytic(1.0 / (std::numbers::sqrt2 * sigma_theta));
    } else {
        std::vector<double> amp(grid_size);
        std::transform(values.begin(), values.end(), amp.begin(), [](complex g) { return std::abs(g); });
        kicks = KickDistribution::tabulate(amp);
    }
    auto profile = GratingProfile::from_values(std::move(values), std::move(kicks));
    profile.confluent_points_ = confluent;
    return profile;
}

GratingProfile harmonic_profile(const PhysicalConfig& cfg, std::size_t grid_size) {
    cfg.validate();
    if (cfg.detuning != 0.0)
        throw UnsupportedConfiguration("harmonic grating model requires resonant light (detuning = 0)");
    const double sigma_theta = mask_width(cfg);
    check_resolution(grid_size, sigma_theta);

    std::vector<complex> values(grid_size);
    for (std::size_t j = 0; j < grid_size; ++j) {
        const double u = constants::two_pi * static_cast<double>(j) / static_cast<double>(grid_size) - pi;
        values[j] = std::exp(-u * u / (2.0 * sigma_theta * sigma_theta));
    }
    return GratingProfile::from_values(std::move(values),
                                       KickDistribution::analytic(1.0 / (std::numbers::sqrt2 * sigma_theta)));
}

GratingProfile make_profile(const PhysicalConfig& cfg, ProfileModel model, std::size_t grid_size) {
    return model == ProfileModel::harmonic ? harmonic_profile(cfg, grid_size) : build_profile(cfg, grid_size);
}

}  // namespace aokr
