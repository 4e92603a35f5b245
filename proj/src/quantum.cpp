#include "aokr/quantum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <new>
#include <optional>
#include <string>

#include "aokr/error.hpp"

namespace aokr {

namespace {

// FFTW's planner is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

/// Position-space multiplication by the sampled grating, via one backward
/// and one forward FFT of length profile.size().
class KickPropagator {
public:
    explicit KickPropagator(const GratingProfile& profile)
        : values_(profile.values()), n_(profile.size()) {
        buffer_ = static_cast<complex*>(fftw_malloc(sizeof(complex) * n_));
        if (!buffer_) throw std::bad_alloc();
        auto* raw = reinterpret_cast<fftw_complex*>(buffer_);
        std::lock_guard lock(planner_mutex());
        const int n = static_cast<int>(n_);
        to_position_ = fftw_plan_dft_1d(n, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
        to_momentum_ = fftw_plan_dft_1d(n, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
    }

    KickPropagator(const KickPropagator&) = delete;
    KickPropagator& operator=(const KickPropagator&) = delete;

    ~KickPropagator() {
        {
            std::lock_guard lock(planner_mutex());
            fftw_destroy_plan(to_position_);
            fftw_destroy_plan(to_momentum_);
        }
        fftw_free(buffer_);
    }

    void apply(QuantumState& state) {
        const int n_max = state.n_max();
        if (n_ < 8 * (2 * static_cast<std::size_t>(n_max) + 1))
            throw ResolutionError("profile grid of " + std::to_string(n_) + " points is too coarse for n_max = " +
                                  std::to_string(n_max));
        const auto amps = state.amplitudes();
        std::fill(buffer_, buffer_ + n_, complex{});
        for (int n = -n_max; n <= n_max; ++n) buffer_[index(n)] = amps[static_cast<std::size_t>(n + n_max)];

        fftw_execute(to_position_);  // psi(theta_j) = sum_n c_n exp(i n theta_j)
        for (std::size_t j = 0; j < n_; ++j) buffer_[j] *= values_[j];
        fftw_execute(to_momentum_);

        const double scale = 1.0 / static_cast<double>(n_);
        for (int n = -n_max; n <= n_max; ++n) amps[static_cast<std::size_t>(n + n_max)] = buffer_[index(n)] * scale;

        const double tail = state.tail_mass();
        if (tail > tail_mass_limit)
            throw AliasingError("momentum ladder truncated at n_max = " + std::to_string(n_max) +
                                    " carries tail mass " + std::to_string(tail),
                                tail);
    }

private:
    std::size_t index(int n) const {
        return static_cast<std::size_t>(n >= 0 ? n : static_cast<long long>(n_) + n);
    }

    std::span<const complex> values_;
    std::size_t n_;
    complex* buffer_ = nullptr;
    fftw_plan to_position_ = nullptr;
    fftw_plan to_momentum_ = nullptr;
};

void apply_free_in_place(QuantumState& state, const DimensionlessConfig& dcfg) {
    const double drift = drift_angle(dcfg.ell, dcfg.beta);
    const int n_max = state.n_max();
    auto amps = state.amplitudes();
    for (int n = -n_max; n <= n_max; ++n) {
        const double dn = n;
        const double phase = 0.5 * dcfg.epsilon * dn * dn + dn * drift;
        amps[static_cast<std::size_t>(n + n_max)] *= std::polar(1.0, -phase);
    }
}

}  // namespace

QuantumState::QuantumState(double beta, int n_max)
    : beta_(beta), n_max_(n_max), amplitudes_(2 * static_cast<std::size_t>(n_max) + 1) {
    if (n_max < 1) throw ConfigError("n_max must be >= 1");
}

double QuantumState::norm() const {
    double s = 0.0;
    for (const auto& c : amplitudes_) s += std::norm(c);
    return s;
}

double QuantumState::tail_mass() const {
    const int inner = static_cast<int>(std::floor(0.9 * n_max_));
    double s = 0.0;
    for (int n = -n_max_; n <= n_max_; ++n)
        if (std::abs(n) > inner) s += std::norm(at(n));
    return s;
}

std::vector<double> QuantumState::probabilities() const {
    std::vector<double> p(amplitudes_.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(amplitudes_[i]);
    return p;
}

std::size_t quantum_grid_size(int n_max) {
    return std::bit_ceil(8 * (2 * static_cast<std::size_t>(n_max) + 1));
}

QuantumState init_plane_wave(double beta, int n_max) {
    QuantumState s(beta, n_max);
    s.at(0) = 1.0;
    return s;
}

QuantumState apply_kick(const QuantumState& state, const GratingProfile& profile) {
    QuantumState out = state;
    KickPropagator(profile).apply(out);
    return out;
}

QuantumState apply_free(const QuantumState& state, const DimensionlessConfig& dcfg) {
    QuantumState out = state;
    apply_free_in_place(out, dcfg);
    return out;
}

SurvivalSeries evolve(QuantumState& state, const GratingProfile& profile, const DimensionlessConfig& dcfg,
                      int kicks) {
    if (kicks < 0) throw ConfigError("kicks must be >= 0");
    SurvivalSeries series;
    series.values.reserve(static_cast<std::size_t>(kicks) + 1);
    series.values.push_back(state.norm());
    if (kicks == 0) return series;

    KickPropagator kick(profile);
    for (int k = 0; k < kicks; ++k) {
        kick.apply(state);
        series.values.push_back(state.norm());
        apply_free_in_place(state, dcfg);
    }
    return series;
}

QuantumRun run_quantum(const PhysicalConfig& phys, const DimensionlessConfig& dcfg, ProfileModel model, int n_max,
                       const GratingProfile* profile) {
    for (;;) {
        const std::size_t grid = quantum_grid_size(n_max);
        std::optional<GratingProfile> owned;
        const GratingProfile* use = profile;
        if (!use || use->size() < grid) {
            owned.emplace(make_profile(phys, model, grid));
            use = &*owned;
        }
        try {
            auto state = init_plane_wave(dcfg.beta, n_max);
            QuantumRun run;
            run.series = evolve(state, *use, dcfg, dcfg.kicks);
            run.momentum_distribution = state.probabilities();
            run.n_max = n_max;
            return run;
        } catch (const AliasingError&) {
            if (2 * n_max > max_n_max) throw;
            n_max *= 2;
        }
    }
}

}  // namespace aokr
