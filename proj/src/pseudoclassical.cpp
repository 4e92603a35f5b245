#include "aokr/pseudoclassical.hpp"

#include <cmath>

#include "aokr/error.hpp"
#include "aokr/parallel.hpp"
#include "aokr/rng.hpp"

namespace aokr {

namespace {

// Kick index reserved for the initial theta jitter.
constexpr std::uint64_t init_stream = ~std::uint64_t{0};

}  // namespace

Ensemble init_ensemble(std::size_t count, double beta, double j0, std::uint64_t seed) {
    if (count < 1) throw ConfigError("ensemble needs at least one trajectory");
    Ensemble ens;
    ens.theta.resize(count);
    ens.j.assign(count, j0);
    ens.s.assign(count, 1.0);
    ens.beta = beta;
    ens.master_seed = seed;
    const double cell = constants::two_pi / static_cast<double>(count);
    for (std::size_t i = 0; i < count; ++i) {
        CounterRng rng(seed, i, init_stream);
        ens.theta[i] = wrap_two_pi(cell * (static_cast<double>(i) + rng.uniform()));
    }
    return ens;
}

void step(Ensemble& ens, const GratingProfile& profile, const DimensionlessConfig& dcfg, const MapOptions& options) {
    const double eps = dcfg.epsilon;
    const double drift = drift_angle(dcfg.ell, dcfg.beta);
    const auto& kicks = profile.kicks();
    const auto kick = static_cast<std::uint64_t>(ens.kick_index);
    const std::uint64_t seed = ens.master_seed;

    parallel_for(ens.size(), resolve_workers(options.workers), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double theta = ens.theta[i];
            ens.s[i] *= profile.mask_at(theta);
            double dj = 0.0;
            if (options.delta_j) {
                CounterRng rng(seed, i, kick);
                const double u1 = rng.uniform();
                const double u2 = rng.uniform();
                dj = eps * kicks.sample(u1, u2);
            }
            const double j = ens.j[i] + dj + eps * profile.gradient_at(theta);
            ens.j[i] = j;
            ens.theta[i] = wrap_two_pi(theta + j + drift);
        }
    });
    ++ens.kick_index;
}

SurvivalEstimate survival_estimate(const Ensemble& ens) {
    const std::size_t n = ens.size();
    SurvivalEstimate est;
    est.trajectories = n;
    if (n == 0) return est;
    double sum = 0.0;
    for (double s : ens.s) sum += s;
    est.mean = sum / static_cast<double>(n);
    if (n < 2) return est;
    double ss = 0.0;
    for (double s : ens.s) ss += (s - est.mean) * (s - est.mean);
    est.std_error = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
    return est;
}

SurvivalSeries run_map(std::size_t count, double beta, double j0, std::uint64_t seed, const GratingProfile& profile,
                       const DimensionlessConfig& dcfg, int kicks, const MapOptions& options) {
    if (kicks < 0) throw ConfigError("kicks must be >= 0");
    auto ens = init_ensemble(count, beta, j0, seed);
    SurvivalSeries series;
    auto record = [&] {
        const auto est = survival_estimate(ens);
        series.values.push_back(est.mean);
        series.std_errors.push_back(est.std_error);
    };
    record();
    for (int k = 0; k < kicks; ++k) {
        step(ens, profile, dcfg, options);
        record();
    }
    return series;
}

}  // namespace aokr
