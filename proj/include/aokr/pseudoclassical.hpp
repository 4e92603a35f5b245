#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "aokr/grating.hpp"
#include "aokr/params.hpp"
#include "aokr/survival.hpp"

namespace aokr {

/// Weighted trajectories of the epsilon-classical map.
struct Ensemble {
    std::vector<double> theta;  ///< in [0, 2 pi)
    std::vector<double> j;
    std::vector<double> s;      ///< survival weights in [0, 1]
    double beta = 0.0;
    std::uint64_t master_seed = 0;
    int kick_index = 0;

    std::size_t size() const noexcept { return theta.size(); }
};

struct SurvivalEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t trajectories = 0;
};

struct MapOptions {
    bool delta_j = true;   ///< false drops the random diffraction kick
    unsigned workers = 1;  ///< 0 = hardware concurrency
};

inline constexpr std::size_t default_trajectories = 200000;

/// Stratified uniform theta (one jittered point per 2 pi / count cell), J = j0, S = 1.
Ensemble init_ensemble(std::size_t count, double beta, double j0, std::uint64_t seed);

/// One pulse plus free flight:
///   S <- s(theta) S
///   J <- J + delta_J + eps dTheta/dtheta(theta)
///   theta <- theta + J + pi ell (1 + 2 beta)  (mod 2 pi)
void step(Ensemble& ens, const GratingProfile& profile, const DimensionlessConfig& dcfg,
          const MapOptions& options = {});

SurvivalEstimate survival_estimate(const Ensemble& ens);

SurvivalSeries run_map(std::size_t count, double beta, double j0, std::uint64_t seed,
                       const GratingProfile& profile, const DimensionlessConfig& dcfg, int kicks,
                       const MapOptions& options = {});

}  // namespace aokr
