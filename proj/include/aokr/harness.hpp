#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aokr/grating.hpp"
#include "aokr/params.hpp"
#include "aokr/pseudoclassical.hpp"
#include "aokr/quantum.hpp"

namespace aokr {

enum class Engine { quantum, mc, recursion, analytic };
enum class SweepVariable { epsilon, beta, delta };

std::string_view engine_name(Engine e);
std::string_view variable_name(SweepVariable v);

/// Parses "q,mc,rec,ana" (long names quantum/recursion/analytic also accepted).
std::vector<Engine> parse_engines(std::string_view list);

struct SweepRange {
    double start = 0.0;
    double stop = 1.0;
    int points = 2;
    bool include_stop = true;

    std::vector<double> values() const;
};

struct SweepSpec {
    std::vector<Engine> engines;
    SweepVariable variable = SweepVariable::epsilon;
    SweepRange range;

    PhysicalConfig physical;
    double beta = 0.0;
    /// Overrides the epsilon derived from physical.period_offset.
    std::optional<double> epsilon;

    std::uint64_t seed = 1;
    std::size_t trajectories = default_trajectories;
    bool no_delta_j = false;
    ProfileModel profile = ProfileModel::exact;
    int n_max = default_n_max;
    unsigned workers = 1;  ///< 0 = hardware concurrency

    void validate() const;
};

struct EngineResult {
    Engine engine = Engine::quantum;
    bool supported = true;
    double survival = 0.0;
    double std_error = 0.0;
    std::string note;  ///< reason when unsupported
};

struct SweepPoint {
    double value = 0.0;
    std::vector<EngineResult> results;  ///< same order as ComparisonReport::engines

    const EngineResult* find(Engine e) const;
};

struct Deviation {
    double max_abs = 0.0;
    double rms = 0.0;
    std::size_t points = 0;
};

struct PairDeviation {
    Engine a;
    Engine b;
    Deviation deviation;
};

struct ComparisonReport {
    SweepVariable variable = SweepVariable::epsilon;
    std::vector<Engine> engines;
    std::vector<SweepPoint> points;  ///< ordered by sweep value

    /// Max/RMS deviation for every engine pair with shared support.
    std::vector<PairDeviation> pairwise() const;
};

/// Parameters of one evaluation: sweep value already applied.
struct PointSetup {
    PhysicalConfig physical;
    DimensionlessConfig dimensionless;
};

PointSetup point_setup(const SweepSpec& spec, double value);

ComparisonReport run_sweep(const SweepSpec& spec);

/// One point with every selected engine; MC uses spec.workers internally.
ComparisonReport run_single(const SweepSpec& spec);

void emit_csv(const ComparisonReport& report, std::ostream& out);
void emit_csv(const ComparisonReport& report, const std::string& path);

/// Throws ComparisonError when the engines share no supported point.
Deviation compare(const ComparisonReport& report, Engine a, Engine b);
/// Same, across two reports over the same sweep values.
Deviation compare(const ComparisonReport& ra, Engine a, const ComparisonReport& rb, Engine b);

/// CSV of a grating profile, one row per grid point.
void emit_grating_csv(const GratingProfile& profile, std::ostream& out);

}  // namespace aokr
