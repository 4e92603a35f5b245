// Command-line front end: parameter sweeps, single-point runs, engine
// comparisons and grating dumps. CSV goes to --out or stdout.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "aokr/error.hpp"
#include "aokr/grating.hpp"
#include "aokr/harness.hpp"
#include "aokr/params.hpp"

namespace {

using namespace aokr;

struct Options {
    std::string config;
    std::string engines = "q,mc,rec,ana";
    std::optional<int> kicks, ell, points, n_max;
    std::optional<double> beta, delta, delta_gamma, epsilon, period_offset;
    std::optional<double> mass, k_l, omega_rabi, gamma, pulse_duration;
    std::optional<double> start, stop;
    std::optional<std::size_t> trajectories;
    std::optional<std::uint64_t> seed;
    bool no_delta_j = false;
    bool harmonic = false;
    unsigned workers = 0;
    std::string out;
    std::string variable = "epsilon";
    std::optional<double> tolerance;
    std::size_t grid = 4096;
};

void add_physics_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--config", o.config, "key = value file (SI units); flags override it");
    cmd->add_option("--kicks", o.kicks, "number of pulses N");
    cmd->add_option("--ell", o.ell, "pulse period in half Talbot times");
    cmd->add_option("--beta", o.beta, "quasimomentum in [0, 1)");
    cmd->add_option("--delta,--detuning", o.delta, "detuning (rad/s)");
    cmd->add_option("--delta-gamma", o.delta_gamma, "detuning in units of gamma");
    cmd->add_option("--epsilon", o.epsilon, "scaled period offset (overrides --period-offset)");
    cmd->add_option("--period-offset", o.period_offset, "period offset from ell T_T/2 (s)");
    cmd->add_option("--mass", o.mass, "atomic mass (kg)");
    cmd->add_option("--k-l", o.k_l, "laser wavenumber (rad/m)");
    cmd->add_option("--omega-rabi", o.omega_rabi, "Rabi frequency (rad/s)");
    cmd->add_option("--gamma", o.gamma, "excited-state decay rate (rad/s)");
    cmd->add_option("--pulse-duration", o.pulse_duration, "pulse length (s)");
}

void add_engine_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--engines", o.engines, "comma list of q,mc,rec,ana");
    cmd->add_option("--trajectories", o.trajectories, "Monte Carlo trajectory count");
    cmd->add_option("--seed", o.seed, "Monte Carlo master seed");
    cmd->add_flag("--no-delta-j", o.no_delta_j, "drop the random diffraction kick");
    cmd->add_flag("--harmonic", o.harmonic, "use the harmonic (Gaussian) grating model");
    cmd->add_option("--workers", o.workers, "worker threads (0 = all cores)");
    cmd->add_option("--n-max", o.n_max, "initial momentum ladder half-width");
    cmd->add_option("--out", o.out, "CSV output path (default stdout)");
}

void add_range_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--start", o.start, "first sweep value");
    cmd->add_option("--stop", o.stop, "last sweep value");
    cmd->add_option("--points", o.points, "number of sweep points");
}

SweepSpec build_spec(const Options& o) {
    SweepSpec spec;
    if (!o.config.empty()) {
        for (const auto& [key, value] : load_key_value_file(o.config)) {
            if (apply_physical_key(spec.physical, key, value)) continue;
            try {
                if (key == "beta") spec.beta = std::stod(value);
                else if (key == "epsilon") spec.epsilon = std::stod(value);
                else if (key == "seed") spec.seed = std::stoull(value);
                else if (key == "trajectories") spec.trajectories = std::stoull(value);
                else throw ConfigError("unknown config key '" + key + "'");
            } catch (const std::logic_error&) {
                throw ConfigError("invalid value for '" + key + "': " + value);
            }
        }
    }
    auto& p = spec.physical;
    if (o.mass) p.mass = *o.mass;
    if (o.k_l) p.k_l = *o.k_l;
    if (o.omega_rabi) p.omega_rabi = *o.omega_rabi;
    if (o.gamma) p.gamma = *o.gamma;
    if (o.pulse_duration) p.pulse_duration = *o.pulse_duration;
    if (o.delta) p.detuning = *o.delta;
    if (o.delta_gamma) p.detuning = *o.delta_gamma * p.gamma;
    if (o.period_offset) {
        p.period_offset = *o.period_offset;
        spec.epsilon.reset();
    }
    if (o.ell) p.ell = *o.ell;
    if (o.kicks) p.kicks = *o.kicks;
    if (o.beta) spec.beta = *o.beta;
    if (o.epsilon) spec.epsilon = *o.epsilon;
    if (o.trajectories) spec.trajectories = *o.trajectories;
    if (o.seed) spec.seed = *o.seed;
    if (o.n_max) spec.n_max = *o.n_max;
    spec.no_delta_j = o.no_delta_j;
    spec.profile = o.harmonic ? ProfileModel::harmonic : ProfileModel::exact;
    spec.workers = o.workers;
    spec.engines = parse_engines(o.engines);

    p.validate();
    if (raman_nath_violated(p))
        std::cerr << "warning: (4 hbar k_l^2 / M) t = " << raman_nath_parameter(p)
                  << " exceeds " << raman_nath_warning_threshold << "; kicks are not instantaneous\n";
    return spec;
}

void set_range(SweepSpec& spec, const Options& o, SweepVariable var, SweepRange defaults) {
    spec.variable = var;
    spec.range = defaults;
    if (o.start) spec.range.start = *o.start;
    if (o.stop) spec.range.stop = *o.stop;
    if (o.points) spec.range.points = *o.points;
}

void write_report(const ComparisonReport& report, const Options& o) {
    if (o.out.empty()) emit_csv(report, std::cout);
    else emit_csv(report, o.out);
}

SweepRange default_range(SweepVariable var, const PhysicalConfig& phys) {
    switch (var) {
    case SweepVariable::beta: return {0.0, 1.0, 101, false};
    case SweepVariable::delta: return {-2.0 * phys.gamma, 2.0 * phys.gamma, 41, true};
    case SweepVariable::epsilon: break;
    }
    return {-0.2, 0.2, 81, true};
}

SweepVariable parse_variable(const std::string& s) {
    if (s == "epsilon") return SweepVariable::epsilon;
    if (s == "beta") return SweepVariable::beta;
    if (s == "delta") return SweepVariable::delta;
    throw ConfigError("unknown sweep variable '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Survival of atoms in pulsed absorptive standing waves near the Talbot time"};
    app.require_subcommand(1);
    Options o;

    auto* sweep_eps = app.add_subcommand("sweep-epsilon", "sweep the scaled period offset epsilon");
    auto* sweep_beta = app.add_subcommand("sweep-beta", "sweep the quasimomentum beta");
    auto* sweep_delta = app.add_subcommand("sweep-delta", "sweep the detuning (rad/s)");
    auto* compare_cmd = app.add_subcommand("compare", "sweep and report pairwise engine deviations");
    auto* single = app.add_subcommand("single", "evaluate every selected engine at one point");
    auto* dump = app.add_subcommand("dump-grating", "write the sampled grating profile as CSV");

    for (auto* cmd : {sweep_eps, sweep_beta, sweep_delta, compare_cmd, single, dump}) add_physics_options(cmd, o);
    for (auto* cmd : {sweep_eps, sweep_beta, sweep_delta, compare_cmd, single}) add_engine_options(cmd, o);
    for (auto* cmd : {sweep_eps, sweep_beta, sweep_delta, compare_cmd}) add_range_options(cmd, o);
    compare_cmd->add_option("--variable", o.variable, "epsilon, beta or delta");
    compare_cmd->add_option("--tolerance", o.tolerance, "exit with status 2 if any pair's max deviation exceeds this");
    dump->add_option("--grid", o.grid, "grid points on [0, 2 pi)");
    dump->add_flag("--harmonic", o.harmonic, "harmonic (Gaussian) grating model");
    dump->add_option("--out", o.out, "CSV output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dump->parsed()) {
            auto spec = build_spec(o);
            const auto profile = make_profile(spec.physical, spec.profile, o.grid);
            if (o.out.empty()) {
                emit_grating_csv(profile, std::cout);
            } else {
                std::ofstream f(o.out, std::ios::binary);
                if (!f) throw Error("cannot open output file: " + o.out);
                emit_grating_csv(profile, f);
            }
            return 0;
        }

        auto spec = build_spec(o);
        if (single->parsed()) {
            write_report(run_single(spec), o);
            return 0;
        }

        SweepVariable var = SweepVariable::epsilon;
        if (sweep_beta->parsed()) var = SweepVariable::beta;
        else if (sweep_delta->parsed()) var = SweepVariable::delta;
        else if (compare_cmd->parsed()) var = parse_variable(o.variable);
        set_range(spec, o, var, default_range(var, spec.physical));

        const auto report = run_sweep(spec);
        if (!compare_cmd->parsed()) {
            write_report(report, o);
            return 0;
        }

        if (!o.out.empty()) emit_csv(report, o.out);
        const auto pairs = report.pairwise();
        if (pairs.empty()) throw ComparisonError("no engine pair shares a supported sweep point");
        std::cout << "engine_a,engine_b,points,max_abs,rms\n";
        bool within = true;
        for (const auto& p : pairs) {
            std::printf("%s,%s,%zu,%.6e,%.6e\n", std::string(engine_name(p.a)).c_str(),
                        std::string(engine_name(p.b)).c_str(), p.deviation.points, p.deviation.max_abs,
                        p.deviation.rms);
            if (o.tolerance && p.deviation.max_abs > *o.tolerance) within = false;
        }
        return within ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
