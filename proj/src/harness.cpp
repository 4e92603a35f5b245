#include "aokr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <ostream>
#include <thread>

#include "aokr/error.hpp"
#include "aokr/gaussian.hpp"
#include "aokr/parallel.hpp"

namespace aokr {

namespace {

std::string fmt12(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// Profile shared by every point of an epsilon or beta sweep, or the reason
/// it could not be built.
struct SharedProfile {
    std::shared_ptr<const GratingProfile> profile;
    std::string error;
};

SharedProfile try_profile(const PhysicalConfig& phys, ProfileModel model, std::size_t grid) {
    try {
        return {std::make_shared<const GratingProfile>(make_profile(phys, model, grid)), {}};
    } catch (const Error& e) {
        return {nullptr, e.what()};
    }
}

EngineResult unsupported(Engine e, std::string why) {
    EngineResult r;
    r.engine = e;
    r.supported = false;
    r.survival = std::numeric_limits<double>::quiet_NaN();
    r.std_error = std::numeric_limits<double>::quiet_NaN();
    r.note = std::move(why);
    return r;
}

EngineResult evaluate(Engine engine, const SweepSpec& spec, const PointSetup& setup, const SharedProfile& shared,
                      unsigned mc_workers) {
    const auto& d = setup.dimensionless;
    EngineResult r;
    r.engine = engine;
    try {
        switch (engine) {
        case Engine::quantum: {
            if (!shared.profile && !shared.error.empty()) return unsupported(engine, shared.error);
            const auto run = run_quantum(setup.physical, d, spec.profile, spec.n_max, shared.profile.get());
            r.survival = run.series.final_value();
            break;
        }
        case Engine::mc: {
            if (!shared.profile) return unsupported(engine, shared.error);
            MapOptions opt;
            opt.delta_j = !spec.no_delta_j;
            opt.workers = mc_workers;
            const auto series = run_map(spec.trajectories, d.beta, 0.0, spec.seed, *shared.profile, d, d.kicks, opt);
            r.survival = series.final_value();
            r.std_error = series.final_std_error();
            break;
        }
        case Engine::recursion:
            if (!d.resonant) return unsupported(engine, "recursion requires detuning = 0");
            r.survival = run_recursion(d, d.kicks).final_value();
            break;
        case Engine::analytic:
            if (!d.resonant) return unsupported(engine, "closed form requires detuning = 0");
            if (d.epsilon != 0.0) return unsupported(engine, "closed form requires epsilon = 0");
            r.survival = d.kicks == 0 ? 1.0 : survival_analytic_eps0(d.kicks, d.beta, d.ell, d.sigma_theta).value;
            break;
        }
    } catch (const Error& e) {
        return unsupported(engine, e.what());
    }
    return r;
}

std::vector<Engine> canonical_order(std::vector<Engine> engines) {
    std::sort(engines.begin(), engines.end());
    engines.erase(std::unique(engines.begin(), engines.end()), engines.end());
    return engines;
}

bool needs_profile(const std::vector<Engine>& engines) {
    return std::any_of(engines.begin(), engines.end(), [](Engine e) { return e == Engine::quantum || e == Engine::mc; });
}

SweepPoint evaluate_point(const SweepSpec& spec, const std::vector<Engine>& engines, double value,
                          const SharedProfile* shared, unsigned mc_workers) {
    SweepPoint point;
    point.value = value;
    const auto setup = point_setup(spec, value);
    SharedProfile local;
    if (!shared) {
        if (needs_profile(engines))
            local = try_profile(setup.physical, spec.profile, quantum_grid_size(spec.n_max));
        shared = &local;
    }
    for (Engine e : engines) point.results.push_back(evaluate(e, spec, setup, *shared, mc_workers));
    return point;
}

}  // namespace

std::string_view engine_name(Engine e) {
    switch (e) {
    case Engine::quantum: return "quantum";
    case Engine::mc: return "mc";
    case Engine::recursion: return "recursion";
    case Engine::analytic: return "analytic";
    }
    return "?";
}

std::string_view variable_name(SweepVariable v) {
    switch (v) {
    case SweepVariable::epsilon: return "epsilon";
    case SweepVariable::beta: return "beta";
    case SweepVariable::delta: return "delta";
    }
    return "?";
}

std::vector<Engine> parse_engines(std::string_view list) {
    std::vector<Engine> out;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        const auto comma = std::min(list.find(',', pos), list.size());
        const auto token = list.substr(pos, comma - pos);
        if (token == "q" || token == "quantum") out.push_back(Engine::quantum);
        else if (token == "mc") out.push_back(Engine::mc);
        else if (token == "rec" || token == "recursion") out.push_back(Engine::recursion);
        else if (token == "ana" || token == "analytic") out.push_back(Engine::analytic);
        else if (!token.empty()) throw ConfigError("unknown engine '" + std::string(token) + "'");
        pos = comma + 1;
    }
    if (out.empty()) throw ConfigError("no engine selected");
    return canonical_order(std::move(out));
}

std::vector<double> SweepRange::values() const {
    std::vector<double> v(static_cast<std::size_t>(std::max(points, 0)));
    const double div = include_stop ? points - 1 : points;
    for (int i = 0; i < points; ++i) v[static_cast<std::size_t>(i)] = start + (stop - start) * i / div;
    if (include_stop && points >= 2) v.back() = stop;
    return v;
}

void SweepSpec::validate() const {
    if (engines.empty()) throw ConfigError("select at least one engine");
    if (range.points < 2) throw ConfigError("a sweep needs at least 2 points");
    if (!(range.start < range.stop)) throw ConfigError("sweep start must be below stop");
    if (trajectories < 2) throw ConfigError("Monte Carlo needs at least 2 trajectories");
    if (n_max < 1) throw ConfigError("n_max must be >= 1");
    physical.validate();
    if (variable == SweepVariable::beta) {
        if (range.start < 0.0 || range.stop > 1.0 || (range.include_stop && range.stop >= 1.0))
            throw ConfigError("beta sweep must stay inside [0, 1)");
    } else if (!(beta >= 0.0 && beta < 1.0)) {
        throw ConfigError("beta must lie in [0, 1)");
    }
}

PointSetup point_setup(const SweepSpec& spec, double value) {
    PointSetup out;
    out.physical = spec.physical;
    double beta = spec.beta;
    std::optional<double> eps = spec.epsilon;
    switch (spec.variable) {
    case SweepVariable::epsilon: eps = value; break;
    case SweepVariable::beta: beta = value; break;
    case SweepVariable::delta: out.physical.detuning = value; break;
    }
    if (eps) out.physical.period_offset = period_offset_for_epsilon(out.physical, *eps);
    out.dimensionless = derive_dimensionless(out.physical, beta);
    if (eps) {
        // Requested epsilon is used verbatim.
        auto& d = out.dimensionless;
        d.epsilon = *eps;
        d.sigma_j = std::sqrt(out.physical.pulse_duration / (8.0 * out.physical.gamma)) * out.physical.omega_rabi *
                    std::abs(*eps);
    }
    return out;
}

ComparisonReport run_sweep(const SweepSpec& spec) {
    spec.validate();
    ComparisonReport report;
    report.variable = spec.variable;
    report.engines = canonical_order(spec.engines);
    const auto values = spec.range.values();
    report.points.resize(values.size());

    SharedProfile shared;
    const bool share = spec.variable != SweepVariable::delta && needs_profile(report.engines);
    if (share) shared = try_profile(spec.physical, spec.profile, quantum_grid_size(spec.n_max));

    const unsigned workers = resolve_workers(spec.workers);
    std::atomic<std::size_t> next{0};
    parallel_for(workers, workers, [&](std::size_t, std::size_t) {
        for (std::size_t i = next++; i < values.size(); i = next++)
            report.points[i] = evaluate_point(spec, report.engines, values[i], share ? &shared : nullptr, 1);
    });
    return report;
}

ComparisonReport run_single(const SweepSpec& spec) {
    spec.physical.validate();
    if (spec.engines.empty()) throw ConfigError("select at least one engine");
    if (!(spec.beta >= 0.0 && spec.beta < 1.0)) throw ConfigError("beta must lie in [0, 1)");
    SweepSpec single = spec;
    single.variable = SweepVariable::epsilon;
    const double eps = spec.epsilon ? *spec.epsilon : epsilon_rate(spec.physical) * spec.physical.period_offset;

    ComparisonReport report;
    report.variable = SweepVariable::epsilon;
    report.engines = canonical_order(spec.engines);
    report.points.push_back(evaluate_point(single, report.engines, eps, nullptr, resolve_workers(spec.workers)));
    return report;
}

const EngineResult* SweepPoint::find(Engine e) const {
    for (const auto& r : results)
        if (r.engine == e) return &r;
    return nullptr;
}

void emit_csv(const ComparisonReport& report, std::ostream& out) {
    if (report.points.empty() || report.engines.empty()) throw ConfigError("cannot write an empty report");
    out << "sweep_var,value,engine,survival,std_error\n";
    const auto var = variable_name(report.variable);
    for (const auto& p : report.points)
        for (const auto& r : p.results)
            out << var << ',' << fmt12(p.value) << ',' << engine_name(r.engine) << ',' << fmt12(r.survival) << ','
                << fmt12(r.std_error) << '\n';
}

void emit_csv(const ComparisonReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    emit_csv(report, out);
    out.flush();
    if (!out) throw Error("failed writing output file: " + path);
}

Deviation compare(const ComparisonReport& ra, Engine a, const ComparisonReport& rb, Engine b) {
    if (ra.points.size() != rb.points.size()) throw ComparisonError("reports cover different sweep points");
    Deviation dev;
    double sq = 0.0;
    for (std::size_t i = 0; i < ra.points.size(); ++i) {
        if (ra.points[i].value != rb.points[i].value) throw ComparisonError("reports cover different sweep points");
        const auto* x = ra.points[i].find(a);
        const auto* y = rb.points[i].find(b);
        if (!x || !y || !x->supported || !y->supported) continue;
        const double diff = std::abs(x->survival - y->survival);
        dev.max_abs = std::max(dev.max_abs, diff);
        sq += diff * diff;
        ++dev.points;
    }
    if (dev.points == 0)
        throw ComparisonError("engines " + std::string(engine_name(a)) + " and " + std::string(engine_name(b)) +
                              " share no supported sweep point");
    dev.rms = std::sqrt(sq / static_cast<double>(dev.points));
    return dev;
}

Deviation compare(const ComparisonReport& report, Engine a, Engine b) { return compare(report, a, report, b); }

std::vector<PairDeviation> ComparisonReport::pairwise() const {
    std::vector<PairDeviation> out;
    for (std::size_t i = 0; i < engines.size(); ++i)
        for (std::size_t j = i + 1; j < engines.size(); ++j) {
            try {
                out.push_back({engines[i], engines[j], compare(*this, engines[i], engines[j])});
            } catch (const ComparisonError&) {
            }
        }
    return out;
}

void emit_grating_csv(const GratingProfile& profile, std::ostream& out) {
    out << "theta,reA,imG_unused,amplitude,phase_unwrapped,mask,phase_gradient\n";
    const auto theta = profile.theta_grid();
    const auto g = profile.values();
    const auto amp = profile.amplitude();
    const auto phase = profile.phase_unwrapped();
    const auto mask = profile.mask();
    const auto grad = profile.phase_gradient();
    for (std::size_t j = 0; j < profile.size(); ++j)
        out << fmt12(theta[j]) << ',' << fmt12(g[j].real()) << ",0," << fmt12(amp[j]) << ',' << fmt12(phase[j]) << ','
            << fmt12(mask[j]) << ',' << fmt12(grad[j]) << '\n';
}

}  // namespace aokr
