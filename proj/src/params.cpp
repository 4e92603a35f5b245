#include "aokr/params.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>

#include "aokr/error.hpp"

namespace aokr {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw ConfigError(std::string(name) + " must be finite and strictly positive");
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw ConfigError("invalid number for '" + key + "': " + value);
    }
    if (used != value.size()) throw ConfigError("invalid number for '" + key + "': " + value);
    return v;
}

int parse_int(const std::string& key, const std::string& value) {
    int v = 0;
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, v);
    if (ec != std::errc{} || ptr != end) throw ConfigError("invalid integer for '" + key + "': " + value);
    return v;
}

}  // namespace

void PhysicalConfig::validate() const {
    require_positive(mass, "mass");
    require_positive(k_l, "k_l");
    require_positive(omega_rabi, "omega_rabi");
    require_positive(gamma, "gamma");
    require_positive(pulse_duration, "pulse_duration");
    if (!std::isfinite(detuning)) throw ConfigError("detuning must be finite");
    if (!std::isfinite(period_offset)) throw ConfigError("period_offset must be finite");
    if (ell < 1) throw ConfigError("ell must be >= 1");
    if (kicks < 0) throw ConfigError("kicks must be >= 0");
}

double epsilon_rate(const PhysicalConfig& phys) {
    return 4.0 * constants::hbar * phys.k_l * phys.k_l / phys.mass;
}

double talbot_time(const PhysicalConfig& phys) {
    phys.validate();
    return std::numbers::pi * phys.mass / (constants::hbar * phys.k_l * phys.k_l);
}

double period_offset_for_epsilon(const PhysicalConfig& phys, double epsilon) {
    phys.validate();
    return epsilon / epsilon_rate(phys);
}

double mask_width(const PhysicalConfig& phys) {
    return std::sqrt(4.0 * phys.gamma / (phys.omega_rabi * phys.omega_rabi * phys.pulse_duration));
}

double raman_nath_parameter(const PhysicalConfig& phys) {
    return epsilon_rate(phys) * phys.pulse_duration;
}

bool raman_nath_violated(const PhysicalConfig& phys) {
    return raman_nath_parameter(phys) > raman_nath_warning_threshold;
}

DimensionlessConfig derive_dimensionless(const PhysicalConfig& phys, double beta) {
    phys.validate();
    if (!(beta >= 0.0 && beta < 1.0)) throw ConfigError("beta must lie in [0, 1)");

    DimensionlessConfig d;
    d.epsilon = epsilon_rate(phys) * phys.period_offset;
    d.ell = phys.ell;
    d.beta = beta;
    d.sigma_theta = mask_width(phys);
    d.sigma_j = std::sqrt(phys.pulse_duration / (8.0 * phys.gamma)) * phys.omega_rabi * std::abs(d.epsilon);
    d.kicks = phys.kicks;
    d.resonant = phys.detuning == 0.0;

    if (!std::isfinite(d.epsilon) || !std::isfinite(d.sigma_theta) || !std::isfinite(d.sigma_j) ||
        !(d.sigma_theta > 0.0))
        throw ConfigError("dimensionless conversion produced a non-finite or degenerate value");
    return d;
}

double drift_angle(int ell, double beta) {
    // pi ell (1 + 2 beta) = 2 pi * ell (1/2 + beta); reduce the turn fraction first.
    double turns = static_cast<double>(ell) * (0.5 + beta);
    turns -= std::floor(turns);
    double angle = constants::two_pi * turns;
    if (angle > std::numbers::pi) angle -= constants::two_pi;
    return angle;
}

double wrap_two_pi(double angle) {
    double r = angle - constants::two_pi * std::floor(angle / constants::two_pi);
    if (r >= constants::two_pi) r = 0.0;
    return r;
}

KeyValueMap parse_key_value(std::istream& in) {
    KeyValueMap out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        out[key] = value;
    }
    return out;
}

KeyValueMap load_key_value_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_key_value(in);
}

bool apply_physical_key(PhysicalConfig& phys, const std::string& key, const std::string& value) {
    if (key == "mass") phys.mass = parse_double(key, value);
    else if (key == "k_l") phys.k_l = parse_double(key, value);
    else if (key == "omega_rabi") phys.omega_rabi = parse_double(key, value);
    else if (key == "detuning") phys.detuning = parse_double(key, value);
    else if (key == "gamma") phys.gamma = parse_double(key, value);
    else if (key == "pulse_duration") phys.pulse_duration = parse_double(key, value);
    else if (key == "period_offset") phys.period_offset = parse_double(key, value);
    else if (key == "ell") phys.ell = parse_int(key, value);
    else if (key == "kicks") phys.kicks = parse_int(key, value);
    else return false;
    return true;
}

}  // namespace aokr
