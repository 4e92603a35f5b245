#pragma once

#include <vector>

namespace aokr {

/// Survival probabilities S_0..S_N; entry n is the survival after n pulses.
/// std_errors is empty for deterministic engines.
struct SurvivalSeries {
    std::vector<double> values;
    std::vector<double> std_errors;

    double final_value() const { return values.back(); }
    double final_std_error() const { return std_errors.empty() ? 0.0 : std_errors.back(); }
    int kicks() const { return static_cast<int>(values.size()) - 1; }
};

}  // namespace aokr
