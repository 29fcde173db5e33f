#pragma once

#include <span>

namespace mosr {

struct LinearScaling {
    double slope { 1.0 };
    double intercept { 0.0 };
};

struct AccuracyReport {
    double r2 { 0.0 };
    double nmse_raw { 0.0 };
    double nmse_scaled { 0.0 };
    double slope { 1.0 };
    double intercept { 0.0 };
};

// Squared Pearson correlation. Zero variance in either vector, or any non-finite entry,
// yields 0. Throws UsageError on empty or mismatched inputs.
auto pearson_r2(std::span<const double> pred, std::span<const double> actual) -> double;

// Mean squared error over the population variance of `actual`. Any non-finite prediction
// yields +infinity; a constant `actual` throws UndefinedTargetError.
auto nmse(std::span<const double> pred, std::span<const double> actual) -> double;

// OLS fit of actual ~ slope * pred + intercept. Constant or non-finite pred gives
// slope 0 and intercept mean(actual).
auto fit_linear_scaling(std::span<const double> pred, std::span<const double> actual) -> LinearScaling;

auto scaled_nmse(std::span<const double> pred, std::span<const double> actual, LinearScaling scaling) -> double;

// All of the above with scaling fit on the same rows.
auto accuracy_report(std::span<const double> pred, std::span<const double> actual) -> AccuracyReport;

} // namespace mosr
