#include "mosr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/core.h>

#include "mosr/errors.hpp"

namespace mosr {

namespace {

void check_inputs(std::span<const double> pred, std::span<const double> actual, const char* what)
{
    if (pred.empty() || actual.empty()) {
        throw UsageError(fmt::format("{}: empty input", what));
    }
    if (pred.size() != actual.size()) {
        throw UsageError(fmt::format("{}: length mismatch ({} vs {})", what, pred.size(), actual.size()));
    }
}

auto all_finite(std::span<const double> v) -> bool
{
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

auto is_constant(std::span<const double> v) -> bool
{
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *lo == *hi;
}

auto mean(std::span<const double> v) -> double
{
    double sum = 0.0;
    for (double x : v) { sum += x; }
    return sum / static_cast<double>(v.size());
}

// Centered sums, each side divided by its largest absolute deviation so large magnitudes
// do not overflow. Scaled sums keep correlations exact; slopes need the scales back.
struct Moments {
    double mean_x, mean_y;
    double scale_x, scale_y;
    double sxx, syy, sxy;
};

auto moments(std::span<const double> x, std::span<const double> y) -> Moments
{
    Moments m { mean(x), mean(y), 0.0, 0.0, 0.0, 0.0, 0.0 };
    for (std::size_t i = 0; i < x.size(); ++i) {
        m.scale_x = std::max(m.scale_x, std::abs(x[i] - m.mean_x));
        m.scale_y = std::max(m.scale_y, std::abs(y[i] - m.mean_y));
    }
    m.scale_x = m.scale_x > 0.0 ? m.scale_x : 1.0;
    m.scale_y = m.scale_y > 0.0 ? m.scale_y : 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dx = (x[i] - m.mean_x) / m.scale_x;
        double dy = (y[i] - m.mean_y) / m.scale_y;
        m.sxx += dx * dx;
        m.syy += dy * dy;
        m.sxy += dx * dy;
    }
    return m;
}

} // namespace

auto pearson_r2(std::span<const double> pred, std::span<const double> actual) -> double
{
    check_inputs(pred, actual, "pearson_r2");
    if (!all_finite(pred) || !all_finite(actual) || is_constant(pred) || is_constant(actual)) {
        return 0.0;
    }
    auto m = moments(pred, actual);
    double r2 = (m.sxy / m.sxx) * (m.sxy / m.syy);
    if (!std::isfinite(r2)) {
        return 0.0;
    }
    return std::clamp(r2, 0.0, 1.0);
}

auto nmse(std::span<const double> pred, std::span<const double> actual) -> double
{
    check_inputs(pred, actual, "nmse");
    if (is_constant(actual)) {
        throw UndefinedTargetError("nmse: target has zero variance");
    }
    if (!all_finite(pred)) {
        return std::numeric_limits<double>::infinity();
    }
    double my = mean(actual);
    double var = 0.0;
    double mse = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        double d = actual[i] - my;
        double e = pred[i] - actual[i];
        var += d * d;
        mse += e * e;
    }
    double result = mse / var; // the 1/n factors cancel
    return std::isnan(result) ? std::numeric_limits<double>::infinity() : result;
}

auto fit_linear_scaling(std::span<const double> pred, std::span<const double> actual) -> LinearScaling
{
    check_inputs(pred, actual, "fit_linear_scaling");
    if (!all_finite(pred) || is_constant(pred)) {
        return { 0.0, mean(actual) };
    }
    auto m = moments(pred, actual);
    double slope = (m.sxy / m.sxx) * (m.scale_y / m.scale_x);
    if (!std::isfinite(slope)) {
        return { 0.0, m.mean_y };
    }
    return { slope, m.mean_y - slope * m.mean_x };
}

auto scaled_nmse(std::span<const double> pred, std::span<const double> actual, LinearScaling scaling) -> double
{
    check_inputs(pred, actual, "scaled_nmse");
    std::vector<double> scaled(pred.size());
    for (std::size_t i = 0; i < pred.size(); ++i) {
        scaled[i] = scaling.slope * pred[i] + scaling.intercept;
    }
    return nmse(scaled, actual);
}

auto accuracy_report(std::span<const double> pred, std::span<const double> actual) -> AccuracyReport
{
    auto scaling = fit_linear_scaling(pred, actual);
    return {
        pearson_r2(pred, actual),
        nmse(pred, actual),
        scaled_nmse(pred, actual, scaling),
        scaling.slope,
        scaling.intercept,
    };
}

} // namespace mosr
