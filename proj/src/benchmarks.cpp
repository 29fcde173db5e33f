#include "mosr/benchmarks.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <system_error>

#include <fmt/core.h>

#include "mosr/errors.hpp"
#include "mosr/variation.hpp"

namespace mosr {

namespace {

using Point = std::vector<double>;

struct Bounds {
    double lo;
    double hi;
};

auto uniform_points(Rng& rng, std::size_t count, std::span<const Bounds> bounds) -> std::vector<Point>
{
    std::vector<Point> points(count, Point(bounds.size()));
    for (auto& p : points) {
        for (std::size_t j = 0; j < bounds.size(); ++j) {
            p[j] = std::uniform_real_distribution<double>(bounds[j].lo, bounds[j].hi)(rng);
        }
    }
    return points;
}

auto uniform_points(Rng& rng, std::size_t count, std::size_t dims, Bounds b) -> std::vector<Point>
{
    std::vector<Bounds> bounds(dims, b);
    return uniform_points(rng, count, bounds);
}

// start, start + step, ... up to and including `end` (with a small tolerance for rounding).
auto grid_axis(double start, double end, double step) -> std::vector<double>
{
    std::vector<double> axis;
    for (std::size_t i = 0;; ++i) {
        double v = start + static_cast<double>(i) * step;
        if (v > end + 1e-9 * step) { break; }
        axis.push_back(v);
    }
    return axis;
}

auto grid_points(double start, double end, double step, std::size_t dims) -> std::vector<Point>
{
    auto axis = grid_axis(start, end, step);
    std::vector<Point> points;
    if (dims == 1) {
        for (double v : axis) { points.push_back({ v }); }
    } else {
        for (double a : axis) {
            for (double b : axis) { points.push_back({ a, b }); }
        }
    }
    return points;
}

struct Partition {
    std::vector<Point> train;
    std::vector<Point> test;
};

auto sample_inputs(const ProblemSpec& spec, Rng& rng) -> Partition
{
    const auto& n = spec.name;
    if (n == "keijzer5") {
        const std::array<Bounds, 3> b { { { -1, 1 }, { 1, 2 }, { -1, 1 } } };
        auto train = uniform_points(rng, spec.train_size, b);
        return { std::move(train), uniform_points(rng, spec.test_size, b) };
    }
    if (n == "vladislavleva1") {
        auto train = uniform_points(rng, spec.train_size, 2, { 0.3, 4.0 });
        return { std::move(train), grid_points(-0.2, 4.2, 0.1, 2) };
    }
    if (n == "vladislavleva2") {
        return { grid_points(0.05, 10.0, 0.1, 1), grid_points(-0.5, 10.5, 0.05, 1) };
    }
    if (n == "vladislavleva7") {
        auto train = uniform_points(rng, spec.train_size, 2, { 0.05, 6.05 });
        return { std::move(train), uniform_points(rng, spec.test_size, 2, { -0.25, 6.35 }) };
    }
    if (n == "pagie1") {
        auto train = grid_points(-5.0, 5.0, 0.4, 2);
        return { std::move(train), uniform_points(rng, spec.test_size, 2, { -5.0, 5.0 }) };
    }
    // poly10, friedman1, friedman2
    Bounds b = n == "poly10" ? Bounds { -1.0, 1.0 } : Bounds { 0.0, 1.0 };
    auto train = uniform_points(rng, spec.train_size, spec.n_variables, b);
    return { std::move(train), uniform_points(rng, spec.test_size, spec.n_variables, b) };
}

auto sq(double v) -> double { return v * v; }

auto trim(std::string_view s) -> std::string_view
{
    auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) { return {}; }
    auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

auto split_commas(std::string_view line) -> std::vector<std::string_view>
{
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (;;) {
        auto comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) { break; }
        start = comma + 1;
    }
    return cells;
}

} // namespace

auto list_problems() -> std::vector<ProblemSpec>
{
    return {
        { "keijzer5", 3, 1000, 10000, "x1,x3 ~ U[-1,1], x2 ~ U[1,2]; test from the same distribution", 0.0 },
        { "vladislavleva1", 2, 100, 2025, "train U[0.3,4]^2; test grid [-0.2,4.2]^2 step 0.1", 0.0 },
        { "vladislavleva2", 1, 100, 221, "train grid [0.05,10] step 0.1; test grid [-0.5,10.5] step 0.05", 0.0 },
        { "vladislavleva7", 2, 300, 1000, "train U[0.05,6.05]^2; test U[-0.25,6.35]^2", 0.0 },
        { "pagie1", 2, 676, 1000, "train grid [-5,5]^2 step 0.4; test U[-5,5]^2", 0.0 },
        { "poly10", 10, 250, 250, "U[-1,1]^10", 0.0 },
        { "friedman1", 10, 500, 5000, "U[0,1]^10; N(0,1) noise on training targets", 1.0 },
        { "friedman2", 10, 500, 5000, "U[0,1]^10; N(0,1) noise on training targets", 1.0 },
    };
}

auto problem_spec(std::string_view name) -> ProblemSpec
{
    for (auto& spec : list_problems()) {
        if (spec.name == name) { return spec; }
    }
    throw UsageError(fmt::format("unknown problem '{}'", name));
}

auto problem_target(const ProblemSpec& spec, std::span<const double> x) -> double
{
    const auto& n = spec.name;
    if (x.size() != spec.n_variables) {
        throw UsageError(fmt::format("{} expects {} inputs, got {}", n, spec.n_variables, x.size()));
    }
    if (n == "keijzer5") {
        return 30.0 * x[0] * x[2] / ((x[0] - 10.0) * sq(x[1]));
    }
    if (n == "vladislavleva1") {
        return std::exp(-sq(x[0] - 1.0)) / (1.2 + sq(x[1] - 2.5));
    }
    if (n == "vladislavleva2") {
        double v = x[0];
        return std::exp(-v) * v * v * v * std::cos(v) * std::sin(v) * (std::cos(v) * sq(std::sin(v)) - 1.0);
    }
    if (n == "vladislavleva7") {
        return (x[0] - 3.0) * (x[1] - 3.0) + 2.0 * std::sin((x[0] - 4.0) * (x[1] - 4.0));
    }
    if (n == "pagie1") {
        return 1.0 / (1.0 + std::pow(x[0], -4.0)) + 1.0 / (1.0 + std::pow(x[1], -4.0));
    }
    if (n == "poly10") {
        return x[0] * x[1] + x[2] * x[3] + x[4] * x[5] + x[0] * x[6] * x[8] + x[2] * x[5] * x[9];
    }
    if (n == "friedman1") {
        if (spec.literature_variant) {
            return 0.1 * std::exp(4.0 * x[0]) + 4.0 / (1.0 + std::exp(-20.0 * (x[1] - 0.5))) + 3.0 * x[2]
                + 2.0 * x[3] + x[4];
        }
        return 0.1 * std::exp(4.0 * x[0]) + 4.0 / (1.0 + std::exp(-20.0 * x[1]) + 10.0) + 3.0 * x[2] + 2.0 * x[1]
            + x[4];
    }
    if (n == "friedman2") {
        return 10.0 * std::sin(std::numbers::pi * x[0] * x[1]) + 20.0 * sq(x[2] - 0.5) + 10.0 * x[3] + 5.0 * x[4];
    }
    throw UsageError(fmt::format("unknown problem '{}'", n));
}

auto generate(const ProblemSpec& spec, std::uint64_t seed) -> Dataset
{
    (void)problem_spec(spec.name);
    Rng rng(seed);
    auto inputs = sample_inputs(spec, rng);

    Dataset data;
    for (std::size_t j = 0; j < spec.n_variables; ++j) {
        data.variable_names.push_back(fmt::format("x{}", j));
    }
    data.columns.assign(spec.n_variables, {});
    std::normal_distribution<double> noise(0.0, 1.0);
    auto append = [&](const std::vector<Point>& points, bool noisy) {
        for (const auto& p : points) {
            for (std::size_t j = 0; j < p.size(); ++j) {
                data.columns[j].push_back(p[j]);
            }
            double y = problem_target(spec, p);
            if (noisy && spec.noise > 0.0) {
                y += spec.noise * noise(rng);
            }
            data.target.push_back(y);
        }
    };
    append(inputs.train, true);
    append(inputs.test, false);
    data.train = { 0, inputs.train.size() };
    data.test = { inputs.train.size(), data.rows() };
    return data;
}

auto load_csv(const std::string& path, std::string_view target_column, double train_fraction,
              std::optional<std::uint64_t> shuffle_seed) -> Dataset
{
    if (!(train_fraction >= 0.0 && train_fraction <= 1.0)) {
        throw UsageError(fmt::format("train fraction {} is outside [0, 1]", train_fraction));
    }
    std::ifstream in(path);
    if (!in) {
        throw CsvError(fmt::format("cannot open '{}'", path));
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) { break; }
    }
    if (trim(line).empty()) {
        throw CsvError(fmt::format("'{}' is empty", path));
    }
    std::vector<std::string> header;
    for (auto cell : split_commas(line)) {
        header.emplace_back(cell);
    }
    auto target_it = std::find(header.begin(), header.end(), target_column);
    if (target_it == header.end()) {
        throw CsvError(fmt::format("'{}' has no column named '{}'", path, target_column), line_no);
    }
    const auto target_index = static_cast<std::size_t>(target_it - header.begin());

    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) { continue; }
        auto cells = split_commas(line);
        if (cells.size() != header.size()) {
            throw CsvError(fmt::format("{}:{}: expected {} cells, found {}", path, line_no, header.size(),
                                       cells.size()),
                           line_no);
        }
        std::vector<double> row(cells.size());
        for (std::size_t j = 0; j < cells.size(); ++j) {
            auto cell = cells[j];
            auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), row[j]);
            if (cell.empty() || ec != std::errc() || end != cell.data() + cell.size()) {
                throw CsvError(fmt::format("{}: row {}, column {} ('{}'): '{}' is not a number", path, line_no, j + 1,
                                           header[j], cell),
                               line_no, j + 1);
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw CsvError(fmt::format("'{}' has a header but no data rows", path));
    }

    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), 0);
    if (shuffle_seed) {
        Rng rng(*shuffle_seed);
        std::shuffle(order.begin(), order.end(), rng);
    }

    Dataset data;
    data.target_name = header[target_index];
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j != target_index) { data.variable_names.push_back(header[j]); }
    }
    data.columns.assign(data.variable_names.size(), {});
    for (auto r : order) {
        std::size_t c = 0;
        for (std::size_t j = 0; j < header.size(); ++j) {
            if (j == target_index) {
                data.target.push_back(rows[r][j]);
            } else {
                data.columns[c++].push_back(rows[r][j]);
            }
        }
    }
    auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(rows.size())));
    data.train = { 0, n_train };
    data.test = { n_train, rows.size() };
    return data;
}

} // namespace mosr
