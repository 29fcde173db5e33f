#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dataset.hpp"

namespace mosr {

struct ProblemSpec {
    std::string name;
    std::size_t n_variables { 0 };
    std::size_t train_size { 0 };
    std::size_t test_size { 0 };
    std::string sampling;
    double noise { 0.0 }; // stddev of Gaussian noise added to training targets
    bool literature_variant { false }; // friedman1 only
};

auto list_problems() -> std::vector<ProblemSpec>;
// Throws UsageError on an unknown name.
auto problem_spec(std::string_view name) -> ProblemSpec;

// Deterministic per seed. Train rows come first, then test rows.
auto generate(const ProblemSpec& spec, std::uint64_t seed) -> Dataset;

// The noise-free generating function of a problem evaluated at one input point.
auto problem_target(const ProblemSpec& spec, std::span<const double> x) -> double;

// Header-bearing numeric CSV. The first round(train_fraction * rows) rows train, the rest
// test; with a shuffle seed rows are permuted first.
auto load_csv(const std::string& path, std::string_view target_column, double train_fraction,
              std::optional<std::uint64_t> shuffle_seed = std::nullopt) -> Dataset;

} // namespace mosr
