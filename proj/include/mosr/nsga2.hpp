#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "complexity.hpp"
#include "dataset.hpp"
#include "tree.hpp"
#include "variation.hpp"

namespace mosr {

struct Individual {
    Tree tree;
    std::vector<double> objectives; // all minimized
    std::size_t rank { 0 };         // valid after sorting
    double crowding { 0.0 };        // valid after sorting
};

// Indices into the population, front 0 first.
using Fronts = std::vector<std::vector<std::size_t>>;

// a is no worse than b everywhere and strictly better somewhere.
auto dominates(std::span<const double> a, std::span<const double> b) -> bool;

// How identical objective vectors relate during sorting.
enum class DuplicatePolicy {
    Nondominated,   // equal vectors share a front
    FirstDominates, // among equal vectors the earlier one dominates the later ones
};

auto fast_nondominated_sort(const std::vector<std::vector<double>>& points,
                            DuplicatePolicy duplicates = DuplicatePolicy::Nondominated) -> Fronts;
// Also writes each individual's rank.
auto fast_nondominated_sort(std::vector<Individual>& population,
                            DuplicatePolicy duplicates = DuplicatePolicy::Nondominated) -> Fronts;

// Crowding distance of each point of one front: boundary points per objective get
// +infinity, interior points accumulate (neighbour gap) / (objective range).
auto crowding_distance(const std::vector<std::vector<double>>& front) -> std::vector<double>;
void assign_crowding(std::vector<Individual>& population, std::span<const std::size_t> front);

// less: a is preferred (lower rank, or equal rank and larger crowding).
auto crowded_compare(const Individual& a, const Individual& b) -> std::weak_ordering;
// Binary crowded tournament; full ties are settled by a coin flip.
auto crowded_winner(const Individual& a, const Individual& b, Rng& rng) -> const Individual&;

struct EngineConfig {
    std::size_t population_size { 500 };
    std::size_t max_evaluations { 200'000 };
    std::size_t max_length { 100 };
    std::size_t max_depth { 17 };
    double mutation_rate { 0.25 };
    std::size_t tournament_size { 2 };
    std::uint64_t seed { 0 };
    std::vector<Symbol> functions { kAllFunctions.begin(), kAllFunctions.end() };
    // Scale-free R^2 and integer-valued complexities give many distinct trees the same
    // objective vector; with Nondominated those clones can fill the whole population.
    DuplicatePolicy selection_duplicates { DuplicatePolicy::FirstDominates };

    // Throws ConfigError when an invariant is violated.
    void validate() const;
};

using ObjectiveFunction = std::function<std::vector<double>(const Tree&)>;

// [1 - R^2 on `rows`, complexity]; the symbolic regression objective pair.
class RegressionObjectives {
public:
    RegressionObjectives(const Dataset& data, Range rows, ComplexityObjective complexity);

    [[nodiscard]] auto operator()(const Tree& tree) const -> std::vector<double>;
    [[nodiscard]] auto n_variables() const noexcept -> std::size_t { return data_->n_variables(); }

private:
    const Dataset* data_;
    Range rows_;
    ComplexityObjective complexity_;
};

struct EngineResult {
    std::vector<Individual> population;
    std::size_t evaluations { 0 };
    std::size_t generations { 0 }; // offspring generations produced
};

// Called after initialization (generation 0) and after every environmental selection.
using GenerationObserver =
    std::function<void(std::size_t generation, std::size_t evaluations, const std::vector<Individual>& population)>;

// Elitist NSGA-II. Each created tree is evaluated exactly once; the loop stops as soon as
// the evaluation count reaches max_evaluations, so it ends in
// [max_evaluations, max_evaluations + population_size).
auto run(const EngineConfig& config, std::size_t n_variables, const ObjectiveFunction& objectives,
         const GenerationObserver& observer = {}) -> EngineResult;

auto run(const EngineConfig& config, const Dataset& data, Range rows, const ComplexityObjective& complexity,
         const GenerationObserver& observer = {}) -> EngineResult;

// Front 0, one representative per distinct objective vector, sorted by the complexity
// objective (index 1) ascending.
auto pareto_front(const std::vector<Individual>& population) -> std::vector<Individual>;

} // namespace mosr
