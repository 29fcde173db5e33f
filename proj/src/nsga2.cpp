#include "mosr/nsga2.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numeric>

#include <fmt/core.h>

#include "mosr/errors.hpp"
#include "mosr/interpreter.hpp"
#include "mosr/metrics.hpp"

namespace mosr {

auto dominates(std::span<const double> a, std::span<const double> b) -> bool
{
    bool strictly = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) { return false; }
        if (a[i] < b[i]) { strictly = true; }
    }
    return strictly;
}

auto fast_nondominated_sort(const std::vector<std::vector<double>>& points, DuplicatePolicy duplicates) -> Fronts
{
    const std::size_t n = points.size();
    std::vector<std::vector<std::size_t>> dominated(n); // S_p: indices p dominates
    std::vector<std::size_t> counter(n, 0);             // n_p: how many dominate p
    Fronts fronts(1);

    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            bool first_wins = duplicates == DuplicatePolicy::FirstDominates && points[p] == points[q];
            if (first_wins || dominates(points[p], points[q])) {
                dominated[p].push_back(q);
                ++counter[q];
            } else if (dominates(points[q], points[p])) {
                dominated[q].push_back(p);
                ++counter[p];
            }
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        if (counter[p] == 0) { fronts[0].push_back(p); }
    }
    if (fronts[0].empty()) {
        return {};
    }
    for (std::size_t k = 0; !fronts[k].empty(); ++k) {
        std::vector<std::size_t> next;
        for (auto p : fronts[k]) {
            for (auto q : dominated[p]) {
                if (--counter[q] == 0) { next.push_back(q); }
            }
        }
        std::sort(next.begin(), next.end());
        if (next.empty()) { break; }
        fronts.push_back(std::move(next));
    }
    return fronts;
}

auto fast_nondominated_sort(std::vector<Individual>& population, DuplicatePolicy duplicates) -> Fronts
{
    std::vector<std::vector<double>> points;
    points.reserve(population.size());
    for (const auto& ind : population) {
        points.push_back(ind.objectives);
    }
    auto fronts = fast_nondominated_sort(points, duplicates);
    for (std::size_t k = 0; k < fronts.size(); ++k) {
        for (auto i : fronts[k]) {
            population[i].rank = k;
        }
    }
    return fronts;
}

auto crowding_distance(const std::vector<std::vector<double>>& front) -> std::vector<double>
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::size_t n = front.size();
    std::vector<double> distance(n, 0.0);
    if (n <= 2) {
        std::fill(distance.begin(), distance.end(), inf);
        return distance;
    }
    std::vector<std::size_t> order(n);
    for (std::size_t m = 0; m < front.front().size(); ++m) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return front[a][m] < front[b][m]; });
        distance[order.front()] = inf;
        distance[order.back()] = inf;
        double range = front[order.back()][m] - front[order.front()][m];
        if (range == 0.0) {
            continue;
        }
        for (std::size_t k = 1; k + 1 < n; ++k) {
            double ratio = (front[order[k + 1]][m] - front[order[k - 1]][m]) / range;
            // inf/inf when the objective saturated at the upper boundary
            if (!std::isnan(ratio)) {
                distance[order[k]] += ratio;
            }
        }
    }
    return distance;
}

void assign_crowding(std::vector<Individual>& population, std::span<const std::size_t> front)
{
    std::vector<std::vector<double>> points;
    points.reserve(front.size());
    for (auto i : front) {
        points.push_back(population[i].objectives);
    }
    auto distance = crowding_distance(points);
    for (std::size_t k = 0; k < front.size(); ++k) {
        population[front[k]].crowding = distance[k];
    }
}

auto crowded_compare(const Individual& a, const Individual& b) -> std::weak_ordering
{
    if (a.rank != b.rank) {
        return a.rank < b.rank ? std::weak_ordering::less : std::weak_ordering::greater;
    }
    if (a.crowding != b.crowding) {
        return a.crowding > b.crowding ? std::weak_ordering::less : std::weak_ordering::greater;
    }
    return std::weak_ordering::equivalent;
}

auto crowded_winner(const Individual& a, const Individual& b, Rng& rng) -> const Individual&
{
    auto order = crowded_compare(a, b);
    if (order < 0) { return a; }
    if (order > 0) { return b; }
    return std::bernoulli_distribution(0.5)(rng) ? a : b;
}

void EngineConfig::validate() const
{
    if (population_size < 2) {
        throw ConfigError("population_size must be at least 2");
    }
    if (max_evaluations < population_size) {
        throw ConfigError(fmt::format("max_evaluations ({}) must be at least population_size ({})",
                                      max_evaluations, population_size));
    }
    if (max_length < 1) { throw ConfigError("max_length must be at least 1"); }
    if (max_depth < 1) { throw ConfigError("max_depth must be at least 1"); }
    if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
        throw ConfigError("mutation_rate must lie in [0, 1]");
    }
    if (tournament_size < 1) { throw ConfigError("tournament_size must be at least 1"); }
    if (functions.empty()) { throw ConfigError("the function set is empty"); }
}

RegressionObjectives::RegressionObjectives(const Dataset& data, Range rows, ComplexityObjective complexity)
    : data_(&data)
    , rows_(rows)
    , complexity_(std::move(complexity))
{
    data.validate();
    if (rows.empty() || rows.end > data.rows()) {
        throw UsageError(fmt::format("objective rows [{}, {}) are empty or exceed {} rows", rows.begin, rows.end,
                                     data.rows()));
    }
    auto target = data.target_slice(rows);
    if (std::all_of(target.begin(), target.end(), [&](double v) { return v == target.front(); })) {
        throw UsageError("the target is constant on the objective rows");
    }
    if (complexity_.measure == ComplexityMeasure::Complexity) {
        complexity_.rules.validate();
    }
}

auto RegressionObjectives::operator()(const Tree& tree) const -> std::vector<double>
{
    auto pred = evaluate(tree, *data_, rows_);
    double r2 = pearson_r2(pred, data_->target_slice(rows_));
    return { 1.0 - r2, complexity_(tree) };
}

namespace {

auto environmental_selection(std::vector<Individual> merged, std::size_t size, DuplicatePolicy duplicates)
    -> std::vector<Individual>
{
    auto fronts = fast_nondominated_sort(merged, duplicates);
    std::vector<Individual> next;
    next.reserve(size);
    for (const auto& front : fronts) {
        assign_crowding(merged, front);
        if (next.size() + front.size() <= size) {
            for (auto i : front) { next.push_back(std::move(merged[i])); }
            if (next.size() == size) { break; }
            continue;
        }
        std::vector<std::size_t> order(front.begin(), front.end());
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return merged[a].crowding > merged[b].crowding; });
        for (std::size_t k = 0; next.size() < size; ++k) {
            next.push_back(std::move(merged[order[k]]));
        }
        break;
    }
    return next;
}

auto tournament(const std::vector<Individual>& population, std::size_t size, Rng& rng) -> const Individual&
{
    std::uniform_int_distribution<std::size_t> pick(0, population.size() - 1);
    const Individual* best = &population[pick(rng)];
    for (std::size_t k = 1; k < size; ++k) {
        best = &crowded_winner(*best, population[pick(rng)], rng);
    }
    return *best;
}

} // namespace

auto run(const EngineConfig& config, std::size_t n_variables, const ObjectiveFunction& objectives,
         const GenerationObserver& observer) -> EngineResult
{
    config.validate();
    if (!objectives) {
        throw ConfigError("no objective function given");
    }

    Rng rng(config.seed);
    const MutationContext ctx { config.functions, n_variables, config.max_length, config.max_depth };
    std::size_t arity = 0;

    auto make = [&](Tree tree) {
        auto values = objectives(tree);
        if (arity == 0) { arity = values.size(); }
        if (values.empty() || values.size() != arity) {
            throw ConfigError(fmt::format("objective function returned {} values, expected {}", values.size(), arity));
        }
        return Individual { std::move(tree), std::move(values), 0, 0.0 };
    };

    std::vector<Individual> population;
    population.reserve(config.population_size);
    for (std::size_t i = 0; i < config.population_size; ++i) {
        population.push_back(make(random_tree(rng, config.functions, n_variables, config.max_length, config.max_depth)));
    }
    std::size_t evaluations = population.size();
    for (const auto& front : fast_nondominated_sort(population, config.selection_duplicates)) {
        assign_crowding(population, front);
    }
    if (observer) { observer(0, evaluations, population); }

    std::bernoulli_distribution mutation(config.mutation_rate);
    std::size_t generation = 0;
    while (evaluations < config.max_evaluations) {
        std::vector<Individual> offspring;
        offspring.reserve(config.population_size);
        for (std::size_t k = 0; k < config.population_size; ++k) {
            const auto& p1 = tournament(population, config.tournament_size, rng);
            const auto& p2 = tournament(population, config.tournament_size, rng);
            auto child = crossover(p1.tree, p2.tree, rng, config.max_length, config.max_depth);
            if (mutation(rng)) {
                child = mutate(child, rng, ctx);
            }
            offspring.push_back(make(std::move(child)));
        }
        std::vector<Individual> merged = std::move(population);
        std::move(offspring.begin(), offspring.end(), std::back_inserter(merged));
        evaluations += config.population_size;
        ++generation;
        population = environmental_selection(std::move(merged), config.population_size, config.selection_duplicates);
        if (observer) { observer(generation, evaluations, population); }
    }
    return { std::move(population), evaluations, generation };
}

auto run(const EngineConfig& config, const Dataset& data, Range rows, const ComplexityObjective& complexity,
         const GenerationObserver& observer) -> EngineResult
{
    config.validate();
    RegressionObjectives objectives(data, rows, complexity);
    return run(config, data.n_variables(), std::cref(objectives), observer);
}

auto pareto_front(const std::vector<Individual>& population) -> std::vector<Individual>
{
    if (population.empty()) { return {}; }
    std::vector<std::vector<double>> points;
    points.reserve(population.size());
    for (const auto& ind : population) {
        points.push_back(ind.objectives);
    }
    auto fronts = fast_nondominated_sort(points);

    std::vector<Individual> front;
    for (auto i : fronts.front()) {
        bool seen = std::any_of(front.begin(), front.end(),
                                [&](const Individual& f) { return f.objectives == population[i].objectives; });
        if (!seen) {
            front.push_back(population[i]);
            front.back().rank = 0;
        }
    }
    std::stable_sort(front.begin(), front.end(), [](const Individual& a, const Individual& b) {
        const auto& x = a.objectives;
        const auto& y = b.objectives;
        if (x.size() > 1 && x[1] != y[1]) { return x[1] < y[1]; }
        return x[0] < y[0];
    });
    return front;
}

} // namespace mosr
