#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "mosr/errors.hpp"
#include "mosr/nsga2.hpp"

using namespace mosr;
using Points = std::vector<std::vector<double>>;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Repeatedly peel off the points no remaining point dominates.
auto brute_force_fronts(const Points& points) -> Fronts
{
    Fronts fronts;
    std::vector<bool> done(points.size(), false);
    std::size_t left = points.size();
    while (left > 0) {
        std::vector<std::size_t> front;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (done[i]) { continue; }
            bool dominated = false;
            for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
                dominated = !done[j] && dominates(points[j], points[i]);
            }
            if (!dominated) { front.push_back(i); }
        }
        for (auto i : front) { done[i] = true; }
        left -= front.size();
        fronts.push_back(std::move(front));
    }
    return fronts;
}

auto normalized(Fronts fronts) -> Fronts
{
    for (auto& f : fronts) { std::sort(f.begin(), f.end()); }
    return fronts;
}

auto quadratic_data() -> Dataset
{
    Dataset d;
    d.variable_names = { "x0" };
    d.columns.resize(1);
    for (int i = 0; i < 40; ++i) {
        double x = -2.0 + 0.1 * i;
        d.columns[0].push_back(x);
        d.target.push_back(x * x + x);
    }
    d.train = { 0, 30 };
    d.test = { 30, 40 };
    return d;
}

auto small_config() -> EngineConfig
{
    EngineConfig c;
    c.population_size = 50;
    c.max_evaluations = 1000;
    c.max_length = 30;
    return c;
}

auto individual(std::vector<double> objectives, std::size_t rank, double crowding) -> Individual
{
    return { Tree({ Node::var(0) }), std::move(objectives), rank, crowding };
}

} // namespace

TEST_CASE("dominates")
{
    CHECK(dominates(std::vector { 1.0, 1.0 }, std::vector { 2.0, 2.0 }));
    CHECK(dominates(std::vector { 1.0, 2.0 }, std::vector { 1.0, 3.0 }));
    CHECK_FALSE(dominates(std::vector { 1.0, 2.0 }, std::vector { 2.0, 1.0 }));
    CHECK_FALSE(dominates(std::vector { 1.0, 1.0 }, std::vector { 1.0, 1.0 }));
    CHECK_FALSE(dominates(std::vector { 2.0, 2.0 }, std::vector { 1.0, 1.0 }));
}

TEST_CASE("fast_nondominated_sort examples")
{
    // A..E
    Points p { { 1, 4 }, { 2, 2 }, { 4, 1 }, { 3, 3 }, { 4, 4 } };
    CHECK(normalized(fast_nondominated_sort(p)) == Fronts { { 0, 1, 2 }, { 3 }, { 4 } });

    Points same(6, { 0.5, 3.0 });
    CHECK(normalized(fast_nondominated_sort(same)) == Fronts { { 0, 1, 2, 3, 4, 5 } });

    Points chain { { 3, 3 }, { 1, 1 }, { 2, 2 } };
    CHECK(fast_nondominated_sort(chain) == Fronts { { 1 }, { 2 }, { 0 } });

    CHECK(fast_nondominated_sort(Points {}).empty());
}

TEST_CASE("FirstDominates splits identical vectors into successive fronts")
{
    Points p { { 1, 1 }, { 2, 0 }, { 1, 1 }, { 1, 1 } };
    auto fronts = normalized(fast_nondominated_sort(p, DuplicatePolicy::FirstDominates));
    CHECK(fronts == Fronts { { 0, 1 }, { 2 }, { 3 } });
}

TEST_CASE("fast_nondominated_sort writes ranks")
{
    std::vector<Individual> pop;
    for (auto o : Points { { 1, 4 }, { 2, 2 }, { 4, 1 }, { 3, 3 }, { 4, 4 } }) {
        pop.push_back(individual(o, 99, 0.0));
    }
    fast_nondominated_sort(pop);
    CHECK(pop[0].rank == 0);
    CHECK(pop[1].rank == 0);
    CHECK(pop[2].rank == 0);
    CHECK(pop[3].rank == 1);
    CHECK(pop[4].rank == 2);
}

TEST_CASE("property: sort matches a brute-force oracle")
{
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> size(1, 64);
    std::uniform_int_distribution<int> arity(2, 3);
    // small integer grid forces ties and duplicates
    std::uniform_int_distribution<int> coord(0, 6);
    for (int trial = 0; trial < 250; ++trial) {
        int n = size(rng);
        int m = arity(rng);
        Points p(n, std::vector<double>(m));
        for (auto& v : p) {
            for (auto& x : v) { x = coord(rng); }
        }
        auto fronts = fast_nondominated_sort(p);
        REQUIRE(normalized(fronts) == normalized(brute_force_fronts(p)));
        std::size_t total = 0;
        for (const auto& f : fronts) { total += f.size(); }
        REQUIRE(total == p.size());
    }
}

TEST_CASE("crowding distance")
{
    auto d = crowding_distance({ { 1, 4 }, { 2, 2 }, { 4, 1 } });
    REQUIRE(d.size() == 3);
    CHECK(d[0] == kInf);
    CHECK(d[1] == doctest::Approx(2.0));
    CHECK(d[2] == kInf);

    for (const auto& d2 : { crowding_distance({ { 1, 1 } }), crowding_distance({ { 1, 1 }, { 2, 0 } }) }) {
        for (double v : d2) { CHECK(v == kInf); }
    }
    CHECK(crowding_distance({}).empty());

    // the middle copy of three duplicates sits between zero gaps
    auto dup = crowding_distance({ { 1, 1 }, { 1, 1 }, { 1, 1 } });
    CHECK(std::count(dup.begin(), dup.end(), 0.0) == 1);

    auto sat = crowding_distance({ { 0.1, 5 }, { 0.2, kInf }, { 0.0, 6 }, { 0.3, 4 } });
    for (double v : sat) { CHECK_FALSE(std::isnan(v)); }
}

TEST_CASE("crowded comparison")
{
    auto r0 = individual({ 0, 0 }, 0, 0.5);
    auto r1 = individual({ 0, 0 }, 1, kInf);
    CHECK(crowded_compare(r0, r1) == std::weak_ordering::less);
    CHECK(crowded_compare(r1, r0) == std::weak_ordering::greater);

    auto wide = individual({ 0, 0 }, 0, kInf);
    auto narrow = individual({ 0, 0 }, 0, 1.0);
    CHECK(crowded_compare(wide, narrow) == std::weak_ordering::less);
    CHECK(crowded_compare(narrow, narrow) == std::weak_ordering::equivalent);

    Rng rng(1);
    CHECK(&crowded_winner(r0, r1, rng) == &r0);
    CHECK(&crowded_winner(narrow, wide, rng) == &wide);

    auto twin = narrow;
    int first = 0;
    for (int i = 0; i < 200; ++i) {
        if (&crowded_winner(narrow, twin, rng) == &narrow) { ++first; }
    }
    CHECK(first > 50);
    CHECK(first < 150);

    Rng a(9);
    Rng b(9);
    for (int i = 0; i < 20; ++i) {
        CHECK(&crowded_winner(narrow, twin, a) == &crowded_winner(narrow, twin, b));
    }
}

TEST_CASE("engine configuration validation")
{
    auto c = small_config();
    CHECK_NOTHROW(c.validate());
    c.population_size = 1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = small_config();
    c.max_evaluations = c.population_size - 1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = small_config();
    c.mutation_rate = 1.5;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = small_config();
    c.functions.clear();
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("regression objectives reject bad datasets before evolving")
{
    auto d = quadratic_data();
    ComplexityObjective complexity;
    CHECK_THROWS_AS(RegressionObjectives(d, Range { 5, 5 }, complexity), UsageError);
    CHECK_THROWS_AS(RegressionObjectives(d, Range { 0, 41 }, complexity), UsageError);
    auto flat = d;
    std::fill(flat.target.begin(), flat.target.end(), 2.0);
    CHECK_THROWS_AS(run(small_config(), flat, flat.train, complexity), UsageError);

    RegressionObjectives objectives(d, d.train, complexity);
    auto v = objectives(Tree({ Node::function(Symbol::Add, 2), Node::function(Symbol::Square, 1), Node::var(0),
                               Node::var(0) }));
    REQUIRE(v.size() == 2);
    CHECK(v[0] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("budget exactness and one evaluation per created tree")
{
    auto d = quadratic_data();
    RegressionObjectives objectives(d, d.train, ComplexityObjective {});
    for (auto [pop, budget] : { std::pair<std::size_t, std::size_t> { 500, 10'000 }, { 50, 1000 }, { 50, 1049 },
                                { 50, 50 } }) {
        auto c = small_config();
        c.population_size = pop;
        c.max_evaluations = budget;
        std::size_t calls = 0;
        auto counted = [&](const Tree& t) {
            ++calls;
            return objectives(t);
        };
        auto result = run(c, 1, counted);
        CHECK(result.evaluations == calls);
        CHECK(result.evaluations >= budget);
        CHECK(result.evaluations < budget + pop);
        CHECK(result.population.size() == pop);
        if (budget % pop == 0) {
            CHECK(result.evaluations == budget);
            CHECK(result.generations == budget / pop - 1);
        }
    }
}

TEST_CASE("budget equal to the population returns the initial population")
{
    auto d = quadratic_data();
    auto c = small_config();
    c.max_evaluations = c.population_size;
    std::size_t observed = 0;
    std::vector<Individual> initial;
    auto result = run(c, d, d.train, ComplexityObjective {},
                      [&](std::size_t gen, std::size_t, const std::vector<Individual>& pop) {
                          ++observed;
                          CHECK(gen == 0);
                          initial = pop;
                      });
    CHECK(observed == 1);
    CHECK(result.generations == 0);
    CHECK(result.evaluations == c.population_size);
    REQUIRE(result.population.size() == initial.size());
    for (std::size_t i = 0; i < initial.size(); ++i) {
        CHECK(result.population[i].tree == initial[i].tree);
    }
}

TEST_CASE("fixed seed gives an identical final population")
{
    auto d = quadratic_data();
    auto c = small_config();
    c.seed = 17;
    auto a = run(c, d, d.train, ComplexityObjective {});
    auto b = run(c, d, d.train, ComplexityObjective {});
    REQUIRE(a.population.size() == b.population.size());
    for (std::size_t i = 0; i < a.population.size(); ++i) {
        CHECK(a.population[i].tree == b.population[i].tree);
        CHECK(a.population[i].objectives == b.population[i].objectives);
    }
    c.seed = 18;
    auto other = run(c, d, d.train, ComplexityObjective {});
    bool differs = false;
    for (std::size_t i = 0; i < a.population.size(); ++i) {
        differs = differs || !(a.population[i].tree == other.population[i].tree);
    }
    CHECK(differs);
}

TEST_CASE("elitism and the length cap hold in every generation")
{
    auto d = quadratic_data();
    for (auto measure : { ComplexityMeasure::Complexity, ComplexityMeasure::Variables }) {
        for (auto policy : { DuplicatePolicy::FirstDominates, DuplicatePolicy::Nondominated }) {
            auto c = small_config();
            c.max_evaluations = 2000;
            c.max_length = 25;
            c.selection_duplicates = policy;
            ComplexityObjective complexity;
            complexity.measure = measure;
            Points previous_front;
            auto observer = [&](std::size_t, std::size_t, const std::vector<Individual>& pop) {
                for (const auto& ind : pop) {
                    REQUIRE(ind.tree.length() <= c.max_length);
                    REQUIRE(depth(ind.tree) <= c.max_depth);
                }
                Points current;
                for (const auto& ind : pareto_front(pop)) { current.push_back(ind.objectives); }
                for (const auto& now : current) {
                    for (const auto& before : previous_front) {
                        REQUIRE_FALSE(dominates(before, now));
                    }
                }
                previous_front = std::move(current);
            };
            run(c, d, d.train, complexity, observer);
        }
    }
}

TEST_CASE("pareto_front")
{
    std::vector<Individual> pop;
    for (auto o : Points { { 1, 4 }, { 2, 2 }, { 4, 1 }, { 3, 3 }, { 4, 4 }, { 2, 2 } }) {
        pop.push_back(individual(o, 5, 0.0));
    }
    auto front = pareto_front(pop);
    REQUIRE(front.size() == 3);
    CHECK(front[0].objectives == std::vector<double> { 4, 1 });
    CHECK(front[1].objectives == std::vector<double> { 2, 2 });
    CHECK(front[2].objectives == std::vector<double> { 1, 4 });
    for (const auto& f : front) { CHECK(f.rank == 0); }

    auto single = pareto_front({ individual({ 0.3, 7 }, 0, 0.0) });
    REQUIRE(single.size() == 1);
    CHECK(single[0].objectives == std::vector<double> { 0.3, 7 });
    CHECK(pareto_front({}).empty());
}

TEST_CASE("property: exported fronts trade accuracy for complexity strictly")
{
    auto d = quadratic_data();
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto c = small_config();
        c.seed = seed;
        auto result = run(c, d, d.train, ComplexityObjective {});
        auto front = pareto_front(result.population);
        REQUIRE_FALSE(front.empty());
        for (std::size_t i = 1; i < front.size(); ++i) {
            CHECK(front[i].objectives[1] > front[i - 1].objectives[1]);
            CHECK(front[i].objectives[0] < front[i - 1].objectives[0]);
        }
    }
}

TEST_CASE("objective functions with inconsistent arity are rejected")
{
    auto c = small_config();
    int calls = 0;
    auto ragged = [&](const Tree&) {
        ++calls;
        return calls % 2 == 0 ? std::vector<double> { 1.0 } : std::vector<double> { 1.0, 2.0 };
    };
    CHECK_THROWS_AS(run(c, 1, ragged), ConfigError);
    CHECK_THROWS_AS(run(c, 1, ObjectiveFunction {}), ConfigError);
}
