#include "mosr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <tuple>

#include <fmt/core.h>

#include "mosr/benchmarks.hpp"
#include "mosr/errors.hpp"
#include "mosr/interpreter.hpp"
#include "mosr/metrics.hpp"
#include "mosr/sexpr.hpp"

namespace mosr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Lexicographic best: smaller key wins, earlier index on full ties.
template <typename Key>
auto argmin_by(std::size_t n, Key key) -> std::size_t
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (key(i) < key(best)) { best = i; }
    }
    return best;
}

auto sort_by_objective2(std::span<const FrontEntry> front) -> std::vector<FrontEntry>
{
    std::vector<FrontEntry> sorted(front.begin(), front.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const FrontEntry& a, const FrontEntry& b) { return a.objectives[1] < b.objectives[1]; });
    return sorted;
}

} // namespace

auto summarize(std::span<const double> values) -> Summary
{
    if (values.empty()) {
        throw UsageError("summarize: no values");
    }
    double sum = 0.0;
    for (double v : values) { sum += v; }
    double mean = sum / static_cast<double>(values.size());
    if (values.size() == 1) {
        return { mean, 0.0 };
    }
    double ss = 0.0;
    for (double v : values) { ss += (v - mean) * (v - mean); }
    return { mean, std::sqrt(ss / static_cast<double>(values.size() - 1)) };
}

auto select_best_index(std::span<const Individual> front) -> std::size_t
{
    if (front.empty()) {
        throw UsageError("select_best: empty front");
    }
    return argmin_by(front.size(), [&](std::size_t i) {
        const auto& o = front[i].objectives;
        return std::tuple(o[0], o.size() > 1 ? o[1] : 0.0, front[i].tree.length());
    });
}

auto select_best(std::span<const Individual> front) -> const Individual&
{
    return front[select_best_index(front)];
}

auto build_dataset(const ProblemSource& source) -> Dataset
{
    if (source.is_csv()) {
        return load_csv(source.csv_path, source.target, source.train_fraction, source.shuffle_seed);
    }
    auto spec = problem_spec(source.name);
    spec.literature_variant = source.literature_variant;
    return generate(spec, source.data_seed);
}

auto describe_front(std::span<const Individual> front, const Dataset& data, Range train, Range test)
    -> std::vector<FrontEntry>
{
    std::vector<FrontEntry> entries;
    entries.reserve(front.size());
    auto train_target = data.target_slice(train);
    for (const auto& ind : front) {
        FrontEntry e;
        e.objectives = ind.objectives;
        e.length = ind.tree.length();
        e.model = to_sexpr(ind.tree);
        auto pred = evaluate(ind.tree, data, train);
        auto scaling = fit_linear_scaling(pred, train_target);
        e.train_nmse = scaled_nmse(pred, train_target, scaling);
        e.test_nmse = test.empty() ? kNaN : scaled_nmse(evaluate(ind.tree, data, test), data.target_slice(test), scaling);
        entries.push_back(std::move(e));
    }
    return entries;
}

void write_file_atomically(const std::filesystem::path& path, const std::string& contents)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error(fmt::format("cannot write '{}'", tmp.string()));
        }
        out << contents;
        if (!out.flush()) {
            throw std::runtime_error(fmt::format("failed writing '{}'", tmp.string()));
        }
    }
    std::filesystem::rename(tmp, path);
}

void export_pareto_csv(std::span<const FrontEntry> front, const std::filesystem::path& path)
{
    std::string out = "length,objective2,accuracy,train_nmse,test_nmse,model\n";
    for (const auto& e : sort_by_objective2(front)) {
        out += fmt::format("{},{},{},{},{},{}\n", e.length, e.objectives[1], e.objectives[0], e.train_nmse,
                           e.test_nmse, e.model);
    }
    write_file_atomically(path, out);
}

auto execute_run(const ExperimentConfig& config, const Dataset& data, std::uint64_t seed) -> RunResult
{
    try {
        config.validate();
        Range fit = data.train;
        std::optional<Range> validation;
        if (config.selection == SelectionRule::Validation) {
            auto held_out = static_cast<std::size_t>(
                std::llround(config.validation_fraction * static_cast<double>(data.train.size())));
            if (held_out == 0 || held_out >= data.train.size()) {
                throw ConfigError("validation split leaves an empty partition");
            }
            fit = { data.train.begin, data.train.end - held_out };
            validation = Range { fit.end, data.train.end };
        }

        auto engine = config.engine;
        engine.seed = seed;
        auto result = run(engine, data, fit, config.complexity_objective());
        auto front = pareto_front(result.population);

        std::size_t best = 0;
        if (validation) {
            auto target = data.target_slice(*validation);
            best = argmin_by(front.size(), [&](std::size_t i) {
                double r2 = pearson_r2(evaluate(front[i].tree, data, *validation), target);
                return std::tuple(-r2, front[i].objectives[1], front[i].tree.length());
            });
        } else {
            best = select_best_index(front);
        }

        RunResult out;
        out.seed = seed;
        out.front = describe_front(front, data, fit, data.test);
        out.best_index = best;
        out.best_model = out.front[best].model;
        out.train_nmse = out.front[best].train_nmse;
        out.test_nmse = out.front[best].test_nmse;
        out.best_length = out.front[best].length;
        out.evaluations = result.evaluations;
        return out;
    } catch (const std::exception& e) {
        throw std::runtime_error(fmt::format("{} / {} / seed {}: {}", config.problem.label(),
                                             measure_name(config.objective2), seed, e.what()));
    }
}

auto execute_run(const ExperimentConfig& config, std::uint64_t seed) -> RunResult
{
    return execute_run(config, build_dataset(config.problem), seed);
}

void write_run_artifacts(const RunResult& run, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    export_pareto_csv(run.front, dir / "front.csv");
    write_file_atomically(dir / "best.sexpr", run.best_model + "\n");
}

void write_runs_csv(std::span<const RunResult> runs, const std::filesystem::path& path)
{
    std::string out = "seed,evaluations,train_nmse,test_nmse,length,model\n";
    for (const auto& r : runs) {
        out += fmt::format("{},{},{},{},{},{}\n", r.seed, r.evaluations, r.train_nmse, r.test_nmse, r.best_length,
                           r.best_model);
    }
    write_file_atomically(path, out);
}

void write_aggregate_csv(const AggregateStats& s, const std::filesystem::path& path)
{
    std::string out = "problem,objective2,rules,repetitions,train_nmse_mean,train_nmse_std,"
                      "test_nmse_mean,test_nmse_std,length_mean,length_std\n";
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", s.problem, s.objective2, s.rules, s.repetitions,
                       s.train_nmse.mean, s.train_nmse.stddev, s.test_nmse.mean, s.test_nmse.stddev, s.length.mean,
                       s.length.stddev);
    write_file_atomically(path, out);
}

auto execute_experiment(const ExperimentConfig& config) -> ExperimentResult
{
    config.validate();
    const auto data = build_dataset(config.problem);
    if (!config.output_dir.empty()) {
        std::filesystem::create_directories(config.output_dir);
    }

    std::vector<std::optional<RunResult>> results(config.repetitions);
    std::atomic<std::size_t> next { 0 };
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t i = next++; i < config.repetitions; i = next++) {
            try {
                auto r = execute_run(config, data, config.base_seed + i);
                if (!config.output_dir.empty()) {
                    write_run_artifacts(r, config.output_dir / fmt::format("run_{}", r.seed));
                }
                results[i] = std::move(r);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) { failure = std::current_exception(); }
            }
        }
    };
    std::size_t workers = std::min(config.jobs, config.repetitions);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < workers; ++t) { pool.emplace_back(worker); }
    }
    if (failure) { std::rethrow_exception(failure); }

    ExperimentResult out;
    std::vector<double> train;
    std::vector<double> test;
    std::vector<double> length;
    for (auto& r : results) {
        train.push_back(r->train_nmse);
        test.push_back(r->test_nmse);
        length.push_back(static_cast<double>(r->best_length));
        out.runs.push_back(std::move(*r));
    }
    out.stats = { config.problem.label(), std::string(measure_name(config.objective2)), config.rules_name,
                  config.repetitions, summarize(train), summarize(test), summarize(length) };

    if (!config.output_dir.empty()) {
        write_runs_csv(out.runs, config.output_dir / "runs.csv");
        write_aggregate_csv(out.stats, config.output_dir / "aggregate.csv");
    }
    return out;
}

} // namespace mosr
