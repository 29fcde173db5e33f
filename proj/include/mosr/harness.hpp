#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "config.hpp"
#include "dataset.hpp"
#include "nsga2.hpp"

namespace mosr {

// One exported Pareto-front member.
struct FrontEntry {
    std::vector<double> objectives; // [1 - R^2 train, objective2]
    std::size_t length { 0 };
    double train_nmse { 0.0 };
    double test_nmse { 0.0 };
    std::string model;
};

struct RunResult {
    std::uint64_t seed { 0 };
    std::vector<FrontEntry> front; // sorted by objective2 ascending
    std::size_t best_index { 0 };  // into front
    std::string best_model;
    double train_nmse { 0.0 };
    double test_nmse { 0.0 };
    std::size_t best_length { 0 };
    std::size_t evaluations { 0 };
};

struct Summary {
    double mean { 0.0 };
    double stddev { 0.0 }; // sample (n - 1); 0 for a single value
};

struct AggregateStats {
    std::string problem;
    std::string objective2;
    std::string rules;
    std::size_t repetitions { 0 };
    Summary train_nmse;
    Summary test_nmse;
    Summary length;
};

struct ExperimentResult {
    AggregateStats stats;
    std::vector<RunResult> runs; // in seed order
};

auto summarize(std::span<const double> values) -> Summary;

// Highest training accuracy (lowest objective 0); ties go to the lower objective 1, then
// the shorter tree. Throws UsageError on an empty front.
auto select_best_index(std::span<const Individual> front) -> std::size_t;
auto select_best(std::span<const Individual> front) -> const Individual&;

// Builds the dataset described by the config's problem source.
auto build_dataset(const ProblemSource& source) -> Dataset;

// Train NMSE uses linear scaling fit on `train`; test NMSE reuses that scaling.
auto describe_front(std::span<const Individual> front, const Dataset& data, Range train, Range test)
    -> std::vector<FrontEntry>;

// Header `length,objective2,accuracy,train_nmse,test_nmse,model`; rows sorted by
// objective2 ascending.
void export_pareto_csv(std::span<const FrontEntry> front, const std::filesystem::path& path);

auto execute_run(const ExperimentConfig& config, std::uint64_t seed) -> RunResult;
auto execute_run(const ExperimentConfig& config, const Dataset& data, std::uint64_t seed) -> RunResult;

// Runs seeds base_seed .. base_seed + repetitions - 1 on up to `jobs` threads. When an
// output directory is set, writes run_<seed>/front.csv, run_<seed>/best.sexpr, runs.csv
// and aggregate.csv there.
auto execute_experiment(const ExperimentConfig& config) -> ExperimentResult;

void write_run_artifacts(const RunResult& run, const std::filesystem::path& dir);
void write_runs_csv(std::span<const RunResult> runs, const std::filesystem::path& path);
void write_aggregate_csv(const AggregateStats& stats, const std::filesystem::path& path);

// Writes through a temporary sibling and renames into place.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

} // namespace mosr
