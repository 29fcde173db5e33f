#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "mosr/benchmarks.hpp"
#include "mosr/config.hpp"
#include "mosr/errors.hpp"
#include "mosr/harness.hpp"
#include "mosr/interpreter.hpp"
#include "mosr/metrics.hpp"
#include "mosr/sexpr.hpp"

namespace {

auto read_text(const std::string& path) -> std::string
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open '{}'", path));
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void print_run(const mosr::RunResult& r)
{
    fmt::print("seed={} evaluations={} front={} train_nmse={} test_nmse={} length={}\n", r.seed, r.evaluations,
               r.front.size(), r.train_nmse, r.test_nmse, r.best_length);
    fmt::print("best: {}\n", r.best_model);
}

} // namespace

auto main(int argc, char** argv) -> int
{
    CLI::App app { "Multi-objective symbolic regression with NSGA-II and pluggable complexity objectives" };
    app.require_subcommand(1);

    auto* problems = app.add_subcommand("problems", "List the built-in benchmark problems");

    std::string gen_problem;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    bool gen_literature = false;
    auto* generate = app.add_subcommand("generate", "Write a benchmark dataset as CSV");
    generate->add_option("--problem", gen_problem, "Benchmark name")->required();
    generate->add_option("--seed", gen_seed, "Sampling seed");
    generate->add_option("--out", gen_out, "Output CSV path")->required();
    generate->add_flag("--literature", gen_literature, "Use the literature form of friedman1");

    mosr::ExperimentConfig run_config;
    std::string run_problem = "keijzer5";
    std::string run_data;
    std::string run_target;
    double run_train_fraction = 0.5;
    std::string run_objective = "complexity";
    std::string run_rules = "eq1";
    std::uint64_t run_seed = 0;
    std::uint64_t run_data_seed = 0;
    std::string run_out = ".";
    auto* run = app.add_subcommand("run", "Execute a single NSGA-II run");
    auto* run_problem_opt = run->add_option("--problem", run_problem, "Benchmark name");
    auto* run_data_opt = run->add_option("--data", run_data, "CSV file with inputs and target");
    run_problem_opt->excludes(run_data_opt);
    run->add_option("--target", run_target, "Target column when --data is given");
    run->add_option("--train-fraction", run_train_fraction, "Leading fraction of CSV rows used for training");
    run->add_option("--objective2", run_objective, "variables | tree_length | visitation_length | complexity");
    run->add_option("--rules", run_rules, "Complexity rule table: eq1 | figure");
    run->add_option("--pop", run_config.engine.population_size, "Population size");
    run->add_option("--evals", run_config.engine.max_evaluations, "Evaluation budget");
    run->add_option("--max-length", run_config.engine.max_length, "Maximum tree length");
    run->add_option("--seed", run_seed, "Run seed");
    run->add_option("--data-seed", run_data_seed, "Benchmark sampling seed");
    run->add_option("--out-dir", run_out, "Directory for front.csv and best.sexpr");

    std::string exp_config_path;
    std::string exp_out;
    std::size_t exp_jobs = 0;
    auto* experiment = app.add_subcommand("experiment", "Execute seeded repetitions from a config file");
    experiment->add_option("--config", exp_config_path, "key = value config file")->required();
    experiment->add_option("--out-dir", exp_out, "Output directory (overrides output_dir)");
    experiment->add_option("--jobs", exp_jobs, "Concurrent runs (overrides jobs)");

    std::string eval_model;
    std::string eval_data;
    std::string eval_target;
    auto* eval = app.add_subcommand("eval", "Score a saved model on a CSV file");
    eval->add_option("--model", eval_model, "S-expression model file")->required();
    eval->add_option("--data", eval_data, "CSV file")->required();
    eval->add_option("--target", eval_target, "Target column")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (problems->parsed()) {
            fmt::print("{:<16}{:>6}{:>7}{:>7}{:>7}  {}\n", "name", "vars", "train", "test", "noise", "sampling");
            for (const auto& p : mosr::list_problems()) {
                fmt::print("{:<16}{:>6}{:>7}{:>7}{:>7}  {}\n", p.name, p.n_variables, p.train_size, p.test_size,
                           p.noise, p.sampling);
            }
        } else if (generate->parsed()) {
            auto spec = mosr::problem_spec(gen_problem);
            spec.literature_variant = gen_literature;
            auto data = mosr::generate(spec, gen_seed);
            mosr::write_csv(data, gen_out);
            fmt::print("wrote {} rows to {} (train rows {}, test rows {})\n", data.rows(), gen_out, data.train.size(),
                       data.test.size());
        } else if (run->parsed()) {
            if (!run_data.empty()) {
                if (run_target.empty()) {
                    throw mosr::UsageError("--data requires --target");
                }
                run_config.problem.csv_path = run_data;
                run_config.problem.target = run_target;
                run_config.problem.train_fraction = run_train_fraction;
            } else {
                run_config.problem.name = run_problem;
            }
            run_config.problem.data_seed = run_data_seed;
            run_config.objective2 = mosr::parse_measure(run_objective);
            run_config.rules = mosr::rule_table_by_name(run_rules);
            run_config.rules_name = run_rules;
            auto result = mosr::execute_run(run_config, run_seed);
            mosr::write_run_artifacts(result, run_out);
            print_run(result);
        } else if (experiment->parsed()) {
            auto config = mosr::load_config(exp_config_path);
            if (!exp_out.empty()) { config.output_dir = exp_out; }
            if (exp_jobs > 0) { config.jobs = exp_jobs; }
            if (config.output_dir.empty()) {
                throw mosr::ConfigError("no output directory: set output_dir or pass --out-dir");
            }
            auto result = mosr::execute_experiment(config);
            const auto& s = result.stats;
            fmt::print("{} {} ({}) x{}: train NMSE {} +- {}, test NMSE {} +- {}, length {} +- {}\n", s.problem,
                       s.objective2, s.rules, s.repetitions, s.train_nmse.mean, s.train_nmse.stddev, s.test_nmse.mean,
                       s.test_nmse.stddev, s.length.mean, s.length.stddev);
        } else if (eval->parsed()) {
            auto tree = mosr::parse_sexpr(read_text(eval_model));
            auto data = mosr::load_csv(eval_data, eval_target, 1.0);
            auto rows = mosr::Range { 0, data.rows() };
            auto pred = mosr::evaluate(tree, data, rows);
            auto report = mosr::accuracy_report(pred, data.target_slice(rows));
            fmt::print("rows = {}\nr2 = {}\nnmse = {}\nnmse_scaled = {}\nslope = {}\nintercept = {}\n", data.rows(),
                       report.r2, report.nmse_raw, report.nmse_scaled, report.slope, report.intercept);
        }
    } catch (const std::exception& e) {
        std::cerr << "mosr: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
