#include "mosr/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <utility>
#include <vector>

#include <fmt/core.h>

#include "mosr/benchmarks.hpp"
#include "mosr/errors.hpp"

namespace mosr {

namespace {

auto trim(std::string_view s) -> std::string_view
{
    auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) { return {}; }
    auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

template <typename T>
auto parse_number(std::string_view key, std::string_view value) -> T
{
    T out {};
    auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (value.empty() || ec != std::errc() || end != value.data() + value.size()) {
        throw ConfigError(fmt::format("{}: '{}' is not a valid number", key, value));
    }
    return out;
}

auto parse_bool(std::string_view key, std::string_view value) -> bool
{
    if (value == "true" || value == "yes" || value == "1") { return true; }
    if (value == "false" || value == "no" || value == "0") { return false; }
    throw ConfigError(fmt::format("{}: '{}' is not a boolean", key, value));
}

auto parse_functions(std::string_view value) -> std::vector<Symbol>
{
    std::vector<Symbol> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        auto stop = value.find_first_of(", ", start);
        auto name = trim(value.substr(start, stop - start));
        if (!name.empty()) {
            auto s = parse_symbol(name);
            if (!s) {
                throw ConfigError(fmt::format("functions: unknown symbol '{}'", name));
            }
            out.push_back(*s);
        }
        if (stop == std::string_view::npos) { break; }
        start = stop + 1;
    }
    return out;
}

auto is_rule_override(std::string_view key) -> bool { return key.starts_with("rule."); }

} // namespace

auto ProblemSource::label() const -> std::string
{
    return is_csv() ? csv_path : name;
}

auto ExperimentConfig::complexity_objective() const -> ComplexityObjective
{
    return { objective2, rules, counting };
}

void ExperimentConfig::validate() const
{
    if (repetitions < 1) { throw ConfigError("repetitions must be at least 1"); }
    if (jobs < 1) { throw ConfigError("jobs must be at least 1"); }
    engine.validate();
    if (objective2 == ComplexityMeasure::Complexity) { rules.validate(); }
    if (selection == SelectionRule::Validation && !(validation_fraction > 0.0 && validation_fraction < 1.0)) {
        throw ConfigError("validation_fraction must lie strictly between 0 and 1");
    }
    if (problem.is_csv()) {
        if (problem.target.empty()) { throw ConfigError("a CSV problem needs a target column"); }
        if (!(problem.train_fraction > 0.0 && problem.train_fraction <= 1.0)) {
            throw ConfigError("train_fraction must lie in (0, 1]");
        }
    } else {
        try {
            (void)problem_spec(problem.name);
        } catch (const UsageError& e) {
            throw ConfigError(e.what());
        }
    }
}

void apply_config_value(ExperimentConfig& c, std::string_view key, std::string_view value)
{
    key = trim(key);
    value = trim(value);
    auto size = [&] { return parse_number<std::size_t>(key, value); };
    auto seed = [&] { return parse_number<std::uint64_t>(key, value); };
    auto real = [&] { return parse_number<double>(key, value); };

    if (key == "problem") {
        c.problem.name = value;
        c.problem.csv_path.clear();
    } else if (key == "data") {
        c.problem.csv_path = value;
    } else if (key == "target") {
        c.problem.target = value;
    } else if (key == "train_fraction") {
        c.problem.train_fraction = real();
    } else if (key == "shuffle_seed") {
        c.problem.shuffle_seed = seed();
    } else if (key == "data_seed") {
        c.problem.data_seed = seed();
    } else if (key == "literature_variant") {
        c.problem.literature_variant = parse_bool(key, value);
    } else if (key == "objective2") {
        c.objective2 = parse_measure(value);
    } else if (key == "rules") {
        c.rules = rule_table_by_name(value);
        c.rules_name = value;
    } else if (key == "rule.constant") {
        c.rules.constant_value = real();
        c.rules_name += c.rules_name.ends_with("+overrides") ? "" : "+overrides";
    } else if (key == "rule.variable") {
        c.rules.variable_value = real();
        c.rules_name += c.rules_name.ends_with("+overrides") ? "" : "+overrides";
    } else if (is_rule_override(key)) {
        auto symbol = parse_symbol(key.substr(5));
        if (!symbol) {
            throw ConfigError(fmt::format("{}: unknown symbol '{}'", key, key.substr(5)));
        }
        c.rules.set(*symbol, parse_rule(value));
        c.rules_name += c.rules_name.ends_with("+overrides") ? "" : "+overrides";
    } else if (key == "variable_counting") {
        if (value == "occurrences") {
            c.counting = VariableCounting::Occurrences;
        } else if (value == "distinct") {
            c.counting = VariableCounting::Distinct;
        } else {
            throw ConfigError(fmt::format("{}: expected occurrences or distinct, got '{}'", key, value));
        }
    } else if (key == "population_size" || key == "pop") {
        c.engine.population_size = size();
    } else if (key == "max_evaluations" || key == "evals") {
        c.engine.max_evaluations = size();
    } else if (key == "max_length") {
        c.engine.max_length = size();
    } else if (key == "max_depth") {
        c.engine.max_depth = size();
    } else if (key == "mutation_rate") {
        c.engine.mutation_rate = real();
    } else if (key == "tournament_size") {
        c.engine.tournament_size = size();
    } else if (key == "functions") {
        c.engine.functions = parse_functions(value);
    } else if (key == "repetitions") {
        c.repetitions = size();
    } else if (key == "base_seed" || key == "seed") {
        c.base_seed = seed();
    } else if (key == "output_dir") {
        c.output_dir = std::string(value);
    } else if (key == "jobs") {
        c.jobs = size();
    } else if (key == "selection") {
        if (value == "training") {
            c.selection = SelectionRule::TrainingAccuracy;
        } else if (value == "validation") {
            c.selection = SelectionRule::Validation;
        } else {
            throw ConfigError(fmt::format("{}: expected training or validation, got '{}'", key, value));
        }
    } else if (key == "validation_fraction") {
        c.validation_fraction = real();
    } else {
        throw ConfigError(fmt::format("unknown key '{}'", key));
    }
}

auto parse_config(std::string_view text) -> ExperimentConfig
{
    struct Entry {
        std::size_t line;
        std::string key;
        std::string value;
    };
    std::vector<Entry> entries;
    std::istringstream in { std::string(text) };
    std::string raw;
    for (std::size_t line = 1; std::getline(in, raw); ++line) {
        std::string_view view = raw;
        if (auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) { continue; }
        auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("line {}: expected 'key = value'", line));
        }
        entries.push_back({ line, std::string(trim(view.substr(0, eq))), std::string(trim(view.substr(eq + 1))) });
    }

    // Per-symbol overrides apply on top of whichever base table was selected, wherever
    // the `rules` line appears.
    std::stable_partition(entries.begin(), entries.end(), [](const Entry& e) { return !is_rule_override(e.key); });

    ExperimentConfig config;
    for (const auto& e : entries) {
        try {
            apply_config_value(config, e.key, e.value);
        } catch (const std::exception& ex) {
            throw ConfigError(fmt::format("line {}: {}", e.line, ex.what()));
        }
    }
    return config;
}

auto load_config(const std::filesystem::path& path) -> ExperimentConfig
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

} // namespace mosr
