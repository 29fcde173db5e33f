#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "complexity.hpp"
#include "nsga2.hpp"

namespace mosr {

// Either a named benchmark or a CSV file with a target column.
struct ProblemSource {
    std::string name { "keijzer5" };
    bool literature_variant { false };
    std::uint64_t data_seed { 0 };

    std::string csv_path;
    std::string target;
    double train_fraction { 0.5 };
    std::optional<std::uint64_t> shuffle_seed;

    [[nodiscard]] auto is_csv() const noexcept -> bool { return !csv_path.empty(); }
    [[nodiscard]] auto label() const -> std::string;
};

enum class SelectionRule {
    TrainingAccuracy, // highest training R^2 on the front
    Validation,       // highest R^2 on a held-out tail of the training rows
};

struct ExperimentConfig {
    ProblemSource problem;
    ComplexityMeasure objective2 { ComplexityMeasure::Complexity };
    std::string rules_name { "eq1" };
    ComplexityRuleTable rules { default_rule_table() };
    VariableCounting counting { VariableCounting::Occurrences };
    EngineConfig engine;
    std::size_t repetitions { 1 };
    std::uint64_t base_seed { 0 };
    std::filesystem::path output_dir;
    std::size_t jobs { 1 };
    SelectionRule selection { SelectionRule::TrainingAccuracy };
    double validation_fraction { 0.25 };

    [[nodiscard]] auto complexity_objective() const -> ComplexityObjective;
    // Throws ConfigError on violated invariants.
    void validate() const;
};

// Line-oriented `key = value`; `#` starts a comment. Unknown keys and bad values throw
// ConfigError naming the line.
auto parse_config(std::string_view text) -> ExperimentConfig;
auto load_config(const std::filesystem::path& path) -> ExperimentConfig;

// Applies one key/value to `config`, as the config file would.
void apply_config_value(ExperimentConfig& config, std::string_view key, std::string_view value);

} // namespace mosr
