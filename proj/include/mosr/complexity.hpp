#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "tree.hpp"

namespace mosr {

enum class RuleKind {
    Sum,                  // sum of child complexities
    ProductPlusOne,       // (product of child complexities) + 1
    ProductOfIncremented, // product of (child complexity + 1)
    Power,                // child complexity ^ parameter
    ExponentialBase,      // parameter ^ child complexity
};

struct ComplexityRule {
    RuleKind kind { RuleKind::Sum };
    double parameter { 0.0 };

    friend auto operator==(const ComplexityRule&, const ComplexityRule&) -> bool = default;
};

// Per-symbol rules for the recursive semantic complexity. Leaves take fixed values.
class ComplexityRuleTable {
public:
    double constant_value { 1.0 };
    double variable_value { 2.0 };

    void set(Symbol symbol, ComplexityRule rule);
    [[nodiscard]] auto find(Symbol symbol) const -> std::optional<ComplexityRule>;
    // Throws ConfigError when the symbol has no rule.
    [[nodiscard]] auto rule(Symbol symbol) const -> ComplexityRule;

    // Throws ConfigError unless every function symbol has a rule and both leaf values are >= 1.
    void validate() const;

    friend auto operator==(const ComplexityRuleTable&, const ComplexityRuleTable&) -> bool = default;

private:
    std::array<std::optional<ComplexityRule>, kSymbolCount> rules_ {};
};

// The recursion exactly as written: sqrt -> c^3 and mul/div -> (prod c) + 1.
auto default_rule_table() -> ComplexityRuleTable;
// sqrt -> c^2 and mul/div -> prod (c + 1); reproduces 65536 for exp(sin(sqrt x)) and 17
// for 7x^2 + 3x + 5.
auto figure_consistent_rule_table() -> ComplexityRuleTable;
// "eq1" or "figure".
auto rule_table_by_name(std::string_view name) -> ComplexityRuleTable;

// Rule text as used in config files: "sum", "product_plus_one", "product_of_incremented",
// "power <e>", "exp_base <b>".
auto parse_rule(std::string_view text) -> ComplexityRule;
auto format_rule(const ComplexityRule& rule) -> std::string;

enum class VariableCounting { Occurrences, Distinct };

auto variable_count(const Tree& tree, VariableCounting counting = VariableCounting::Occurrences) -> std::size_t;
auto tree_length_measure(const Tree& tree) -> std::size_t;
// Sum over all nodes of the size of the subtree rooted there.
auto visitation_length(const Tree& tree) -> std::size_t;
// Bottom-up fold of the rule table over the tree. Double precision; overflow saturates to
// +infinity, which still orders above every finite value.
auto recursive_complexity(const Tree& tree, const ComplexityRuleTable& rules) -> double;

enum class ComplexityMeasure { Variables, TreeLength, VisitationLength, Complexity };

auto measure_name(ComplexityMeasure m) -> std::string_view;
// Throws ConfigError on an unknown name.
auto parse_measure(std::string_view name) -> ComplexityMeasure;

// The second objective of a run.
struct ComplexityObjective {
    ComplexityMeasure measure { ComplexityMeasure::Complexity };
    ComplexityRuleTable rules { default_rule_table() };
    VariableCounting counting { VariableCounting::Occurrences };

    [[nodiscard]] auto operator()(const Tree& tree) const -> double;
};

} // namespace mosr
