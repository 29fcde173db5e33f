#include "mosr/complexity.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <system_error>
#include <vector>

#include <fmt/core.h>

#include "mosr/errors.hpp"

namespace mosr {

namespace {

auto slot(Symbol s) -> std::size_t { return static_cast<std::size_t>(s); }

auto trim(std::string_view s) -> std::string_view
{
    auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) { return {}; }
    auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

auto parse_double(std::string_view text, std::string_view what) -> double
{
    text = trim(text);
    double value = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
        throw ConfigError(fmt::format("{}: '{}' is not a number", what, text));
    }
    return value;
}

} // namespace

void ComplexityRuleTable::set(Symbol symbol, ComplexityRule rule)
{
    if (is_leaf(symbol)) {
        throw ConfigError("leaf values are set through constant_value and variable_value");
    }
    rules_[slot(symbol)] = rule;
}

auto ComplexityRuleTable::find(Symbol symbol) const -> std::optional<ComplexityRule>
{
    return rules_[slot(symbol)];
}

auto ComplexityRuleTable::rule(Symbol symbol) const -> ComplexityRule
{
    auto r = rules_[slot(symbol)];
    if (!r) {
        throw ConfigError(fmt::format("no complexity rule for symbol '{}'", symbol_name(symbol)));
    }
    return *r;
}

void ComplexityRuleTable::validate() const
{
    if (!(constant_value >= 1.0) || !(variable_value >= 1.0)) {
        throw ConfigError("constant and variable complexity values must be at least 1");
    }
    for (auto f : kAllFunctions) {
        (void)rule(f);
    }
}

auto default_rule_table() -> ComplexityRuleTable
{
    ComplexityRuleTable t;
    t.constant_value = 1.0;
    t.variable_value = 2.0;
    t.set(Symbol::Add, { RuleKind::Sum, 0.0 });
    t.set(Symbol::Sub, { RuleKind::Sum, 0.0 });
    t.set(Symbol::Mul, { RuleKind::ProductPlusOne, 0.0 });
    t.set(Symbol::Div, { RuleKind::ProductPlusOne, 0.0 });
    t.set(Symbol::Square, { RuleKind::Power, 2.0 });
    t.set(Symbol::Sqrt, { RuleKind::Power, 3.0 });
    for (auto s : { Symbol::Sin, Symbol::Cos, Symbol::Tan, Symbol::Exp, Symbol::Log }) {
        t.set(s, { RuleKind::ExponentialBase, 2.0 });
    }
    return t;
}

auto figure_consistent_rule_table() -> ComplexityRuleTable
{
    auto t = default_rule_table();
    t.set(Symbol::Mul, { RuleKind::ProductOfIncremented, 0.0 });
    t.set(Symbol::Div, { RuleKind::ProductOfIncremented, 0.0 });
    t.set(Symbol::Sqrt, { RuleKind::Power, 2.0 });
    return t;
}

auto rule_table_by_name(std::string_view name) -> ComplexityRuleTable
{
    if (name == "eq1") { return default_rule_table(); }
    if (name == "figure") { return figure_consistent_rule_table(); }
    throw ConfigError(fmt::format("unknown rule table '{}' (expected eq1 or figure)", name));
}

auto parse_rule(std::string_view text) -> ComplexityRule
{
    text = trim(text);
    auto space = text.find_first_of(" \t");
    auto kind = text.substr(0, space);
    auto arg = space == std::string_view::npos ? std::string_view {} : trim(text.substr(space));

    auto no_arg = [&](RuleKind k) {
        if (!arg.empty()) {
            throw ConfigError(fmt::format("rule '{}' takes no parameter", kind));
        }
        return ComplexityRule { k, 0.0 };
    };
    if (kind == "sum") { return no_arg(RuleKind::Sum); }
    if (kind == "product_plus_one") { return no_arg(RuleKind::ProductPlusOne); }
    if (kind == "product_of_incremented") { return no_arg(RuleKind::ProductOfIncremented); }
    if (kind == "power") { return { RuleKind::Power, parse_double(arg, "power exponent") }; }
    if (kind == "exp_base") { return { RuleKind::ExponentialBase, parse_double(arg, "exponential base") }; }
    throw ConfigError(fmt::format("unknown complexity rule '{}'", kind));
}

auto format_rule(const ComplexityRule& rule) -> std::string
{
    switch (rule.kind) {
    case RuleKind::Sum: return "sum";
    case RuleKind::ProductPlusOne: return "product_plus_one";
    case RuleKind::ProductOfIncremented: return "product_of_incremented";
    case RuleKind::Power: return fmt::format("power {}", rule.parameter);
    case RuleKind::ExponentialBase: return fmt::format("exp_base {}", rule.parameter);
    }
    return "?";
}

auto variable_count(const Tree& tree, VariableCounting counting) -> std::size_t
{
    std::size_t occurrences = 0;
    std::set<std::uint32_t> distinct;
    for (const auto& n : tree.nodes()) {
        if (n.symbol == Symbol::Variable) {
            ++occurrences;
            distinct.insert(n.variable);
        }
    }
    return counting == VariableCounting::Occurrences ? occurrences : distinct.size();
}

auto tree_length_measure(const Tree& tree) -> std::size_t
{
    return length(tree);
}

auto visitation_length(const Tree& tree) -> std::size_t
{
    std::size_t total = 0;
    for (const auto& n : tree.nodes()) {
        total += n.size;
    }
    return total;
}

auto recursive_complexity(const Tree& tree, const ComplexityRuleTable& rules) -> double
{
    auto nodes = tree.nodes();
    std::vector<double> value(nodes.size());
    for (std::size_t i = nodes.size(); i-- > 0;) {
        const auto& n = nodes[i];
        if (n.symbol == Symbol::Constant) {
            value[i] = rules.constant_value;
            continue;
        }
        if (n.symbol == Symbol::Variable) {
            value[i] = rules.variable_value;
            continue;
        }
        auto rule = rules.rule(n.symbol);
        double acc = 0.0;
        switch (rule.kind) {
        case RuleKind::Sum: acc = 0.0; break;
        case RuleKind::ProductPlusOne:
        case RuleKind::ProductOfIncremented: acc = 1.0; break;
        default: break;
        }
        std::size_t c = i + 1;
        for (std::size_t k = 0; k < n.arity; ++k, c += nodes[c].size) {
            double v = value[c];
            switch (rule.kind) {
            case RuleKind::Sum: acc += v; break;
            case RuleKind::ProductPlusOne: acc *= v; break;
            case RuleKind::ProductOfIncremented: acc *= v + 1.0; break;
            case RuleKind::Power: acc = std::pow(v, rule.parameter); break;
            case RuleKind::ExponentialBase: acc = std::pow(rule.parameter, v); break;
            }
        }
        if (rule.kind == RuleKind::ProductPlusOne) {
            acc += 1.0;
        }
        value[i] = std::isnan(acc) ? std::numeric_limits<double>::infinity() : acc;
    }
    return value.front();
}

auto measure_name(ComplexityMeasure m) -> std::string_view
{
    switch (m) {
    case ComplexityMeasure::Variables: return "variables";
    case ComplexityMeasure::TreeLength: return "tree_length";
    case ComplexityMeasure::VisitationLength: return "visitation_length";
    case ComplexityMeasure::Complexity: return "complexity";
    }
    return "?";
}

auto parse_measure(std::string_view name) -> ComplexityMeasure
{
    for (auto m : { ComplexityMeasure::Variables, ComplexityMeasure::TreeLength,
                    ComplexityMeasure::VisitationLength, ComplexityMeasure::Complexity }) {
        if (measure_name(m) == name) { return m; }
    }
    throw ConfigError(fmt::format(
        "unknown objective '{}' (expected variables, tree_length, visitation_length or complexity)", name));
}

auto ComplexityObjective::operator()(const Tree& tree) const -> double
{
    switch (measure) {
    case ComplexityMeasure::Variables: return static_cast<double>(variable_count(tree, counting));
    case ComplexityMeasure::TreeLength: return static_cast<double>(tree_length_measure(tree));
    case ComplexityMeasure::VisitationLength: return static_cast<double>(visitation_length(tree));
    case ComplexityMeasure::Complexity: return recursive_complexity(tree, rules);
    }
    return 0.0;
}

} // namespace mosr
