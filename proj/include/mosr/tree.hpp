#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace mosr {

enum class Symbol : std::uint8_t {
    Constant,
    Variable,
    Add,
    Sub,
    Mul,
    Div,
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Square,
    Sqrt,
};

inline constexpr std::size_t kSymbolCount = 13;

inline constexpr std::array<Symbol, 11> kAllFunctions {
    Symbol::Add, Symbol::Sub, Symbol::Mul, Symbol::Div,
    Symbol::Sin, Symbol::Cos, Symbol::Tan,
    Symbol::Exp, Symbol::Log,
    Symbol::Square, Symbol::Sqrt,
};

constexpr auto is_leaf(Symbol s) noexcept -> bool { return s == Symbol::Constant || s == Symbol::Variable; }
constexpr auto is_nary(Symbol s) noexcept -> bool
{
    return s == Symbol::Add || s == Symbol::Sub || s == Symbol::Mul || s == Symbol::Div;
}
constexpr auto is_unary(Symbol s) noexcept -> bool { return !is_leaf(s) && !is_nary(s); }

// Minimum number of children a node with this symbol takes.
constexpr auto min_arity(Symbol s) noexcept -> std::size_t { return is_leaf(s) ? 0 : (is_unary(s) ? 1 : 2); }

// Canonical spelling used by the s-expression format: "+", "-", "*", "div", "sin", ...
auto symbol_name(Symbol s) -> std::string_view;
// Accepts canonical spellings plus the aliases add/sub/mul.
auto parse_symbol(std::string_view name) -> std::optional<Symbol>;

struct Node {
    Symbol symbol { Symbol::Constant };
    std::uint16_t arity { 0 };
    std::uint32_t size { 1 }; // node count of the subtree rooted here
    double value { 0.0 };
    std::uint32_t variable { 0 };

    static auto constant(double v) -> Node { return Node { Symbol::Constant, 0, 1, v, 0 }; }
    static auto var(std::size_t index) -> Node
    {
        return Node { Symbol::Variable, 0, 1, 0.0, static_cast<std::uint32_t>(index) };
    }
    static auto function(Symbol s, std::size_t arity) -> Node
    {
        return Node { s, static_cast<std::uint16_t>(arity), 1, 0.0, 0 };
    }

    [[nodiscard]] auto is_leaf() const noexcept -> bool { return mosr::is_leaf(symbol); }

    // Structural equality: subtree sizes are derived, so they are not compared separately.
    friend auto operator==(const Node& a, const Node& b) noexcept -> bool
    {
        if (a.symbol != b.symbol || a.arity != b.arity) { return false; }
        if (a.symbol == Symbol::Constant) { return a.value == b.value; }
        if (a.symbol == Symbol::Variable) { return a.variable == b.variable; }
        return true;
    }
};

// An expression tree stored as a prefix (pre-order) node sequence. The subtree rooted at
// position i occupies [i, i + nodes[i].size); its children follow one after another
// starting at i + 1. Child order matters: sub and div fold left to right.
class Tree {
public:
    // Validates arities and completeness and recomputes subtree sizes.
    explicit Tree(std::vector<Node> prefix);

    [[nodiscard]] auto nodes() const noexcept -> std::span<const Node> { return nodes_; }
    [[nodiscard]] auto operator[](std::size_t i) const -> const Node& { return nodes_[i]; }
    [[nodiscard]] auto length() const noexcept -> std::size_t { return nodes_.size(); }
    [[nodiscard]] auto depth() const -> std::size_t;

    // Positions of the direct children of node i, in order.
    [[nodiscard]] auto children(std::size_t i) const -> std::vector<std::size_t>;
    // Depth of every node, root = 1.
    [[nodiscard]] auto node_depths() const -> std::vector<std::size_t>;
    // Height of the subtree rooted at every node, leaf = 1.
    [[nodiscard]] auto subtree_heights() const -> std::vector<std::size_t>;

    [[nodiscard]] auto subtree(std::size_t i) const -> Tree;
    // Copy of this tree with the subtree at position i replaced by `donor`.
    [[nodiscard]] auto replace_subtree(std::size_t i, const Tree& donor) const -> Tree;
    // Copy with node i overwritten by `node`; the arity must match.
    [[nodiscard]] auto with_node(std::size_t i, const Node& node) const -> Tree;

    friend auto operator==(const Tree& a, const Tree& b) noexcept -> bool { return a.nodes_ == b.nodes_; }

private:
    std::vector<Node> nodes_;
};

auto length(const Tree& tree) noexcept -> std::size_t;
auto depth(const Tree& tree) -> std::size_t;

} // namespace mosr
