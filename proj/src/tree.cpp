#include "mosr/tree.hpp"

#include <algorithm>
#include <unordered_map>

#include <fmt/core.h>

#include "mosr/errors.hpp"

namespace mosr {

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(fmt::format("{} (at offset {})", message, position))
    , position_(position)
{
}

CsvError::CsvError(const std::string& message, std::size_t row, std::size_t column)
    : std::runtime_error(message)
    , row_(row)
    , column_(column)
{
}

auto symbol_name(Symbol s) -> std::string_view
{
    switch (s) {
    case Symbol::Constant: return "constant";
    case Symbol::Variable: return "variable";
    case Symbol::Add: return "+";
    case Symbol::Sub: return "-";
    case Symbol::Mul: return "*";
    case Symbol::Div: return "div";
    case Symbol::Sin: return "sin";
    case Symbol::Cos: return "cos";
    case Symbol::Tan: return "tan";
    case Symbol::Exp: return "exp";
    case Symbol::Log: return "log";
    case Symbol::Square: return "square";
    case Symbol::Sqrt: return "sqrt";
    }
    return "?";
}

auto parse_symbol(std::string_view name) -> std::optional<Symbol>
{
    static const std::unordered_map<std::string_view, Symbol> symbols {
        { "+", Symbol::Add }, { "add", Symbol::Add },
        { "-", Symbol::Sub }, { "sub", Symbol::Sub },
        { "*", Symbol::Mul }, { "mul", Symbol::Mul },
        { "div", Symbol::Div }, { "/", Symbol::Div },
        { "sin", Symbol::Sin }, { "cos", Symbol::Cos }, { "tan", Symbol::Tan },
        { "exp", Symbol::Exp }, { "log", Symbol::Log },
        { "square", Symbol::Square }, { "sqrt", Symbol::Sqrt },
    };
    if (auto it = symbols.find(name); it != symbols.end()) {
        return it->second;
    }
    return std::nullopt;
}

Tree::Tree(std::vector<Node> prefix)
    : nodes_(std::move(prefix))
{
    if (nodes_.empty()) {
        throw StructureError("a tree needs at least one node");
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const auto& n = nodes_[i];
        bool ok = is_leaf(n.symbol) ? n.arity == 0
            : is_unary(n.symbol)    ? n.arity == 1
                                    : n.arity >= 2;
        if (!ok) {
            throw StructureError(fmt::format("node {} ({}) has invalid arity {}", i, symbol_name(n.symbol), n.arity));
        }
    }

    // Sizes from the back: the children of node i are the next `arity` complete subtrees.
    std::vector<std::size_t> pending; // positions of complete subtrees, nearest on top
    for (std::size_t k = nodes_.size(); k-- > 0;) {
        auto& n = nodes_[k];
        if (pending.size() < n.arity) {
            throw StructureError(fmt::format("node {} ({}) is missing children", k, symbol_name(n.symbol)));
        }
        std::uint32_t size = 1;
        for (std::size_t c = 0; c < n.arity; ++c) {
            size += nodes_[pending.back()].size;
            pending.pop_back();
        }
        n.size = size;
        pending.push_back(k);
    }
    if (pending.size() != 1) {
        throw StructureError(fmt::format("prefix sequence encodes {} trees, expected one", pending.size()));
    }
}

auto Tree::children(std::size_t i) const -> std::vector<std::size_t>
{
    std::vector<std::size_t> result;
    result.reserve(nodes_[i].arity);
    std::size_t c = i + 1;
    for (std::size_t k = 0; k < nodes_[i].arity; ++k) {
        result.push_back(c);
        c += nodes_[c].size;
    }
    return result;
}

auto Tree::node_depths() const -> std::vector<std::size_t>
{
    std::vector<std::size_t> depths(nodes_.size(), 1);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        std::size_t c = i + 1;
        for (std::size_t k = 0; k < nodes_[i].arity; ++k) {
            depths[c] = depths[i] + 1;
            c += nodes_[c].size;
        }
    }
    return depths;
}

auto Tree::subtree_heights() const -> std::vector<std::size_t>
{
    std::vector<std::size_t> heights(nodes_.size(), 1);
    for (std::size_t i = nodes_.size(); i-- > 0;) {
        std::size_t c = i + 1;
        for (std::size_t k = 0; k < nodes_[i].arity; ++k) {
            heights[i] = std::max(heights[i], heights[c] + 1);
            c += nodes_[c].size;
        }
    }
    return heights;
}

auto Tree::depth() const -> std::size_t
{
    return subtree_heights().front();
}

auto Tree::subtree(std::size_t i) const -> Tree
{
    auto first = nodes_.begin() + static_cast<std::ptrdiff_t>(i);
    return Tree({ first, first + nodes_[i].size });
}

auto Tree::replace_subtree(std::size_t i, const Tree& donor) const -> Tree
{
    std::vector<Node> out;
    out.reserve(nodes_.size() - nodes_[i].size + donor.length());
    auto cut = nodes_.begin() + static_cast<std::ptrdiff_t>(i);
    out.insert(out.end(), nodes_.begin(), cut);
    out.insert(out.end(), donor.nodes_.begin(), donor.nodes_.end());
    out.insert(out.end(), cut + nodes_[i].size, nodes_.end());
    return Tree(std::move(out));
}

auto Tree::with_node(std::size_t i, const Node& node) const -> Tree
{
    if (node.arity != nodes_[i].arity) {
        throw StructureError("with_node must preserve arity");
    }
    auto copy = nodes_;
    copy[i] = node;
    return Tree(std::move(copy));
}

auto length(const Tree& tree) noexcept -> std::size_t { return tree.length(); }
auto depth(const Tree& tree) -> std::size_t { return tree.depth(); }

} // namespace mosr
