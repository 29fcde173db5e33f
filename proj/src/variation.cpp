#include "mosr/variation.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <vector>

#include "mosr/errors.hpp"

namespace mosr {

namespace {

auto uniform_index(Rng& rng, std::size_t n) -> std::size_t
{
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

auto coin(Rng& rng, double p) -> bool
{
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

// Symbols that can replace `s` without changing the node's arity.
auto alternatives(Symbol s, std::size_t arity, std::span<const Symbol> functions) -> std::vector<Symbol>
{
    std::vector<Symbol> out;
    for (auto f : functions) {
        if (f == s) { continue; }
        bool fits = arity == 1 ? is_unary(f) : is_nary(f);
        if (fits && std::find(out.begin(), out.end(), f) == out.end()) {
            out.push_back(f);
        }
    }
    return out;
}

struct Proto {
    Node node;
    std::vector<std::size_t> children;
};

void flatten(const std::vector<Proto>& protos, std::size_t i, std::vector<Node>& out)
{
    out.push_back(protos[i].node);
    for (auto c : protos[i].children) {
        flatten(protos, c, out);
    }
}

} // namespace

auto random_leaf(Rng& rng, std::size_t n_variables) -> Node
{
    if (n_variables > 0 && coin(rng, 0.5)) {
        return Node::var(uniform_index(rng, n_variables));
    }
    return Node::constant(std::uniform_real_distribution<double>(kConstantMin, kConstantMax)(rng));
}

auto random_tree(Rng& rng, std::span<const Symbol> functions, std::size_t n_variables, std::size_t max_length,
                 std::size_t max_depth) -> Tree
{
    if (max_length < 1) {
        throw UsageError("random_tree: max_length must be at least 1");
    }
    std::size_t target = std::uniform_int_distribution<std::size_t>(1, max_length)(rng);

    std::vector<Proto> protos(1);
    std::deque<std::pair<std::size_t, std::size_t>> open { { 0, 1 } }; // (proto, depth)
    std::size_t count = 1; // placed nodes plus open slots

    std::vector<Symbol> fitting;
    while (!open.empty()) {
        auto [slot, slot_depth] = open.front();
        open.pop_front();

        fitting.clear();
        if (count < target && slot_depth < max_depth) {
            for (auto f : functions) {
                if (count + min_arity(f) <= target) {
                    fitting.push_back(f);
                }
            }
        }
        if (fitting.empty()) {
            protos[slot].node = random_leaf(rng, n_variables);
            continue;
        }

        auto f = fitting[uniform_index(rng, fitting.size())];
        auto arity = min_arity(f);
        protos[slot].node = Node::function(f, arity);
        for (std::size_t k = 0; k < arity; ++k) {
            protos[slot].children.push_back(protos.size());
            open.emplace_back(protos.size(), slot_depth + 1);
            protos.emplace_back();
        }
        count += arity;
    }

    std::vector<Node> prefix;
    prefix.reserve(protos.size());
    flatten(protos, 0, prefix);
    return Tree(std::move(prefix));
}

auto crossover(const Tree& parent1, const Tree& parent2, Rng& rng, std::size_t max_length, std::size_t max_depth)
    -> Tree
{
    std::vector<std::size_t> internal;
    std::vector<std::size_t> leaves;
    for (std::size_t i = 0; i < parent1.length(); ++i) {
        (parent1[i].is_leaf() ? leaves : internal).push_back(i);
    }

    constexpr int kAttempts = 10;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        std::size_t cut = (!internal.empty() && coin(rng, 0.9)) ? internal[uniform_index(rng, internal.size())]
                                                                 : leaves[uniform_index(rng, leaves.size())];
        std::size_t donor = uniform_index(rng, parent2.length());

        std::size_t child_length = parent1.length() - parent1[cut].size + parent2[donor].size;
        if (child_length > max_length) {
            continue;
        }
        auto child = parent1.replace_subtree(cut, parent2.subtree(donor));
        if (max_depth != kNoDepthLimit && child.depth() > max_depth) {
            continue;
        }
        return child;
    }
    return parent1;
}

auto mutation_applicable(const Tree& tree, MutationMode mode, const MutationContext& ctx) -> bool
{
    auto nodes = tree.nodes();
    switch (mode) {
    case MutationMode::ChangeSymbol:
        return std::any_of(nodes.begin(), nodes.end(), [&](const Node& n) {
            return !n.is_leaf() && !alternatives(n.symbol, n.arity, ctx.functions).empty();
        });
    case MutationMode::JitterConstant:
        return std::any_of(nodes.begin(), nodes.end(), [](const Node& n) { return n.symbol == Symbol::Constant; });
    case MutationMode::ChangeVariable:
        return ctx.n_variables > 1
            && std::any_of(nodes.begin(), nodes.end(), [](const Node& n) { return n.symbol == Symbol::Variable; });
    case MutationMode::ReplaceSubtree:
        return true;
    }
    return false;
}

auto mutate(const Tree& tree, Rng& rng, MutationMode mode, const MutationContext& ctx) -> Tree
{
    if (!mutation_applicable(tree, mode, ctx)) {
        return tree;
    }
    auto nodes = tree.nodes();
    auto positions = [&](auto&& pred) {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (pred(nodes[i])) { out.push_back(i); }
        }
        return out;
    };

    switch (mode) {
    case MutationMode::ChangeSymbol: {
        auto candidates = positions([&](const Node& n) {
            return !n.is_leaf() && !alternatives(n.symbol, n.arity, ctx.functions).empty();
        });
        auto i = candidates[uniform_index(rng, candidates.size())];
        auto options = alternatives(nodes[i].symbol, nodes[i].arity, ctx.functions);
        return tree.with_node(i, Node::function(options[uniform_index(rng, options.size())], nodes[i].arity));
    }
    case MutationMode::JitterConstant: {
        auto candidates = positions([](const Node& n) { return n.symbol == Symbol::Constant; });
        auto i = candidates[uniform_index(rng, candidates.size())];
        double jitter = std::normal_distribution<double>(0.0, kConstantJitterSigma)(rng);
        return tree.with_node(i, Node::constant(nodes[i].value + jitter));
    }
    case MutationMode::ChangeVariable: {
        auto candidates = positions([](const Node& n) { return n.symbol == Symbol::Variable; });
        auto i = candidates[uniform_index(rng, candidates.size())];
        std::size_t index = uniform_index(rng, ctx.n_variables - 1);
        if (index >= nodes[i].variable) { ++index; }
        return tree.with_node(i, Node::var(index));
    }
    case MutationMode::ReplaceSubtree: {
        auto i = uniform_index(rng, nodes.size());
        std::size_t rest = tree.length() - nodes[i].size;
        std::size_t length_budget = ctx.max_length > rest ? ctx.max_length - rest : 1;
        std::size_t depth_budget = ctx.max_depth;
        if (ctx.max_depth != kNoDepthLimit) {
            std::size_t node_depth = tree.node_depths()[i];
            depth_budget = ctx.max_depth >= node_depth ? ctx.max_depth - node_depth + 1 : 1;
        }
        auto fresh = random_tree(rng, ctx.functions, ctx.n_variables, length_budget, depth_budget);
        return tree.replace_subtree(i, fresh);
    }
    }
    return tree;
}

auto mutate(const Tree& tree, Rng& rng, const MutationContext& ctx) -> Tree
{
    constexpr std::array kModes { MutationMode::ChangeSymbol, MutationMode::JitterConstant,
                                  MutationMode::ChangeVariable, MutationMode::ReplaceSubtree };
    std::vector<MutationMode> usable;
    for (auto m : kModes) {
        if (mutation_applicable(tree, m, ctx)) { usable.push_back(m); }
    }
    return mutate(tree, rng, usable[uniform_index(rng, usable.size())], ctx);
}

} // namespace mosr
