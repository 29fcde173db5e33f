#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <random>
#include <span>

#include "tree.hpp"

namespace mosr {

using Rng = std::mt19937_64;

inline constexpr std::size_t kNoDepthLimit = std::numeric_limits<std::size_t>::max();
inline constexpr double kConstantMin = -20.0;
inline constexpr double kConstantMax = 20.0;
inline constexpr double kConstantJitterSigma = 1.0;

// Variable (uniform index) or uniform constant in [-20, 20], each with probability 1/2.
// With no variables only constants are drawn.
auto random_leaf(Rng& rng, std::size_t n_variables) -> Node;

// PTC2-style creation: a target length is drawn uniformly from [1, max_length] and open
// slots are expanded breadth-first with function nodes until the target would be
// exceeded; remaining slots become leaves. n-ary functions are generated binary.
auto random_tree(Rng& rng, std::span<const Symbol> functions, std::size_t n_variables,
                 std::size_t max_length, std::size_t max_depth = kNoDepthLimit) -> Tree;

// Subtree crossover. Returns an unmodified copy of parent1 when ten draws of cut points
// all violate the caps.
auto crossover(const Tree& parent1, const Tree& parent2, Rng& rng,
               std::size_t max_length, std::size_t max_depth = kNoDepthLimit) -> Tree;

enum class MutationMode {
    ChangeSymbol,   // arity-preserving function swap
    JitterConstant, // N(0, 1) added to one constant
    ChangeVariable, // one variable leaf gets a different index
    ReplaceSubtree, // fresh random subtree within the caps
};

struct MutationContext {
    std::span<const Symbol> functions;
    std::size_t n_variables { 0 };
    std::size_t max_length { 100 };
    std::size_t max_depth { kNoDepthLimit };
};

// Whether `mode` can change anything in `tree` under `ctx`.
auto mutation_applicable(const Tree& tree, MutationMode mode, const MutationContext& ctx) -> bool;

// Applies one mode drawn uniformly among those applicable to the tree.
auto mutate(const Tree& tree, Rng& rng, const MutationContext& ctx) -> Tree;

// Applies exactly `mode`; an inapplicable mode returns the tree unchanged.
auto mutate(const Tree& tree, Rng& rng, MutationMode mode, const MutationContext& ctx) -> Tree;

} // namespace mosr
