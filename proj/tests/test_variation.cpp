#include <doctest.h>

#include <algorithm>
#include <set>

#include "mosr/sexpr.hpp"
#include "mosr/variation.hpp"

using namespace mosr;

namespace {

auto count_if_symbol(const Tree& t, auto pred) -> std::size_t
{
    auto nodes = t.nodes();
    return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), pred));
}

} // namespace

TEST_CASE("random_tree with max_length 1 yields a single leaf")
{
    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
        auto t = random_tree(rng, kAllFunctions, 3, 1, 17);
        REQUIRE(t.length() == 1);
        CHECK(t[0].is_leaf());
    }
}

TEST_CASE("random_tree obeys both caps and only emits binary n-ary functions")
{
    Rng rng(7);
    std::set<std::size_t> lengths;
    for (int i = 0; i < 5000; ++i) {
        std::size_t max_length = 1 + i % 100;
        std::size_t max_depth = 1 + i % 17;
        auto t = random_tree(rng, kAllFunctions, 4, max_length, max_depth);
        REQUIRE(t.length() <= max_length);
        REQUIRE(t.depth() <= max_depth);
        for (const auto& n : t.nodes()) {
            if (is_nary(n.symbol)) { REQUIRE(n.arity == 2); }
            if (n.symbol == Symbol::Variable) { REQUIRE(n.variable < 4); }
            if (n.symbol == Symbol::Constant) {
                REQUIRE(n.value >= kConstantMin);
                REQUIRE(n.value <= kConstantMax);
            }
        }
    }
    for (int i = 0; i < 300; ++i) {
        lengths.insert(random_tree(rng, kAllFunctions, 4, 100, 17).length());
    }
    // the target length is drawn over the whole range
    CHECK(lengths.size() > 10);
}

TEST_CASE("random_tree leaves are split between variables and constants")
{
    Rng rng(3);
    std::size_t vars = 0;
    std::size_t consts = 0;
    for (int i = 0; i < 4000; ++i) {
        auto leaf = random_tree(rng, kAllFunctions, 2, 1, 17)[0];
        (leaf.symbol == Symbol::Variable ? vars : consts) += 1;
    }
    CHECK(vars > 1800);
    CHECK(consts > 1800);
}

TEST_CASE("random_tree and crossover are deterministic per seed")
{
    Rng a(99);
    Rng b(99);
    for (int i = 0; i < 50; ++i) {
        auto ta = random_tree(a, kAllFunctions, 3, 60, 17);
        auto tb = random_tree(b, kAllFunctions, 3, 60, 17);
        REQUIRE(ta == tb);
    }
    auto p1 = parse_sexpr("(+ (* 7 (square x0)) (* 3 x0) 5)");
    auto p2 = parse_sexpr("(exp (sin (sqrt x1)))");
    Rng c(5);
    Rng d(5);
    CHECK(crossover(p1, p2, c, 100) == crossover(p1, p2, d, 100));
}

TEST_CASE("crossover of single leaves yields a single leaf")
{
    Rng rng(4);
    auto p1 = parse_sexpr("x0");
    auto p2 = parse_sexpr("2.5");
    for (int i = 0; i < 20; ++i) {
        CHECK(crossover(p1, p2, rng, 100).length() == 1);
    }
}

TEST_CASE("crossover falls back to an unmodified copy of parent1")
{
    Rng rng(8);
    auto p1 = parse_sexpr("(+ x0 x1)");
    auto p2 = parse_sexpr("(+ (* x0 x0) (* x1 x1))");
    // no child fits a zero-length cap
    for (int i = 0; i < 20; ++i) {
        CHECK(crossover(p1, p2, rng, 0) == p1);
    }
}

TEST_CASE("crossover child is built from both parents")
{
    Rng rng(10);
    auto p1 = parse_sexpr("(+ (sin x0) (cos x0))");
    auto p2 = parse_sexpr("(* (exp x1) (log x1))");
    bool saw_donor = false;
    for (int i = 0; i < 100; ++i) {
        auto child = crossover(p1, p2, rng, 100);
        if (count_if_symbol(child, [](const Node& n) { return n.symbol == Symbol::Variable && n.variable == 1; }) > 0) {
            saw_donor = true;
        }
    }
    CHECK(saw_donor);
}

TEST_CASE("mutation: constant jitter preserves structure")
{
    Rng rng(12);
    MutationContext ctx { kAllFunctions, 2, 100, 17 };
    auto t = parse_sexpr("(+ 1 x0)");
    for (int i = 0; i < 50; ++i) {
        auto m = mutate(t, rng, MutationMode::JitterConstant, ctx);
        REQUIRE(m.length() == 3);
        CHECK(m[0] == t[0]);
        CHECK(m[2] == t[2]);
        CHECK(m[1].symbol == Symbol::Constant);
        CHECK(m[1].value != 1.0);
    }
}

TEST_CASE("mutation: symbol change on a unary node enumerates the other unary symbols")
{
    Rng rng(13);
    MutationContext ctx { kAllFunctions, 1, 100, 17 };
    auto t = parse_sexpr("(sin x0)");
    std::set<std::string> seen;
    for (int i = 0; i < 500; ++i) {
        seen.insert(to_sexpr(mutate(t, rng, MutationMode::ChangeSymbol, ctx)));
    }
    const std::set<std::string> expected { "(cos x0)", "(tan x0)", "(exp x0)", "(log x0)", "(square x0)", "(sqrt x0)" };
    CHECK(seen == expected);
}

TEST_CASE("mutation: symbol change on binary nodes stays within add/sub/mul/div")
{
    Rng rng(14);
    MutationContext ctx { kAllFunctions, 1, 100, 17 };
    auto t = parse_sexpr("(+ x0 2)");
    std::set<std::string> seen;
    for (int i = 0; i < 300; ++i) {
        seen.insert(to_sexpr(mutate(t, rng, MutationMode::ChangeSymbol, ctx)));
    }
    CHECK(seen == std::set<std::string> { "(- x0 2)", "(* x0 2)", "(div x0 2)" });
}

TEST_CASE("mutation: variable change picks a different index")
{
    Rng rng(15);
    MutationContext ctx { kAllFunctions, 3, 100, 17 };
    auto t = parse_sexpr("(+ x1 2)");
    std::set<std::uint32_t> seen;
    for (int i = 0; i < 200; ++i) {
        auto m = mutate(t, rng, MutationMode::ChangeVariable, ctx);
        REQUIRE(m[1].symbol == Symbol::Variable);
        seen.insert(m[1].variable);
    }
    CHECK(seen == std::set<std::uint32_t> { 0, 2 });
}

TEST_CASE("mutation: inapplicable modes are skipped")
{
    MutationContext ctx { kAllFunctions, 1, 100, 17 };
    auto leaf = parse_sexpr("x0");
    CHECK_FALSE(mutation_applicable(leaf, MutationMode::ChangeSymbol, ctx));
    CHECK_FALSE(mutation_applicable(leaf, MutationMode::JitterConstant, ctx));
    CHECK_FALSE(mutation_applicable(leaf, MutationMode::ChangeVariable, ctx));
    CHECK(mutation_applicable(leaf, MutationMode::ReplaceSubtree, ctx));
    Rng rng(16);
    CHECK(mutate(leaf, rng, MutationMode::JitterConstant, ctx) == leaf);
    for (int i = 0; i < 50; ++i) {
        CHECK(mutate(leaf, rng, ctx).length() <= 100);
    }
}

TEST_CASE("property: cap safety over 10,000 crossover and mutation applications")
{
    Rng rng(31337);
    MutationContext ctx { kAllFunctions, 5, 100, 17 };
    std::vector<Tree> pool;
    for (int i = 0; i < 100; ++i) {
        pool.push_back(random_tree(rng, kAllFunctions, 5, 100, 17));
    }
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::size_t longest = 0;
    for (int op = 0; op < 10000; ++op) {
        auto& slot = pool[pick(rng)];
        Tree child = op % 2 == 0 ? crossover(slot, pool[pick(rng)], rng, 100, 17) : mutate(slot, rng, ctx);
        REQUIRE(child.length() <= 100);
        REQUIRE(child.depth() <= 17);
        longest = std::max(longest, child.length());
        slot = std::move(child);
    }
    CHECK(longest > 50);
}
