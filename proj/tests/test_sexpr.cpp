#include <doctest.h>

#include <random>

#include "mosr/errors.hpp"
#include "mosr/sexpr.hpp"
#include "mosr/variation.hpp"

using namespace mosr;

TEST_CASE("canonical round trip of textual models")
{
    for (auto text : { "(+ x0 1)", "(exp (sin (sqrt x0)))", "(+ (* 7 (square x0)) (* 3 x0) 5)", "x12", "-3.25",
                       "(div (- x1 0.1) (tan (log (cos x0))))", "(* 1e+300 x0 -0)" }) {
        CHECK(to_sexpr(parse_sexpr(text)) == text);
    }
}

TEST_CASE("aliases and whitespace are normalized")
{
    CHECK(to_sexpr(parse_sexpr("  ( add\tx0 ( mul 2 x1 ) )\n")) == "(+ x0 (* 2 x1))");
    CHECK(to_sexpr(parse_sexpr("(sub x0 1.50)")) == "(- x0 1.5)");
    CHECK(to_sexpr(parse_sexpr("(- x0 -2)")) == "(- x0 -2)");
}

TEST_CASE("parse errors carry positions")
{
    auto position_of = [](const char* text) -> std::size_t {
        try {
            (void)parse_sexpr(text);
        } catch (const ParseError& e) {
            return e.position();
        }
        FAIL("expected a parse error for " << text);
        return 0;
    };
    CHECK_THROWS_AS(parse_sexpr("(sin x0 x1)"), ParseError);
    CHECK_THROWS_WITH_AS(parse_sexpr("(sin x0 x1)"), doctest::Contains("exactly 1"), ParseError);
    CHECK_THROWS_WITH_AS(parse_sexpr("(foo 1)"), doctest::Contains("unknown symbol 'foo'"), ParseError);
    CHECK_THROWS_WITH_AS(parse_sexpr("(+ x0)"), doctest::Contains("at least 2"), ParseError);
    CHECK(position_of("(foo 1)") == 1);
    CHECK(position_of("(+ x0 (sin x1)") == 0);
    CHECK(position_of("(+ x0 1))") == 8);
    CHECK(position_of("(+ x0 bar)") == 6);
    CHECK_THROWS_AS(parse_sexpr(""), ParseError);
    CHECK_THROWS_AS(parse_sexpr("()"), ParseError);
    CHECK_THROWS_AS(parse_sexpr("sin"), ParseError);
    CHECK_THROWS_AS(parse_sexpr("x0 x1"), ParseError);
    CHECK_THROWS_AS(parse_sexpr("xa"), ParseError);
}

TEST_CASE("property: generated trees round-trip structurally")
{
    Rng rng(2024);
    for (int i = 0; i < 2000; ++i) {
        auto t = random_tree(rng, kAllFunctions, 5, 100, 17);
        auto text = to_sexpr(t);
        auto back = parse_sexpr(text);
        REQUIRE_MESSAGE(back == t, text);
        CHECK(to_sexpr(back) == text);
    }
}
