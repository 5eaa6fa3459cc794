#include <string>
#include <vector>

#include "doctest.h"

#include "fgx/analytics.hpp"
#include "fgx/expr.hpp"
#include "fgx/graph.hpp"
#include "fgx/methods.hpp"
#include "fgx/prng.hpp"

using namespace fgx;

namespace {

Expr a(int i) { return Expr::term(TermKind::a, i); }
Expr b(int i) { return Expr::term(TermKind::b, i); }

}  // namespace

TEST_CASE("construction and normalization") {
    SUBCASE("One is absorbed by products") {
        CHECK(Expr::product({a(1), Expr::one()}) == a(1));
        CHECK(Expr::product({Expr::one(), Expr::one()}).is_one());
        CHECK(Expr::product({Expr::one(), b(2), Expr::one()}) == b(2));
    }

    SUBCASE("singleton sums and products collapse") {
        CHECK(Expr::sum({a(3)}) == a(3));
        CHECK(Expr::product({a(3)}) == a(3));
    }

    SUBCASE("products flatten associatively") {
        Expr left = Expr::product({Expr::product({a(1), b(2)}), a(4)});
        Expr right = Expr::product({a(1), Expr::product({b(2), a(4)})});
        CHECK(left == right);
        CHECK(left.operands().size() == 3);
    }

    SUBCASE("sums flatten") {
        Expr s = Expr::sum({Expr::sum({a(1), a(2)}), a(3)});
        CHECK(s.operands().size() == 3);
        CHECK(s == Expr::sum({a(1), a(2), a(3)}));
    }

    SUBCASE("sums inside products stay nested") {
        Expr e = Expr::product({Expr::sum({a(1), b(1)}), a(2)});
        REQUIRE(e.is_product());
        CHECK(e.operands()[0].is_sum());
    }

    SUBCASE("operand order matters") {
        CHECK_FALSE(Expr::sum({a(1), b(1)}) == Expr::sum({b(1), a(1)}));
    }

    SUBCASE("index 0 rejected") { CHECK_THROWS_AS(Expr::term(TermKind::a, 0), InvalidExpressionError); }
}

TEST_CASE("complexity") {
    SUBCASE("single term") {
        ComplexityReport r = complexity(a(1));
        CHECK(r.terms == Count{1});
        CHECK(r.plus_ops == Count{0});
        CHECK_FALSE(r.products.has_value());
    }

    SUBCASE("paper counts for the n=9 DFS and DLS expressions") {
        ComplexityReport dfs = complexity(gen_dfs(9));
        CHECK(dfs.terms == Count{87});
        CHECK(dfs.plus_ops == Count{33});
        ComplexityReport dls = complexity(gen_dls(9));
        CHECK(dls.terms == Count{39});
        CHECK(dls.plus_ops == Count{14});
    }

    SUBCASE("terms >= plus_ops + 1 for generator outputs") {
        for (int n = 2; n <= 12; ++n) {
            ComplexityReport r = complexity(gen_dls(n));
            CHECK(r.terms >= r.plus_ops + Count{1});
        }
    }
}

TEST_CASE("render") {
    CHECK(render(Expr::sum({Expr::product({a(1), a(2)}), b(1)})) == "a1a2+b1");
    CHECK(render(Expr::product({Expr::sum({Expr::product({a(1), a(2)}), b(1)}), a(3)})) == "(a1a2+b1)a3");
    CHECK(render(gen_reduction(5, Schedule::from_steps({Step::fork, Step::joint}))) ==
          "(b1+a1a2)(b3+a3a4)+a1b2a4");
}

TEST_CASE("parse") {
    SUBCASE("single term") {
        Expr e = parse("a1");
        CHECK(e == a(1));
    }

    SUBCASE("the optimal form of the 4-vertex subgraph") {
        Expr e = parse("(a1a2+b1)a3+a1b2");
        Expr want = Expr::sum({Expr::product({Expr::sum({Expr::product({a(1), a(2)}), b(1)}), a(3)}),
                               Expr::product({a(1), b(2)})});
        CHECK(e == want);
    }

    SUBCASE("dangling operator reports offset 5") {
        try {
            parse("a1a2+");
            FAIL("expected ParseError");
        } catch (const ParseError& err) {
            CHECK(err.offset == 5);
        }
    }

    SUBCASE("index 0 rejected") { CHECK_THROWS_AS(parse("a0"), ParseError); }
    SUBCASE("whitespace rejected") { CHECK_THROWS_AS(parse("a1 +b1"), ParseError); }
    SUBCASE("unbalanced paren") { CHECK_THROWS_AS(parse("(a1a2+b1"), ParseError); }
    SUBCASE("trailing garbage") { CHECK_THROWS_AS(parse("a1)"), ParseError); }
    SUBCASE("empty input") { CHECK_THROWS_AS(parse(""), ParseError); }
    SUBCASE("big index round-trips") { CHECK(parse("a123456") == a(123456)); }
}

TEST_CASE("round trip across all generators") {
    for (int n = 2; n <= 20; ++n) {
        CAPTURE(n);
        std::vector<Expr> outs = {gen_dfs(n), gen_dfs(n, Direction::opposite), gen_dls(n),
                                  gen_dls(n, Direction::opposite), gen_reduction_optimal(n),
                                  gen_decomposition(n)};
        if (n <= 15) outs.push_back(gen_sequential(n));
        if (n >= 3) outs.push_back(gen_gd(n, {.m = 2}));
        for (const Expr& e : outs) {
            std::string text = render(e);
            Expr back = parse(text);
            CHECK(back == e);
            CHECK(complexity(back) == complexity(e));
        }
    }
}

TEST_CASE("expand") {
    SUBCASE("single term") {
        PathSet ps = expand(a(1));
        REQUIRE(ps.size() == 1);
        CHECK(ps.monomials()[0] == Monomial{{TermKind::a, 1}});
    }

    SUBCASE("the section-1 equivalent form expands to the three paths") {
        PathSet ps = expand(parse("(a1a2+b1)a3+a1b2"));
        CHECK(ps == enumerate_paths(fib_graph(4)));
    }

    SUBCASE("factor order is preserved left to right") {
        PathSet ps = expand(parse("b1a3"));
        CHECK(ps.monomials()[0] == Monomial{{TermKind::b, 1}, {TermKind::a, 3}});
    }

    SUBCASE("dls(9) expands to the 34-path oracle") {
        CHECK(expand(gen_dls(9)) == enumerate_paths(fib_graph(9)));
    }

    SUBCASE("duplicate monomials are a generator bug") {
        CHECK_THROWS_AS(expand(parse("a1+a1")), InvalidExpressionError);
    }
}

TEST_CASE("eval") {
    SUBCASE("all-ones counts paths: n=9 gives 34, n=4 gives 3") {
        for (int n : {4, 9}) {
            TermMap<Count> ones;
            for (int i = 1; i < n; ++i) ones[{TermKind::a, i}] = Count{1};
            for (int i = 1; i + 1 < n; ++i) ones[{TermKind::b, i}] = Count{1};
            CHECK(eval(gen_dfs(n), ones) == Count{n == 9 ? 34u : 3u});
        }
    }

    SUBCASE("missing binding throws") {
        TermMap<Count> empty;
        CHECK_THROWS_AS(eval(a(1), empty), UnboundTermError);
    }

    SUBCASE("random prime-field assignment agrees between dfs and dls at n=7") {
        SplitMix64 rng(7);
        TermMap<std::uint64_t> asg;
        for (int i = 1; i < 7; ++i) asg[{TermKind::a, i}] = rng.below(kDefaultPrime);
        for (int i = 1; i + 1 < 7; ++i) asg[{TermKind::b, i}] = rng.below(kDefaultPrime);
        std::uint64_t canonical = 0;
        PathSet paths = enumerate_paths(fib_graph(7));
        for (const Monomial& m : paths.monomials()) {
            unsigned __int128 prod = 1;
            for (const Term& t : m) prod = prod * asg[t] % kDefaultPrime;
            canonical = (canonical + static_cast<std::uint64_t>(prod)) % kDefaultPrime;
        }
        CHECK(eval_mod(gen_dfs(7), asg, kDefaultPrime) == canonical);
        CHECK(eval_mod(gen_dls(7), asg, kDefaultPrime) == canonical);
    }
}

TEST_CASE("all-ones integer evaluation equals F_n") {
    // polynomial methods cover the full 2..40 range; exponential ones to 18
    for (int n = 2; n <= 40; ++n) {
        TermMap<Count> ones;
        for (int i = 1; i < n; ++i) ones[{TermKind::a, i}] = Count{1};
        for (int i = 1; i + 1 < n; ++i) ones[{TermKind::b, i}] = Count{1};
        Count want = fib_count(n);
        CAPTURE(n);
        CHECK(eval(gen_decomposition(n), ones) == want);
        if (n >= 4) CHECK(eval(gen_gd(n, {.m = 3}), ones) == want);
        if (n <= 18) {
            CHECK(eval(gen_sequential(n), ones) == want);
            CHECK(eval(gen_dfs(n), ones) == want);
            CHECK(eval(gen_dls(n), ones) == want);
            CHECK(eval(gen_reduction_optimal(n), ones) == want);
        }
    }
}

TEST_CASE("count overflow is detected, not wrapped") {
    Count big{~std::uint64_t{0}};
    Count huge = big * big;  // ~2^128 / 2^64 margin left
    CHECK_THROWS_AS(huge * huge, RangeError);
    CHECK(huge.str().size() > 30);
}
