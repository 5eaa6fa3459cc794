#include <set>
#include <string>

#include "doctest.h"

#include "fgx/analytics.hpp"
#include "fgx/graph.hpp"
#include "fgx/methods.hpp"
#include "fgx/prng.hpp"
#include "fgx/reduction.hpp"

using namespace fgx;

namespace {

const Edge* find_edge(const StDag& g, int t, int h) {
    for (const Edge& e : g.edges)
        if (e.tail == t && e.head == h) return &e;
    return nullptr;
}

std::pair<Count, Count> measured(const Expr& e) {
    ComplexityReport r = complexity(e);
    return {r.terms, r.plus_ops};
}

}  // namespace

TEST_CASE("gen_sequential") {
    CHECK(render(gen_sequential(2)) == "a1");
    CHECK(render(gen_sequential(4)) == "a1a2a3+a1b2+b1a3");
    Expr e9 = gen_sequential(9);
    CHECK(product_count(e9) == Count{34});
    CHECK(measured(e9) == std::pair{Count{201}, Count{33}});
    CHECK_THROWS_AS(gen_sequential(1), InvalidSizeError);
    CHECK_THROWS_AS(gen_sequential(29), SizeGuardError);
    CHECK_NOTHROW(gen_sequential(29, {.force = true}));
    CHECK_NOTHROW(gen_sequential(29, {.cap = 30}));
}

TEST_CASE("gen_dfs") {
    CHECK(render(gen_dfs(3)) == "a1a2+b1");
    CHECK(measured(gen_dfs(9)) == std::pair{Count{87}, Count{33}});
    CHECK(measured(gen_dfs(5)) == std::pair{Count{11}, Count{4}});
    CHECK(render(gen_dfs(9)) ==
          "a1(a2(a3(a4(a5(a6(a7a8+b7)+b6a8)+b5(a7a8+b7))+b4(a6(a7a8+b7)+b6a8))+b3(a5(a6(a7a8+b7)+b6a8)+"
          "b5(a7a8+b7)))+b2(a4(a5(a6(a7a8+b7)+b6a8)+b5(a7a8+b7))+b4(a6(a7a8+b7)+b6a8)))+b1(a3(a4(a5(a6("
          "a7a8+b7)+b6a8)+b5(a7a8+b7))+b4(a6(a7a8+b7)+b6a8))+b3(a5(a6(a7a8+b7)+b6a8)+b5(a7a8+b7)))");
    SUBCASE("opposite direction has the same counts and path set") {
        for (int n = 2; n <= 12; ++n) {
            CHECK(measured(gen_dfs(n, Direction::opposite)) == measured(gen_dfs(n)));
            CHECK(expand(gen_dfs(n, Direction::opposite)) == enumerate_paths(fib_graph(n)));
        }
    }
}

TEST_CASE("gen_dls") {
    CHECK(render(gen_dls(2)) == "a1");
    Expr e4 = gen_dls(4);
    CHECK(render(e4) == "(a1a2+b1)a3+a1b2");
    CHECK(measured(e4) == std::pair{Count{6}, Count{2}});
    CHECK(measured(gen_dls(9)) == std::pair{Count{39}, Count{14}});
    CHECK(render(gen_dls(9)) ==
          "(a1a2+b1)((a3a4+b3)((a5a6+b5)(a7a8+b7)+a5b6a8)+a3b4((a6a7+b6)a8+a6b7))+a1b2((a4a5+b4)((a6a7+"
          "b6)a8+a6b7)+a4b5(a7a8+b7))");
    SUBCASE("opposite direction") {
        for (int n = 2; n <= 12; ++n) {
            CHECK(measured(gen_dls(n, Direction::opposite)) == measured(gen_dls(n)));
            CHECK(expand(gen_dls(n, Direction::opposite)) == enumerate_paths(fib_graph(n)));
        }
    }
}

TEST_CASE("apply_reduction follows the worked figure") {
    StDag g = fib_graph(6);

    // joint at 5: entering edges pick up the a5 suffix
    g = apply_reduction(g, ReductionKind::joint, 5);
    const Edge* e46 = find_edge(g, 4, 6);
    REQUIRE(e46 != nullptr);
    // two parallel edges at (4,6) now: the original b4 plus the new a4a5
    CHECK(render(find_edge(g, 3, 6)->label) == "b3a5");
    g = apply_reduction(g, ReductionKind::parallel, 4, 6);
    CHECK(render(find_edge(g, 4, 6)->label) == "b4+a4a5");

    SUBCASE("series on a chain") {
        StDag chain;
        chain.vertices = {1, 2, 3};
        chain.source = 1;
        chain.sink = 3;
        chain.edges = {{1, 2, Expr::term(TermKind::a, 1)}, {2, 3, Expr::term(TermKind::a, 2)}};
        StDag reduced = apply_reduction(chain, ReductionKind::series, 2);
        REQUIRE(reduced.edges.size() == 1);
        CHECK(render(reduced.edges[0].label) == "a1a2");
    }
}

TEST_CASE("apply_reduction preconditions") {
    StDag g = fib_graph(6);
    // vertex 3 has in-degree 2: fork does not apply
    CHECK_THROWS_WITH_AS(apply_reduction(g, ReductionKind::fork, 3),
                         doctest::Contains("in-degree is 2"), ReductionError);
    CHECK_THROWS_WITH_AS(apply_reduction(g, ReductionKind::joint, 3),
                         doctest::Contains("out-degree is 2"), ReductionError);
    CHECK_THROWS_AS(apply_reduction(g, ReductionKind::series, 3), ReductionError);
    CHECK_THROWS_AS(apply_reduction(g, ReductionKind::parallel, 1, 3), ReductionError);  // single edge
    CHECK_THROWS_AS(apply_reduction(g, ReductionKind::fork, 42), ReductionError);
    // reductions keep the graph a valid st-dag
    CHECK_NOTHROW(validate(apply_reduction(g, ReductionKind::fork, 2)));
}

TEST_CASE("make_schedule") {
    SUBCASE("even y splits evenly") {
        Schedule s = make_schedule(9, 0);
        CHECK(s.y == 6);
        CHECK(s.fork_count == 3);
        CHECK(s.joint_count == 3);
        CHECK(s.steps.size() == 6);
        CHECK(s.balanced());
    }

    SUBCASE("odd y lands on one of the two balanced tallies") {
        for (std::uint64_t seed = 0; seed < 32; ++seed) {
            Schedule s = make_schedule(10, seed);
            CHECK(s.y == 7);
            bool fork_heavy = s.fork_count == 4 && s.joint_count == 3;
            bool joint_heavy = s.fork_count == 3 && s.joint_count == 4;
            CHECK((fork_heavy || joint_heavy));
            CHECK(s.balanced());
        }
    }

    SUBCASE("n=4 has a single step") {
        Schedule s = make_schedule(4, 1);
        CHECK(s.y == 1);
        CHECK(s.steps.size() == 1);
    }

    SUBCASE("deterministic per seed") {
        for (int n : {8, 13}) {
            Schedule s1 = make_schedule(n, 42), s2 = make_schedule(n, 42);
            CHECK(s1.steps == s2.steps);
        }
    }

    SUBCASE("n < 4 needs no reductions") { CHECK_THROWS_AS(make_schedule(3, 0), InvalidScheduleError); }
}

TEST_CASE("gen_reduction") {
    SUBCASE("the 5-vertex figure, both orders") {
        Expr fj = gen_reduction(5, Schedule::from_steps({Step::fork, Step::joint}));
        Expr jf = gen_reduction(5, Schedule::from_steps({Step::joint, Step::fork}));
        CHECK(render(fj) == "(b1+a1a2)(b3+a3a4)+a1b2a4");
        CHECK(jf == fj);
    }

    SUBCASE("n=6 balanced counts") {
        for (auto steps : {std::vector<Step>{Step::joint, Step::fork, Step::joint},
                           std::vector<Step>{Step::fork, Step::joint, Step::joint},
                           std::vector<Step>{Step::joint, Step::joint, Step::fork}}) {
            CHECK(measured(gen_reduction(6, Schedule::from_steps(steps))) == std::pair{Count{14}, Count{5}});
        }
    }

    SUBCASE("small sizes without node reductions") {
        CHECK(render(gen_reduction(2, Schedule{})) == "a1");
        CHECK(render(gen_reduction(3, Schedule{})) == "a1a2+b1");
    }

    SUBCASE("schedule length must match") {
        CHECK_THROWS_AS(gen_reduction(6, Schedule::from_steps({Step::fork})), InvalidScheduleError);
        CHECK_THROWS_AS(gen_reduction(2, Schedule::from_steps({Step::fork})), InvalidScheduleError);
    }

    SUBCASE("expansion is sound") {
        SplitMix64 rng(3);
        for (int n = 4; n <= 12; ++n) {
            Schedule s = make_schedule(n, rng.next());
            CHECK(expand(gen_reduction(n, s)) == enumerate_paths(fib_graph(n)));
        }
    }
}

TEST_CASE("order independence: same tallies, same AST") {
    SplitMix64 rng(11);
    for (int n = 4; n <= 12; ++n) {
        int y = n - 3;
        for (int forks = 0; forks <= y; ++forks) {
            // reference: forks first, joints after
            std::vector<Step> ref(y, Step::joint);
            std::fill_n(ref.begin(), forks, Step::fork);
            Expr want = gen_reduction(n, Schedule::from_steps(ref));
            for (int trial = 0; trial < 8; ++trial) {
                std::vector<Step> steps = ref;
                for (std::size_t i = steps.size(); i > 1; --i) std::swap(steps[i - 1], steps[rng.below(i)]);
                CHECK(gen_reduction(n, Schedule::from_steps(steps)) == want);
            }
        }
    }
}

TEST_CASE("gen_reduction_optimal") {
    CHECK(render(gen_reduction_optimal(3)) == "a1a2+b1");
    CHECK(measured(gen_reduction_optimal(3)) == std::pair{Count{3}, Count{1}});
    CHECK(measured(gen_reduction_optimal(5)) == std::pair{Count{9}, Count{3}});
    // the composed form keeps the printed algorithm's operand order, which
    // differs from the engine's bypass-first labels ((b1+a1a2)... there)
    CHECK(render(gen_reduction_optimal(5)) == "(a1a2+b1)(a3a4+b3)+a1b2a4");
    CHECK(measured(gen_reduction_optimal(9)) == std::pair{Count{35}, Count{13}});
    CHECK(render(gen_reduction_optimal(9)) ==
          "(((a1a2+b1)a3+a1b2)a4+(a1a2+b1)b3)(a5(a6(a7a8+b7)+b6a8)+b5(a7a8+b7))+((a1a2+b1)a3+a1b2)b4("
          "a6(a7a8+b7)+b6a8)");

    SUBCASE("even n: the two mirrored splits are the section-1 optimal forms") {
        CHECK(render(gen_reduction_optimal(4, Heavier::joint)) == "a1(a2a3+b2)+b1a3");
        CHECK(render(gen_reduction_optimal(4, Heavier::fork)) == "(a1a2+b1)a3+a1b2");
        for (int n = 4; n <= 16; n += 2)
            CHECK(measured(gen_reduction_optimal(n, Heavier::fork)) ==
                  measured(gen_reduction_optimal(n, Heavier::joint)));
    }

    SUBCASE("odd n ignores the heavier flag") {
        for (int n = 3; n <= 15; n += 2)
            CHECK(gen_reduction_optimal(n, Heavier::fork) == gen_reduction_optimal(n, Heavier::joint));
    }

    SUBCASE("matches the engine's counts on balanced schedules") {
        for (int n = 4; n <= 20; ++n) {
            Schedule s = make_schedule(n, 5);
            CHECK(measured(gen_reduction(n, s)) == measured(gen_reduction_optimal(n)));
        }
    }
}

TEST_CASE("gen_decomposition") {
    CHECK(render(gen_decomposition(2)) == "a1");
    Expr e5 = gen_decomposition(5);
    CHECK(render(e5) == "(a1a2+b1)(a3a4+b3)+a1b2a4");
    CHECK(measured(e5) == std::pair{Count{9}, Count{3}});
    CHECK(measured(gen_decomposition(9)) == std::pair{Count{31}, Count{11}});
    CHECK(render(gen_decomposition(9)) ==
          "((a1a2+b1)(a3a4+b3)+a1b2a4)((a5a6+b5)(a7a8+b7)+a5b6a8)+(a1(a2a3+b2)+b1a3)b4(a6(a7a8+b7)+"
          "b6a8)");

    SUBCASE("invalid strategy is reported with the interval") {
        ChoiceFn bad = [](int, int q) { return q; };
        CHECK_THROWS_AS(gen_decomposition(6, bad), InvalidChoiceError);
    }

    SUBCASE("middle-ceil also attains the optimal counts") {
        for (int n = 2; n <= 20; ++n)
            CHECK(measured(gen_decomposition(n, middle_ceil_strategy())) == measured(gen_decomposition(n)));
    }

    SUBCASE("large n stays cheap") {
        Expr big = gen_decomposition(4096);
        auto [t, p] = measured(big);
        auto [pt, pp] = predicted_counts(MethodId::decomposition_optimal, 4096);
        CHECK(t == pt);
        CHECK(p == pp);
    }
}

TEST_CASE("decomposition embeddings") {
    for (int n = 2; n <= 15; ++n) {
        CAPTURE(n);
        CHECK(gen_decomposition(n, fixed_offset_strategy(1)) == gen_dfs(n));
        CHECK(gen_decomposition(n, fixed_offset_strategy(2)) == gen_dls(n));
    }
}

TEST_CASE("arbitrary first split then i=p+1 matches the reduction engine's counts") {
    // split at c, then leftmost choices: count-equivalent to running c-2 fork
    // reductions (the ASTs differ, the left pieces accumulate in the other
    // direction)
    for (int n = 4; n <= 12; ++n) {
        for (int c = 2; c <= n - 1; ++c) {
            CAPTURE(n);
            CAPTURE(c);
            ChoiceFn first_then_leftmost = [c, n](int p, int q) { return p == 1 && q == n ? c : p + 1; };
            int y = n - 3;
            std::vector<Step> steps(y, Step::joint);
            std::fill_n(steps.begin(), c - 2, Step::fork);
            CHECK(measured(gen_decomposition(n, first_then_leftmost)) ==
                  measured(gen_reduction(n, Schedule::from_steps(steps))));
        }
    }
}

TEST_CASE("gen_gd") {
    SUBCASE("m outside [2, n-1]") {
        CHECK_THROWS_AS(gen_gd(6, {.m = 1}), InvalidPartCountError);
        CHECK_THROWS_AS(gen_gd(6, {.m = 6}), InvalidPartCountError);
        CHECK_NOTHROW(gen_gd(6, {.m = 5}));
    }

    SUBCASE("m=2 equals decomposition at the same split vertex") {
        for (int n = 3; n <= 15; ++n)
            CHECK(gen_gd(n, {.m = 2}) == gen_decomposition(n, middle_ceil_strategy()));
    }

    SUBCASE("m=n-1 degenerates to the sequential paths set") {
        for (int n = 3; n <= 12; ++n)
            CHECK(expand(gen_gd(n, {.m = n - 1})) == expand(gen_sequential(n)));
    }

    SUBCASE("m=3, n=9 expands to the 34-path oracle") {
        CHECK(expand(gen_gd(9, {.m = 3})) == enumerate_paths(fib_graph(9)));
    }
}

TEST_CASE("soundness: every generator expands to the canonical path set") {
    for (int n = 2; n <= 13; ++n) {
        CAPTURE(n);
        PathSet want = enumerate_paths(fib_graph(n));
        CHECK(expand(gen_sequential(n)) == want);
        CHECK(expand(gen_dfs(n)) == want);
        CHECK(expand(gen_dls(n)) == want);
        CHECK(expand(gen_reduction_optimal(n)) == want);
        CHECK(expand(gen_decomposition(n)) == want);
        for (int m = 2; m <= n - 1; ++m) {
            CAPTURE(m);
            CHECK(expand(gen_gd(n, {.m = m})) == want);
        }
    }
}

TEST_CASE("count fidelity against the recurrences") {
    for (int n = 2; n <= 18; ++n) {
        CAPTURE(n);
        CHECK(measured(gen_sequential(n)) == predicted_counts(MethodId::sequential, n));
        CHECK(measured(gen_dfs(n)) == predicted_counts(MethodId::dfs, n));
        CHECK(measured(gen_dls(n)) == predicted_counts(MethodId::dls, n));
        CHECK(measured(gen_reduction_optimal(n)) == predicted_counts(MethodId::reduction_optimal, n));
        CHECK(measured(gen_decomposition(n)) == predicted_counts(MethodId::decomposition_optimal, n));
    }
}
