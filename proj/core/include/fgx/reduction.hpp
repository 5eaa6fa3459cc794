#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fgx/graph.hpp"

namespace fgx {

enum class ReductionKind : std::uint8_t { series, parallel, fork, joint };

/// Apply a series / fork / joint reduction at vertex v. Label composition:
/// series -> a*b; fork -> a*b_i per leaving edge; joint -> b_i*a per
/// entering edge. New edges are appended in the order of the edges they
/// replace. Precondition violations throw ReductionError naming the failed
/// degree condition.
StDag apply_reduction(const StDag&, ReductionKind kind, int v);

/// Parallel reduction at the vertex pair (v, w): all edges joining v to w
/// merge into one whose label sums them in storage order (existing edges
/// before newly created ones). Fewer than two edges throws ReductionError.
StDag apply_reduction(const StDag&, ReductionKind kind, int v, int w);

enum class Step : std::uint8_t { fork, joint };

/// The ordered fork/joint plan for reducing an n-vertex Fibonacci graph
/// (y = n-3 node reductions). Balanced plans have tallies differing by at
/// most one and minimize both complexity characteristics.
struct Schedule {
    int y = 0;
    std::vector<Step> steps;
    int fork_count = 0;
    int joint_count = 0;
    std::uint64_t seed = 0;

    static Schedule from_steps(std::vector<Step> steps);

    bool balanced() const;
};

/// Draw a balanced schedule: equal tallies for even y; for odd y the heavier
/// side and the interleaving both come from the seeded rand(2) stream.
/// n < 4 needs no node reductions and throws InvalidScheduleError.
Schedule make_schedule(int n, std::uint64_t seed);

/// Run the reduction method on a private copy of fib_graph(n): each step is
/// a fork at the second vertex or a joint at the last-but-one vertex,
/// followed by the one parallel reduction it enables; the 3-vertex remnant
/// collapses by a series reduction at its middle vertex plus a final
/// parallel step ordered series-product first, then the bypass label.
/// Schedule length must be max(n-3, 0).
Expr gen_reduction(int n, const Schedule&);

std::ostream& operator<<(std::ostream&, Step);

}  // namespace fgx
