#pragma once

#include <vector>

#include "fgx/expr.hpp"

namespace fgx {

/// One labeled edge of an st-dag. Always tail < head.
struct Edge {
    int tail;
    int head;
    Expr label;
};

/// A labeled two-terminal DAG on integer-named vertices. Vertices keep the
/// names of the Fibonacci graph they came from; reductions remove vertices
/// and leave gaps rather than renaming. Parallel edges are distinct records
/// so the reduction engine can address individual edges.
struct StDag {
    std::vector<int> vertices;  // sorted ascending
    std::vector<Edge> edges;    // storage order is significant to reductions
    int source = 0;
    int sink = 0;

    bool has_vertex(int v) const;
    int in_degree(int v) const;
    int out_degree(int v) const;
};

/// Build the n-vertex Fibonacci graph: edges (v, v+1) labeled a_v and
/// (v, v+2) labeled b_v. n = 0 throws InvalidSizeError.
StDag fib_graph(int n);

/// Check the st-dag invariants: tail < head, unique source and sink,
/// every vertex on a source-to-sink path. Throws Error on violation.
void validate(const StDag&);

/// Ground-truth oracle: one monomial per source-to-sink path, in edge-label
/// order along the path. Requires atomic (single-term) labels; composite
/// labels throw UnsupportedInputError.
PathSet enumerate_paths(const StDag&);

}  // namespace fgx
