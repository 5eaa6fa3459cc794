#include "fgx/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace fgx {

bool StDag::has_vertex(int v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

int StDag::in_degree(int v) const {
    int d = 0;
    for (const Edge& e : edges) d += (e.head == v);
    return d;
}

int StDag::out_degree(int v) const {
    int d = 0;
    for (const Edge& e : edges) d += (e.tail == v);
    return d;
}

StDag fib_graph(int n) {
    if (n < 1) throw InvalidSizeError("fib_graph: n must be >= 1, got " + std::to_string(n));
    StDag g;
    g.vertices.resize(n);
    for (int v = 1; v <= n; ++v) g.vertices[v - 1] = v;
    g.source = 1;
    g.sink = n;
    for (int v = 1; v <= n - 1; ++v) g.edges.push_back({v, v + 1, Expr::term(TermKind::a, v)});
    for (int v = 1; v <= n - 2; ++v) g.edges.push_back({v, v + 2, Expr::term(TermKind::b, v)});
    return g;
}

void validate(const StDag& g) {
    if (g.vertices.empty()) throw Error("st-dag has no vertices");
    if (!std::is_sorted(g.vertices.begin(), g.vertices.end()) ||
        std::adjacent_find(g.vertices.begin(), g.vertices.end()) != g.vertices.end())
        throw Error("vertex list must be sorted and duplicate-free");

    std::map<int, std::vector<int>> succ, pred;
    for (const Edge& e : g.edges) {
        if (e.tail >= e.head)
            throw Error("edge violates tail < head: " + std::to_string(e.tail) + " -> " + std::to_string(e.head));
        if (!g.has_vertex(e.tail) || !g.has_vertex(e.head)) throw Error("edge endpoint is not a vertex");
        succ[e.tail].push_back(e.head);
        pred[e.head].push_back(e.tail);
    }

    std::vector<int> sources, sinks;
    for (int v : g.vertices) {
        if (!pred.contains(v)) sources.push_back(v);
        if (!succ.contains(v)) sinks.push_back(v);
    }
    if (g.vertices.size() == 1) {
        if (g.source != g.vertices[0] || g.sink != g.vertices[0]) throw Error("trivial graph source/sink mismatch");
        return;
    }
    if (sources.size() != 1 || sources[0] != g.source)
        throw Error("st-dag must have exactly one source, the designated one");
    if (sinks.size() != 1 || sinks[0] != g.sink)
        throw Error("st-dag must have exactly one sink, the designated one");

    // every vertex reachable from the source and co-reachable from the sink
    auto reach = [&](int start, const std::map<int, std::vector<int>>& adj) {
        std::set<int> seen{start};
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            auto it = adj.find(v);
            if (it == adj.end()) continue;
            for (int w : it->second)
                if (seen.insert(w).second) stack.push_back(w);
        }
        return seen;
    };
    std::set<int> fwd = reach(g.source, succ), bwd = reach(g.sink, pred);
    for (int v : g.vertices)
        if (!fwd.contains(v) || !bwd.contains(v))
            throw Error("vertex " + std::to_string(v) + " lies on no source-to-sink path");
}

PathSet enumerate_paths(const StDag& g) {
    validate(g);

    std::map<int, std::vector<std::pair<int, Term>>> adj;  // tail -> (head, label)
    for (const Edge& e : g.edges) {
        if (!e.label.is_term())
            throw UnsupportedInputError("enumerate_paths requires atomic labels; edge " + std::to_string(e.tail) +
                                        " -> " + std::to_string(e.head) + " carries a composite label");
        adj[e.tail].emplace_back(e.head, e.label.term_value());
    }

    std::vector<Monomial> monomials;
    // explicit stack of (vertex, next-edge-index); the walk's labels live in `path`
    std::vector<std::pair<int, std::size_t>> stack{{g.source, 0}};
    Monomial path;
    while (!stack.empty()) {
        auto& [v, next] = stack.back();
        if (v == g.sink) {
            monomials.push_back(path);
            stack.pop_back();
            if (!path.empty()) path.pop_back();
            continue;
        }
        const auto& out = adj[v];
        if (next == out.size()) {
            stack.pop_back();
            if (!path.empty()) path.pop_back();
            continue;
        }
        const auto& [w, label] = out[next++];
        path.push_back(label);
        stack.emplace_back(w, 0);
    }
    return PathSet::from_monomials(std::move(monomials));
}

}  // namespace fgx
