#include "fgx/reduction.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <string>

#include "fgx/prng.hpp"

namespace fgx {

namespace {

void require_vertex(const StDag& g, int v, const char* what) {
    if (!g.has_vertex(v)) throw ReductionError(std::string(what) + " at vertex " + std::to_string(v) + ": no such vertex");
}

void erase_vertex(StDag& g, int v) {
    g.vertices.erase(std::remove(g.vertices.begin(), g.vertices.end(), v), g.vertices.end());
}

}  // namespace

StDag apply_reduction(const StDag& g, ReductionKind kind, int v) {
    if (kind == ReductionKind::parallel)
        throw ReductionError("parallel reduction takes a vertex pair");

    StDag out = g;
    std::vector<Edge> in, leaving;
    for (const Edge& e : g.edges) {
        if (e.head == v) in.push_back(e);
        if (e.tail == v) leaving.push_back(e);
    }

    switch (kind) {
        case ReductionKind::series: {
            require_vertex(g, v, "series reduction");
            if (in.size() != 1)
                throw ReductionError("series reduction at vertex " + std::to_string(v) + ": in-degree is " +
                                     std::to_string(in.size()) + ", expected 1");
            if (leaving.size() != 1)
                throw ReductionError("series reduction at vertex " + std::to_string(v) + ": out-degree is " +
                                     std::to_string(leaving.size()) + ", expected 1");
            std::erase_if(out.edges, [v](const Edge& e) { return e.tail == v || e.head == v; });
            out.edges.push_back({in[0].tail, leaving[0].head, Expr::product({in[0].label, leaving[0].label})});
            erase_vertex(out, v);
            return out;
        }
        case ReductionKind::fork: {
            require_vertex(g, v, "fork reduction");
            if (in.size() != 1)
                throw ReductionError("fork reduction at vertex " + std::to_string(v) + ": in-degree is " +
                                     std::to_string(in.size()) + ", expected 1");
            if (leaving.empty())
                throw ReductionError("fork reduction at vertex " + std::to_string(v) + ": out-degree is 0");
            std::erase_if(out.edges, [v](const Edge& e) { return e.tail == v || e.head == v; });
            for (const Edge& b : leaving)
                out.edges.push_back({in[0].tail, b.head, Expr::product({in[0].label, b.label})});
            erase_vertex(out, v);
            return out;
        }
        case ReductionKind::joint: {
            require_vertex(g, v, "joint reduction");
            if (leaving.size() != 1)
                throw ReductionError("joint reduction at vertex " + std::to_string(v) + ": out-degree is " +
                                     std::to_string(leaving.size()) + ", expected 1");
            if (in.empty())
                throw ReductionError("joint reduction at vertex " + std::to_string(v) + ": in-degree is 0");
            std::erase_if(out.edges, [v](const Edge& e) { return e.tail == v || e.head == v; });
            for (const Edge& b : in)
                out.edges.push_back({b.tail, leaving[0].head, Expr::product({b.label, leaving[0].label})});
            erase_vertex(out, v);
            return out;
        }
        default:
            throw ReductionError("unknown reduction kind");
    }
}

StDag apply_reduction(const StDag& g, ReductionKind kind, int v, int w) {
    if (kind != ReductionKind::parallel)
        throw ReductionError("only parallel reductions take a vertex pair");
    require_vertex(g, v, "parallel reduction");
    require_vertex(g, w, "parallel reduction");

    std::vector<Expr> labels;  // storage order: existing edges precede newer ones
    for (const Edge& e : g.edges)
        if (e.tail == v && e.head == w) labels.push_back(e.label);
    if (labels.size() < 2)
        throw ReductionError("parallel reduction at vertices " + std::to_string(v) + " and " + std::to_string(w) +
                             ": found " + std::to_string(labels.size()) + " edges, expected at least 2");

    StDag out = g;
    std::erase_if(out.edges, [v, w](const Edge& e) { return e.tail == v && e.head == w; });
    out.edges.push_back({v, w, Expr::sum(std::move(labels))});
    return out;
}

// ---------------------------------------------------------------------------
// schedules

Schedule Schedule::from_steps(std::vector<Step> steps) {
    Schedule s;
    s.y = static_cast<int>(steps.size());
    for (Step st : steps) (st == Step::fork ? s.fork_count : s.joint_count)++;
    s.steps = std::move(steps);
    return s;
}

bool Schedule::balanced() const {
    if (y % 2 == 0) return fork_count == joint_count;
    return std::abs(fork_count - joint_count) == 1;
}

Schedule make_schedule(int n, std::uint64_t seed) {
    if (n < 4)
        throw InvalidScheduleError("make_schedule: n = " + std::to_string(n) +
                                   " needs no node reductions (requires n >= 4)");
    SplitMix64 rng(seed);
    int y = n - 3;
    int forks, joints;
    if (y % 2 == 0) {
        forks = joints = y / 2;
    } else if (rng.rand2() == 1) {
        forks = (y - 1) / 2;
        joints = (y + 1) / 2;
    } else {
        forks = (y + 1) / 2;
        joints = (y - 1) / 2;
    }

    Schedule s;
    s.y = y;
    s.fork_count = forks;
    s.joint_count = joints;
    s.seed = seed;
    while (forks > 0 && joints > 0) {
        if (rng.rand2() == 1) {
            s.steps.push_back(Step::fork);
            --forks;
        } else {
            s.steps.push_back(Step::joint);
            --joints;
        }
    }
    while (forks-- > 0) s.steps.push_back(Step::fork);
    while (joints-- > 0) s.steps.push_back(Step::joint);
    return s;
}

// ---------------------------------------------------------------------------
// the reduction method

namespace {

// The one parallel pair a node reduction leaves behind.
std::pair<int, int> find_parallel_pair(const StDag& g) {
    std::map<std::pair<int, int>, int> count;
    for (const Edge& e : g.edges) ++count[{e.tail, e.head}];
    std::pair<int, int> found{-1, -1};
    for (const auto& [vw, c] : count) {
        if (c < 2) continue;
        if (found.first != -1) throw Error("reduction engine: multiple parallel pairs");
        found = vw;
    }
    if (found.first == -1) throw Error("reduction engine: node reduction created no parallel pair");
    return found;
}

}  // namespace

Expr gen_reduction(int n, const Schedule& schedule) {
    if (n < 2) throw InvalidSizeError("gen_reduction: n must be >= 2, got " + std::to_string(n));
    int want = std::max(n - 3, 0);
    if (static_cast<int>(schedule.steps.size()) != want)
        throw InvalidScheduleError("gen_reduction: schedule has " + std::to_string(schedule.steps.size()) +
                                   " steps, n = " + std::to_string(n) + " needs " + std::to_string(want));

    StDag g = fib_graph(n);
    for (Step step : schedule.steps) {
        int v = step == Step::fork ? g.vertices[1] : g.vertices[g.vertices.size() - 2];
        g = apply_reduction(g, step == Step::fork ? ReductionKind::fork : ReductionKind::joint, v);
        auto [pv, pw] = find_parallel_pair(g);
        g = apply_reduction(g, ReductionKind::parallel, pv, pw);
    }

    if (g.vertices.size() == 2) return g.edges.front().label;  // n = 2

    // 3-vertex series-parallel remnant: series at the middle, then the final
    // parallel ordered series-product first, bypass second.
    g = apply_reduction(g, ReductionKind::series, g.vertices[1]);
    Expr series = g.edges.back().label;
    if (g.edges.size() == 1) return series;
    return Expr::sum({series, g.edges.front().label});
}

std::ostream& operator<<(std::ostream& os, Step s) { return os << (s == Step::fork ? "fork" : "joint"); }

}  // namespace fgx
