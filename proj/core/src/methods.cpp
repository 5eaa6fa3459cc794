#include "fgx/methods.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace fgx {

namespace {

void require_min_size(int n, const char* who) {
    if (n < 2) throw InvalidSizeError(std::string(who) + ": n must be >= 2, got " + std::to_string(n));
}

void guard_size(int n, const GenOptions& opts, const char* who) {
    if (n > opts.cap && !opts.force)
        throw SizeGuardError(std::string(who) + ": n = " + std::to_string(n) + " exceeds the size cap " +
                             std::to_string(opts.cap) + "; force to override");
}

// Shares the term leaves across an expression under construction.
class TermPool {
public:
    explicit TermPool(int n) : a_(n, Expr::one()), b_(n, Expr::one()) {
        for (int i = 1; i <= n - 1; ++i) a_[i] = Expr::term(TermKind::a, i);
        for (int i = 1; i <= n - 2; ++i) b_[i] = Expr::term(TermKind::b, i);
    }
    const Expr& a(int i) const { return a_.at(i); }
    const Expr& b(int i) const { return b_.at(i); }

private:
    std::vector<Expr> a_, b_;
};

// E_i over [p, q]: E_q = 1, E_{q-1} = a_{q-1}, E_i = a_i E_{i+1} + b_i E_{i+2}.
Expr dfs_direct_interval(int p, int q, const TermPool& t) {
    if (q == p) return Expr::one();
    if (q == p + 1) return t.a(p);
    std::vector<Expr> e(q - p + 1);  // e[i - p]
    e[q - p] = Expr::one();
    e[q - 1 - p] = t.a(q - 1);
    for (int i = q - 2; i >= p; --i)
        e[i - p] = Expr::sum({Expr::product({t.a(i), e[i + 1 - p]}), Expr::product({t.b(i), e[i + 2 - p]})});
    return e[0];
}

// Mirror accumulation from the source: B_p = 1, B_{p+1} = a_p,
// B_j = B_{j-1} a_{j-1} + B_{j-2} b_{j-2}.
Expr dfs_opposite_interval(int p, int q, const TermPool& t) {
    if (q == p) return Expr::one();
    if (q == p + 1) return t.a(p);
    std::vector<Expr> b(q - p + 1);
    b[0] = Expr::one();
    b[1] = t.a(p);
    for (int j = p + 2; j <= q; ++j)
        b[j - p] = Expr::sum({Expr::product({b[j - 1 - p], t.a(j - 1)}), Expr::product({b[j - 2 - p], t.b(j - 2)})});
    return b[q - p];
}

// E_i = (a_i a_{i+1} + b_i) E_{i+2} + a_i b_{i+1} E_{i+3}, closing two-edge
// segments; bases 1, a_{q-1}, a_{q-2}a_{q-1}+b_{q-2}.
Expr dls_direct_interval(int p, int q, const TermPool& t) {
    if (q == p) return Expr::one();
    if (q == p + 1) return t.a(p);
    std::vector<Expr> e(q - p + 1);
    e[q - p] = Expr::one();
    e[q - 1 - p] = t.a(q - 1);
    e[q - 2 - p] = Expr::sum({Expr::product({t.a(q - 2), t.a(q - 1)}), t.b(q - 2)});
    for (int i = q - 3; i >= p; --i) {
        Expr closed = Expr::sum({Expr::product({t.a(i), t.a(i + 1)}), t.b(i)});
        e[i - p] = Expr::sum({Expr::product({closed, e[i + 2 - p]}),
                              Expr::product({t.a(i), t.b(i + 1), e[i + 3 - p]})});
    }
    return e[0];
}

// Mirror: C_j = C_{j-2} (a_{j-2}a_{j-1} + b_{j-2}) + C_{j-3} b_{j-3} a_{j-1}.
Expr dls_opposite_interval(int p, int q, const TermPool& t) {
    if (q == p) return Expr::one();
    if (q == p + 1) return t.a(p);
    std::vector<Expr> c(q - p + 1);
    c[0] = Expr::one();
    c[1] = t.a(p);
    c[2] = Expr::sum({Expr::product({t.a(p), t.a(p + 1)}), t.b(p)});
    for (int j = p + 3; j <= q; ++j) {
        Expr closed = Expr::sum({Expr::product({t.a(j - 2), t.a(j - 1)}), t.b(j - 2)});
        c[j - p] = Expr::sum({Expr::product({c[j - 2 - p], closed}),
                              Expr::product({c[j - 3 - p], t.b(j - 3), t.a(j - 1)})});
    }
    return c[q - p];
}

}  // namespace

Expr gen_sequential(int n, const GenOptions& opts) {
    require_min_size(n, "gen_sequential");
    guard_size(n, opts, "gen_sequential");
    TermPool terms(n);
    std::vector<Expr> monomials;
    std::vector<Expr> walk;
    // a-edge branch first, then the b-edge branch, at every vertex
    auto go = [&](auto&& self, int v) -> void {
        if (v == n) {
            monomials.push_back(Expr::product(walk));
            return;
        }
        walk.push_back(terms.a(v));
        self(self, v + 1);
        walk.pop_back();
        if (v + 2 <= n) {
            walk.push_back(terms.b(v));
            self(self, v + 2);
            walk.pop_back();
        }
    };
    go(go, 1);
    return Expr::sum(std::move(monomials));
}

Expr gen_dfs(int n, Direction dir, const GenOptions& opts) {
    require_min_size(n, "gen_dfs");
    guard_size(n, opts, "gen_dfs");
    TermPool terms(n);
    return dir == Direction::direct ? dfs_direct_interval(1, n, terms) : dfs_opposite_interval(1, n, terms);
}

Expr gen_dls(int n, Direction dir, const GenOptions& opts) {
    require_min_size(n, "gen_dls");
    guard_size(n, opts, "gen_dls");
    TermPool terms(n);
    return dir == Direction::direct ? dls_direct_interval(1, n, terms) : dls_opposite_interval(1, n, terms);
}

Expr gen_reduction_optimal(int n, Heavier heavier, const GenOptions& opts) {
    require_min_size(n, "gen_reduction_optimal");
    guard_size(n, opts, "gen_reduction_optimal");
    TermPool terms(n);
    if (n == 2) return terms.a(1);
    int c = n % 2 == 1 ? (n + 1) / 2 : (heavier == Heavier::joint ? n / 2 : n / 2 + 1);
    return Expr::sum({
        Expr::product({dfs_opposite_interval(1, c, terms), dfs_direct_interval(c, n, terms)}),
        Expr::product({dfs_opposite_interval(1, c - 1, terms), terms.b(c - 1), dfs_direct_interval(c + 1, n, terms)}),
    });
}

ChoiceFn middle_floor_strategy() {
    return [](int p, int q) { return (p + q) / 2; };
}

ChoiceFn middle_ceil_strategy() {
    return [](int p, int q) { return (p + q + 1) / 2; };
}

ChoiceFn fixed_offset_strategy(int k) {
    return [k](int p, int q) { return std::min(p + k, q - 1); };
}

Expr gen_decomposition(int n, const ChoiceFn& choice, const GenOptions& opts) {
    require_min_size(n, "gen_decomposition");
    guard_size(n, opts, "gen_decomposition");
    TermPool terms(n);

    // worklist evaluation over intervals, memoized so shared subintervals
    // build once and deep strategies cannot overflow the call stack
    std::map<std::pair<int, int>, Expr> memo;
    auto base = [&](int p, int q) -> std::optional<Expr> {
        if (q == p) return Expr::one();
        if (q == p + 1) return terms.a(p);
        return std::nullopt;
    };

    std::map<std::pair<int, int>, int> chosen;
    auto choose = [&](int p, int q) {
        auto it = chosen.find({p, q});
        if (it != chosen.end()) return it->second;
        int i = choice(p, q);
        if (i <= p || i >= q)
            throw InvalidChoiceError("decomposition strategy returned i = " + std::to_string(i) +
                                     " outside the open interval (" + std::to_string(p) + ", " + std::to_string(q) + ")");
        chosen.emplace(std::pair{p, q}, i);
        return i;
    };

    std::vector<std::pair<int, int>> stack{{1, n}};
    while (!stack.empty()) {
        auto [p, q] = stack.back();
        if (memo.contains({p, q})) {
            stack.pop_back();
            continue;
        }
        if (auto b = base(p, q)) {
            memo.emplace(std::pair{p, q}, *b);
            stack.pop_back();
            continue;
        }
        int i = choose(p, q);
        std::pair<int, int> deps[4] = {{p, i}, {i, q}, {p, i - 1}, {i + 1, q}};
        bool ready = true;
        for (auto d : deps) {
            if (!memo.contains(d)) {
                stack.push_back(d);
                ready = false;
            }
        }
        if (!ready) continue;
        Expr through = Expr::product({memo.at({p, i}), memo.at({i, q})});
        Expr around = Expr::product({memo.at({p, i - 1}), terms.b(i - 1), memo.at({i + 1, q})});
        memo.emplace(std::pair{p, q}, Expr::sum({through, around}));
        stack.pop_back();
    }
    return memo.at({1, n});
}

Expr gen_gd(int n, GdConfig config, const GenOptions& opts) {
    require_min_size(n, "gen_gd");
    if (config.m < 2 || config.m > n - 1)
        throw InvalidPartCountError("gen_gd: part count m = " + std::to_string(config.m) +
                                    " outside [2, " + std::to_string(n - 1) + "]");
    guard_size(n, opts, "gen_gd");
    TermPool terms(n);
    const int m = config.m;

    // uniform split vertices: i_k = p + round(k (q-p) / m), clamped inside
    // (p, q), duplicates dropped
    auto splits = [m](int p, int q) {
        std::vector<int> vs;
        for (int k = 1; k < m; ++k) {
            long long r = (2LL * k * (q - p) + m) / (2LL * m);  // round half up
            int i = p + static_cast<int>(r);
            i = std::clamp(i, p + 1, q - 1);
            if (vs.empty() || i > vs.back()) vs.push_back(i);
        }
        return vs;
    };

    std::map<std::pair<int, int>, Expr> memo;
    std::vector<std::pair<int, int>> stack{{1, n}};
    while (!stack.empty()) {
        auto [p, q] = stack.back();
        if (memo.contains({p, q})) {
            stack.pop_back();
            continue;
        }
        if (q == p) {
            memo.emplace(std::pair{p, q}, Expr::one());
            stack.pop_back();
            continue;
        }
        if (q == p + 1) {
            memo.emplace(std::pair{p, q}, terms.a(p));
            stack.pop_back();
            continue;
        }

        std::vector<int> vs = splits(p, q);
        const int k = static_cast<int>(vs.size());
        std::vector<int> bounds{p};
        bounds.insert(bounds.end(), vs.begin(), vs.end());
        bounds.push_back(q);

        // one summand per bypass pattern; bit s-1 set = vertex i_s bypassed
        bool ready = true;
        std::vector<Expr> patterns;
        for (unsigned bits = 0; bits < (1u << k); ++bits) {
            std::vector<Expr> factors;
            bool dead = false;
            for (int s = 0; s <= k && !dead; ++s) {
                int lo = bounds[s], hi = bounds[s + 1];
                if (s >= 1 && (bits >> (s - 1)) & 1u) lo = bounds[s] + 1;
                bool bypass_right = s < k && (bits >> s) & 1u;
                if (bypass_right) hi = bounds[s + 1] - 1;
                if (hi < lo) {  // inverted segment annihilates the pattern
                    dead = true;
                    break;
                }
                auto it = memo.find({lo, hi});
                if (it == memo.end()) {
                    stack.emplace_back(lo, hi);
                    ready = false;
                } else if (ready) {
                    factors.push_back(it->second);
                }
                if (bypass_right && ready && !dead) factors.push_back(terms.b(bounds[s + 1] - 1));
            }
            if (dead || !ready) continue;
            patterns.push_back(Expr::product(std::move(factors)));
        }
        if (!ready) continue;
        memo.emplace(std::pair{p, q}, Expr::sum(std::move(patterns)));
        stack.pop_back();
    }
    return memo.at({1, n});
}

}  // namespace fgx
