#include "fgx/analytics.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "fgx/error.hpp"

namespace fgx {

std::string_view method_name(MethodId m) {
    switch (m) {
        case MethodId::sequential: return "seq";
        case MethodId::dfs: return "dfs";
        case MethodId::dls: return "dls";
        case MethodId::reduction_optimal: return "redopt";
        case MethodId::decomposition_optimal: return "deco";
    }
    return "?";
}

Count fib_count(int n) {
    if (n < 1) throw InvalidSizeError("fib_count: n must be >= 1, got " + std::to_string(n));
    Count a{1}, b{1};
    try {
        for (int k = 3; k <= n; ++k) {
            Count next = a + b;
            a = b;
            b = next;
        }
    } catch (const RangeError&) {
        throw RangeError("fib_count: F_n exceeds 128 bits before n = " + std::to_string(n));
    }
    return b;
}

namespace {

// Unrolls a (T, P) pair recurrence with per-step increments, converting an
// overflow into a RangeError that names the first failing size.
template <typename StepFn>
std::pair<Count, Count> unroll(MethodId m, int n, std::vector<std::pair<Count, Count>> init, StepFn step) {
    if (n <= static_cast<int>(init.size())) return init[n - 1];
    auto& v = init;
    for (int k = static_cast<int>(v.size()) + 1; k <= n; ++k) {
        try {
            v.push_back(step(v, k));
        } catch (const RangeError&) {
            throw RangeError("predicted_counts(" + std::string(method_name(m)) + "): counts exceed 128 bits at n = " +
                             std::to_string(k));
        }
    }
    return v.back();
}

std::pair<Count, Count> decomposition_counts(int n) {
    // T(n) = T(ceil n/2) + T(floor n/2 + 1) + T(ceil n/2 - 1) + T(floor n/2) + 1
    static_assert(sizeof(std::uint64_t) == 8);
    std::map<int, std::pair<Count, Count>> memo{{1, {Count{0}, Count{0}}}, {2, {Count{1}, Count{0}}}};
    auto go = [&](auto&& self, int k) -> std::pair<Count, Count> {
        auto it = memo.find(k);
        if (it != memo.end()) return it->second;
        int hi = (k + 1) / 2, lo = k / 2;
        auto [t1, p1] = self(self, hi);
        auto [t2, p2] = self(self, lo + 1);
        auto [t3, p3] = self(self, hi - 1);
        auto [t4, p4] = self(self, lo);
        std::pair<Count, Count> r{t1 + t2 + t3 + t4 + Count{1}, p1 + p2 + p3 + p4 + Count{1}};
        memo.emplace(k, r);
        return r;
    };
    return go(go, n);
}

}  // namespace

std::pair<Count, Count> predicted_counts(MethodId m, int n) {
    if (n < 1) throw InvalidSizeError("predicted_counts: n must be >= 1, got " + std::to_string(n));
    using CP = std::pair<Count, Count>;
    switch (m) {
        case MethodId::sequential:
            return unroll(m, n, {CP{0, 0}, CP{1, 0}}, [](const auto& v, int k) {
                return CP{v[k - 2].first + v[k - 3].first + fib_count(k), v[k - 2].second + v[k - 3].second + Count{1}};
            });
        case MethodId::dfs:
            return unroll(m, n, {CP{0, 0}, CP{1, 0}}, [](const auto& v, int k) {
                return CP{v[k - 2].first + v[k - 3].first + Count{2}, v[k - 2].second + v[k - 3].second + Count{1}};
            });
        case MethodId::dls:
            return unroll(m, n, {CP{0, 0}, CP{1, 0}, CP{3, 1}}, [](const auto& v, int k) {
                return CP{v[k - 3].first + v[k - 4].first + Count{5}, v[k - 3].second + v[k - 4].second + Count{2}};
            });
        case MethodId::reduction_optimal:
            return unroll(m, n, {CP{0, 0}, CP{1, 0}, CP{3, 1}, CP{6, 2}, CP{9, 3}}, [](const auto& v, int k) {
                return CP{v[k - 3].first + v[k - 5].first + Count{7}, v[k - 3].second + v[k - 5].second + Count{3}};
            });
        case MethodId::decomposition_optimal:
            return decomposition_counts(n);
    }
    throw std::invalid_argument("predicted_counts: unknown method");
}

std::pair<double, double> closed_form_counts(MethodId m, int n) {
    if (n < 1) throw InvalidSizeError("closed_form_counts: n must be >= 1, got " + std::to_string(n));
    const double s5 = std::sqrt(5.0);
    const double phi = (1.0 + s5) / 2.0;
    const double psi = (1.0 - s5) / 2.0;
    const double plus_binet = (std::pow(phi, n) - std::pow(psi, n)) / s5 - 1.0;
    switch (m) {
        case MethodId::sequential: {
            double t = ((phi * n - 3.0 / s5) * std::pow(phi, n) + (psi * n + 3.0 / s5) * std::pow(psi, n)) / 5.0;
            return {t, plus_binet};
        }
        case MethodId::dfs: {
            double t = ((5.0 + 3.0 * s5) * std::pow(phi, n) + (5.0 - 3.0 * s5) * std::pow(psi, n)) / 10.0 - 2.0;
            return {t, plus_binet};
        }
        case MethodId::dls: {
            // published coefficients are printed to ~5 digits
            double osc = std::pow(-1.0, n + 1) * std::pow(0.86884, n);
            double c = std::cos(0.70386 * n), s = std::sin(0.70386 * n);
            double t = 3.4912 * std::pow(1.3247, n) + osc * (0.49109 * c + 0.088942 * s) - 5.0;
            double p = 1.2672 * std::pow(1.3247, n) + osc * (0.26724 * c + 0.25655 * s) - 2.0;
            return {t, p};
        }
        case MethodId::reduction_optimal: {
            if (n == 1) return {0.0, 0.0};  // listed separately alongside the formula
            double g1 = std::pow(std::sqrt((s5 + 1.0) / 2.0), n);
            double g2 = std::pow(std::sqrt((s5 - 1.0) / 2.0), n);
            double sgn = std::pow(-1.0, n);
            double c = std::cos(n * M_PI / 2.0), s = std::sin(n * M_PI / 2.0);
            double t = (4.8896 + sgn * 0.070089) * g1 + (0.040325 * c - 0.16599 * s) * g2 - 7.0;
            double p = (1.8677 + sgn * 0.026772) * g1 + (0.10557 * c - 0.43457 * s) * g2 - 3.0;
            return {t, p};
        }
        case MethodId::decomposition_optimal:
            throw std::invalid_argument("closed_form_counts: no explicit closed form was published for the optimal "
                                        "decomposition method (only the Theta(n^2) bound)");
    }
    throw std::invalid_argument("closed_form_counts: unknown method");
}

// ---------------------------------------------------------------------------
// interval DP

namespace {

int length_of(int n, int p, int q) {
    if (p < 1 || q < p) throw InvalidSizeError("DpTable: bad interval");
    int len = q - p + 1;
    if (len > n) throw InvalidSizeError("DpTable: interval longer than the table size");
    return len;
}

}  // namespace

std::uint64_t DpTable::tmin(int p, int q) const { return tmin_[length_of(n_, p, q)]; }
std::uint64_t DpTable::pmin(int p, int q) const { return pmin_[length_of(n_, p, q)]; }

std::vector<int> DpTable::argmin(Objective o, int p, int q) const {
    int len = length_of(n_, p, q);
    const auto& offs = (o == Objective::terms ? targ_offsets_ : parg_offsets_)[len];
    std::vector<int> vertices;
    vertices.reserve(offs.size());
    for (int j : offs) vertices.push_back(p + j);
    return vertices;
}

DpTable min_counts_dp(int n, Objective objective) {
    if (n < 2 || n > 1000) throw InvalidSizeError("min_counts_dp: n must be in [2, 1000], got " + std::to_string(n));
    DpTable t;
    t.n_ = n;
    t.objective_ = objective;
    t.tmin_.assign(n + 1, 0);
    t.pmin_.assign(n + 1, 0);
    t.targ_offsets_.assign(n + 1, {});
    t.parg_offsets_.assign(n + 1, {});
    t.tmin_[1] = 0;
    t.pmin_[1] = 0;
    if (n >= 2) {
        t.tmin_[2] = 1;
        t.pmin_[2] = 0;
    }
    for (int len = 3; len <= n; ++len) {
        auto fill = [len](const std::vector<std::uint64_t>& f, std::uint64_t& out, std::vector<int>& arg) {
            std::uint64_t best = ~std::uint64_t{0};
            // split offset j = i - p; segments of j+1, len-j, j, len-j-1 vertices
            for (int j = 1; j <= len - 2; ++j) {
                std::uint64_t v = f[j + 1] + f[len - j] + f[j] + f[len - j - 1] + 1;
                if (v < best) {
                    best = v;
                    arg.clear();
                }
                if (v == best) arg.push_back(j);
            }
            out = best;
        };
        fill(t.tmin_, t.tmin_[len], t.targ_offsets_[len]);
        fill(t.pmin_, t.pmin_[len], t.parg_offsets_[len]);
    }
    return t;
}

std::vector<int> middle_vertices(int p, int q) {
    if ((q - p) % 2 == 0) return {(p + q) / 2};
    return {(p + q - 1) / 2, (p + q + 1) / 2};
}

std::vector<std::pair<std::int64_t, std::int64_t>> special_groups(int max_group) {
    if (max_group < 1) throw InvalidSizeError("special_groups: need at least one group");
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    std::int64_t first = 7, last = 7;
    for (int v = 1; v <= max_group; ++v) {
        out.emplace_back(first, last);
        first = 2 * first - 1;
        last = 2 * last + 1;
    }
    return out;
}

double gd_growth_exponent(int m) {
    if (m < 2) throw InvalidSizeError("gd_growth_exponent: m must be >= 2, got " + std::to_string(m));
    return 1.0 + (m - 1) * std::log(2.0) / std::log(static_cast<double>(m));
}

}  // namespace fgx
