#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "fgx/count.hpp"

namespace fgx {

/// The five methods with exact count recurrences.
enum class MethodId : std::uint8_t {
    sequential,
    dfs,
    dls,
    reduction_optimal,
    decomposition_optimal,
};

std::string_view method_name(MethodId);

/// Exact Fibonacci path count p(n), F_1 = F_2 = 1. Overflow throws RangeError.
Count fib_count(int n);

/// Exact (T, P) from the method's recurrence and initial values. Overflow
/// throws RangeError naming the first n that does not fit.
std::pair<Count, Count> predicted_counts(MethodId, int n);

/// Floating-point evaluation of the published explicit formulas (the real
/// trigonometric variants where both complex and real forms exist). The
/// sequential and DFS forms have exact surd coefficients; the DLS and
/// reduction forms carry coefficients printed to ~5 digits, so expect only
/// ~1e-2 relative agreement from them. No closed form was published for the
/// optimal decomposition method; asking for it throws std::invalid_argument.
std::pair<double, double> closed_form_counts(MethodId, int n);

enum class Objective : std::uint8_t { terms, plus_ops };

/// Interval-DP minima over all decomposition strategies.
///
/// tmin/pmin(p, q) follow
///   min(p,p) = 0, tmin(p,p+1) = 1, pmin(p,p+1) = 0,
///   min(p,q) = min over p<i<q of min(p,i)+min(i,q)+min(p,i-1)+min(i+1,q)+1,
/// the +1 being the bypass term b_{i-1} (for T) or the plus operator (for P).
/// Values and argmin sets depend only on interval length, so the table is
/// stored per length and answers any (p, q) with q - p + 1 <= n.
class DpTable {
public:
    int n() const { return n_; }
    Objective objective() const { return objective_; }

    std::uint64_t tmin(int p, int q) const;
    std::uint64_t pmin(int p, int q) const;
    /// All optimal decomposition vertices for (p, q) under the objective.
    std::vector<int> argmin(Objective, int p, int q) const;

    std::uint64_t top_min(Objective o) const { return o == Objective::terms ? tmin(1, n_) : pmin(1, n_); }
    std::vector<int> top_argmin(Objective o) const { return argmin(o, 1, n_); }

private:
    friend DpTable min_counts_dp(int n, Objective);
    int n_ = 0;
    Objective objective_ = Objective::terms;
    std::vector<std::uint64_t> tmin_;               // by length, [0] unused
    std::vector<std::uint64_t> pmin_;
    std::vector<std::vector<int>> targ_offsets_;    // offsets j = i - p
    std::vector<std::vector<int>> parg_offsets_;
};

/// Fill the DP for sizes up to n (2 <= n <= 1000). Both objectives are
/// computed; the parameter records which one the caller asked about.
DpTable min_counts_dp(int n, Objective = Objective::terms);

/// The middle vertex (odd-length interval) or both middles (even length).
std::vector<int> middle_vertices(int p, int q);

/// Inclusive ranges of the "special" sizes whose top-level plus-minimum is
/// attained beyond the middle choice: [7,7], [13,15], [25,31], ... built by
/// first' = 2*first - 1, last' = 2*last + 1.
std::vector<std::pair<std::int64_t, std::int64_t>> special_groups(int max_group);

/// Growth exponent of the uniform GD method: 1 + log_m 2^(m-1).
double gd_growth_exponent(int m);

}  // namespace fgx
