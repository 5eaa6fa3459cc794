#pragma once

#include <functional>

#include "fgx/expr.hpp"
#include "fgx/reduction.hpp"

namespace fgx {

enum class Direction : std::uint8_t { direct, opposite };

/// Which half gets the extra node reductions for even n in the optimal
/// reduction method (odd n has no choice to make).
enum class Heavier : std::uint8_t { fork, joint };

/// Output-size guard for the exponential-output generators. T grows like
/// n*phi^n for them, so anything past the cap is refused unless forced.
struct GenOptions {
    int cap = 28;
    bool force = false;
};

/// Cap for the polynomial-output generators (decomposition, GD).
inline constexpr int kPolyCap = 100000;

/// Flat sum of all path monomials, a-edge branch before b-edge branch at
/// every vertex. n >= 2.
Expr gen_sequential(int n, const GenOptions& = {});

/// Vertex-accumulation method. Direct: E_i = a_i*E_{i+1} + b_i*E_{i+2} with
/// E_n = 1 and E_{n-1} = a_{n-1}; opposite traverses from the source side.
Expr gen_dfs(int n, Direction = Direction::direct, const GenOptions& = {});

/// Closed-segment variant: E_i = (a_i*a_{i+1}+b_i)*E_{i+2} + a_i*b_{i+1}*E_{i+3}.
Expr gen_dls(int n, Direction = Direction::direct, const GenOptions& = {});

/// The balanced reduction result built by composition: opposite-direction
/// accumulations on [1, c] and [1, c-1] times direct ones on [c, n] and
/// [c+1, n], joined by b_{c-1} and one plus, with c the middle split.
Expr gen_reduction_optimal(int n, Heavier = Heavier::joint, const GenOptions& = {});

/// Picks the decomposition vertex for an interval (p, q); must return i
/// with p < i < q.
using ChoiceFn = std::function<int(int p, int q)>;

ChoiceFn middle_floor_strategy();        // i = floor((p+q)/2)
ChoiceFn middle_ceil_strategy();         // i = ceil((p+q)/2)
ChoiceFn fixed_offset_strategy(int k);   // i = min(p+k, q-1)

/// Interval decomposition E(p,q) = E(p,i)E(i,q) + E(p,i-1) b_{i-1} E(i+1,q)
/// with E(p,p) = 1 and E(p,p+1) = a_p. A strategy returning a vertex outside
/// (p, q) throws InvalidChoiceError with the offending interval.
Expr gen_decomposition(int n, const ChoiceFn& choice = middle_floor_strategy(),
                       const GenOptions& = {.cap = kPolyCap});

struct GdConfig {
    int m = 2;  // parts per recursive step, 2 <= m <= n-1
};

/// Generalized decomposition: each interval splits at m-1 uniformly placed
/// vertices; one summand per bypass pattern (2^(m-1) of them), a bypassed
/// vertex i contributing factor b_{i-1} and shrinking its neighbor segments.
/// Patterns with an inverted segment are dropped as empty.
Expr gen_gd(int n, GdConfig, const GenOptions& = {.cap = kPolyCap});

}  // namespace fgx
