#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fgx/count.hpp"
#include "fgx/error.hpp"

namespace fgx {

enum class TermKind : std::uint8_t { a, b };

/// One edge label of a Fibonacci graph: a_i or b_i, i >= 1.
struct Term {
    TermKind kind;
    int index;

    friend bool operator==(const Term&, const Term&) = default;
    friend std::strong_ordering operator<=>(const Term&, const Term&) = default;
};

std::string to_string(const Term&);
std::ostream& operator<<(std::ostream&, const Term&);

/// An ordered product of terms; one source-to-sink path.
using Monomial = std::vector<Term>;

/// Duplicate-free set of monomials; the canonical-expression value of a
/// graph. Stored sorted so set equality is plain vector equality.
class PathSet {
public:
    PathSet() = default;

    /// Sorts and takes ownership; throws InvalidExpressionError on duplicates.
    static PathSet from_monomials(std::vector<Monomial> monomials);

    const std::vector<Monomial>& monomials() const { return monomials_; }
    std::size_t size() const { return monomials_.size(); }
    bool contains(const Monomial&) const;

    friend bool operator==(const PathSet&, const PathSet&) = default;

private:
    std::vector<Monomial> monomials_;
};

/// Immutable expression over terms with n-ary sums and products.
///
/// Normal form, established at construction:
///  - products and sums are flattened (operands never share the parent's
///    kind), matching string semantics where juxtaposition and '+' are
///    associative;
///  - One is absorbed: it never survives as a product operand, and a
///    product/sum left with a single operand collapses to that operand.
///
/// Operand order is significant and preserved verbatim. Values are
/// immutable and cheap to copy; subtrees may be shared.
class Expr {
public:
    enum class Kind : std::uint8_t { one, term, sum, product };

    Expr() : Expr(one()) {}

    static Expr one();
    static Expr term(Term t);
    static Expr term(TermKind kind, int index) { return term(Term{kind, index}); }
    /// Flattening n-ary sum. Requires at least one operand.
    static Expr sum(std::vector<Expr> operands);
    /// Flattening n-ary product; absorbs One operands.
    static Expr product(std::vector<Expr> operands);

    Kind kind() const;
    bool is_one() const { return kind() == Kind::one; }
    bool is_term() const { return kind() == Kind::term; }
    bool is_sum() const { return kind() == Kind::sum; }
    bool is_product() const { return kind() == Kind::product; }

    const Term& term_value() const;           // pre: is_term()
    std::span<const Expr> operands() const;   // pre: is_sum() || is_product()

    /// Structural equality (shared-subtree fast path).
    friend bool operator==(const Expr&, const Expr&);

    struct Node;
    const Node* raw() const { return node_.get(); }

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Measured complexity of an expression: T (total term occurrences) and
/// P (plus-operator count); the expanded monomial count p is filled only
/// on request.
struct ComplexityReport {
    Count terms;
    Count plus_ops;
    std::optional<Count> products;

    friend bool operator==(const ComplexityReport&, const ComplexityReport&) = default;
};

/// T and P. Exact, overflow-checked; shared subtrees are counted once per
/// occurrence, as the flattened text would.
ComplexityReport complexity(const Expr&);

/// Number of monomials in the full expansion, without expanding.
Count product_count(const Expr&);

/// Render to the expression grammar: juxtaposition for products, '+' for
/// sums, parentheses exactly around sums that are product operands.
std::string render(const Expr&);

/// Inverse of render. Grammar:
///   expr := sum ; sum := product ('+' product)* ; product := atom atom* ;
///   atom := term | '(' sum ')' ; term := ('a'|'b') nonzero-decimal-index
/// No whitespace. Throws ParseError with a byte offset.
Expr parse(std::string_view text);

/// Value assignment for evaluation, keyed by term.
template <typename V>
using TermMap = std::map<Term, V>;

/// Evaluate over checked 128-bit integers. Missing terms throw
/// UnboundTermError.
Count eval(const Expr&, const TermMap<Count>& assignment);

/// Evaluate in the prime field Z_p (p must be prime and < 2^62).
std::uint64_t eval_mod(const Expr&, const TermMap<std::uint64_t>& assignment, std::uint64_t prime);

/// A convenient large Mersenne prime for equivalence checks.
inline constexpr std::uint64_t kDefaultPrime = (std::uint64_t{1} << 61) - 1;

/// Distribute products over sums; the set of resulting monomials, factor
/// order preserved left-to-right. A duplicate monomial (impossible for a
/// correct generator) throws InvalidExpressionError.
PathSet expand(const Expr&);

}  // namespace fgx
