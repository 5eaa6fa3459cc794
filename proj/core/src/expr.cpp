#include "fgx/expr.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <utility>
#include <variant>

namespace fgx {

// ---------------------------------------------------------------------------
// terms and path sets

std::string to_string(const Term& t) {
    return (t.kind == TermKind::a ? "a" : "b") + std::to_string(t.index);
}

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << to_string(t); }

PathSet PathSet::from_monomials(std::vector<Monomial> monomials) {
    std::sort(monomials.begin(), monomials.end());
    auto dup = std::adjacent_find(monomials.begin(), monomials.end());
    if (dup != monomials.end()) {
        std::ostringstream msg;
        msg << "duplicate monomial in expansion:";
        for (const Term& t : *dup) msg << ' ' << t;
        throw InvalidExpressionError(msg.str());
    }
    PathSet ps;
    ps.monomials_ = std::move(monomials);
    return ps;
}

bool PathSet::contains(const Monomial& m) const {
    return std::binary_search(monomials_.begin(), monomials_.end(), m);
}

// ---------------------------------------------------------------------------
// nodes and normalizing constructors

struct Expr::Node {
    Kind kind;
    Term term{};              // kind == term only
    std::vector<Expr> ops;    // kind == sum/product only
};

Expr Expr::one() {
    static const std::shared_ptr<const Node> unit = std::make_shared<Node>(Node{Kind::one, {}, {}});
    return Expr(unit);
}

Expr Expr::term(Term t) {
    if (t.index < 1) throw InvalidExpressionError("term index must be >= 1, got " + std::to_string(t.index));
    return Expr(std::make_shared<Node>(Node{Kind::term, t, {}}));
}

Expr Expr::sum(std::vector<Expr> operands) {
    if (operands.empty()) throw InvalidExpressionError("sum needs at least one operand");
    std::vector<Expr> flat;
    flat.reserve(operands.size());
    for (Expr& op : operands) {
        if (op.is_sum()) {
            auto inner = op.operands();
            flat.insert(flat.end(), inner.begin(), inner.end());
        } else {
            flat.push_back(std::move(op));
        }
    }
    if (flat.size() == 1) return flat.front();
    return Expr(std::make_shared<Node>(Node{Kind::sum, {}, std::move(flat)}));
}

Expr Expr::product(std::vector<Expr> operands) {
    std::vector<Expr> flat;
    flat.reserve(operands.size());
    for (Expr& op : operands) {
        if (op.is_one()) continue;  // absorbed: 1*x = x
        if (op.is_product()) {
            auto inner = op.operands();
            flat.insert(flat.end(), inner.begin(), inner.end());
        } else {
            flat.push_back(std::move(op));
        }
    }
    if (flat.empty()) return one();
    if (flat.size() == 1) return flat.front();
    return Expr(std::make_shared<Node>(Node{Kind::product, {}, std::move(flat)}));
}

Expr::Kind Expr::kind() const { return node_->kind; }

const Term& Expr::term_value() const {
    assert(is_term());
    return node_->term;
}

std::span<const Expr> Expr::operands() const {
    assert(is_sum() || is_product());
    return node_->ops;
}

bool operator==(const Expr& a, const Expr& b) {
    using Node = Expr::Node;
    std::vector<std::pair<const Node*, const Node*>> stack{{a.raw(), b.raw()}};
    while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        if (x == y) continue;  // shared subtree
        if (x->kind != y->kind) return false;
        switch (x->kind) {
            case Expr::Kind::one: break;
            case Expr::Kind::term:
                if (x->term != y->term) return false;
                break;
            default:
                if (x->ops.size() != y->ops.size()) return false;
                for (std::size_t i = 0; i < x->ops.size(); ++i)
                    stack.emplace_back(x->ops[i].raw(), y->ops[i].raw());
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// shared traversal: unique nodes in children-before-parents order

namespace {

using Node = Expr::Node;

std::vector<const Node*> postorder_unique(const Node* root) {
    std::vector<const Node*> order;
    std::unordered_map<const Node*, bool> state;  // false = discovered, true = emitted
    std::vector<const Node*> stack{root};
    while (!stack.empty()) {
        const Node* n = stack.back();
        auto [it, fresh] = state.try_emplace(n, false);
        if (fresh) {
            for (const Expr& child : n->ops) {
                if (!state.contains(child.raw())) stack.push_back(child.raw());
            }
            continue;
        }
        stack.pop_back();
        if (!it->second) {
            it->second = true;
            order.push_back(n);
        }
    }
    return order;
}

}  // namespace

// ---------------------------------------------------------------------------
// complexity

ComplexityReport complexity(const Expr& e) {
    std::unordered_map<const Node*, std::pair<Count, Count>> memo;
    for (const Node* n : postorder_unique(e.raw())) {
        Count terms{0}, plus{0};
        switch (n->kind) {
            case Expr::Kind::one: break;
            case Expr::Kind::term: terms = Count{1}; break;
            case Expr::Kind::sum:
                plus += Count{n->ops.size() - 1};
                [[fallthrough]];
            case Expr::Kind::product:
                for (const Expr& op : n->ops) {
                    const auto& [t, p] = memo.at(op.raw());
                    terms += t;
                    plus += p;
                }
        }
        memo[n] = {terms, plus};
    }
    const auto& [t, p] = memo.at(e.raw());
    return ComplexityReport{t, p, std::nullopt};
}

Count product_count(const Expr& e) {
    std::unordered_map<const Node*, Count> memo;
    for (const Node* n : postorder_unique(e.raw())) {
        Count c{1};
        if (n->kind == Expr::Kind::sum) {
            c = Count{0};
            for (const Expr& op : n->ops) c += memo.at(op.raw());
        } else if (n->kind == Expr::Kind::product) {
            for (const Expr& op : n->ops) c *= memo.at(op.raw());
        }
        memo[n] = c;
    }
    return memo.at(e.raw());
}

// ---------------------------------------------------------------------------
// render

std::string render(const Expr& e) {
    std::string out;
    // work items: a node to emit, or a literal character
    using Item = std::variant<const Node*, char>;
    std::vector<Item> stack{e.raw()};
    while (!stack.empty()) {
        Item item = stack.back();
        stack.pop_back();
        if (std::holds_alternative<char>(item)) {
            out.push_back(std::get<char>(item));
            continue;
        }
        const Node* n = std::get<const Node*>(item);
        switch (n->kind) {
            case Expr::Kind::one:
                out.push_back('1');
                break;
            case Expr::Kind::term:
                out += to_string(n->term);
                break;
            case Expr::Kind::sum:
                for (std::size_t i = n->ops.size(); i-- > 0;) {
                    stack.push_back(n->ops[i].raw());
                    if (i > 0) stack.push_back('+');
                }
                break;
            case Expr::Kind::product:
                for (std::size_t i = n->ops.size(); i-- > 0;) {
                    const Node* op = n->ops[i].raw();
                    if (op->kind == Expr::Kind::sum) {  // parenthesize sums inside products
                        stack.push_back(')');
                        stack.push_back(op);
                        stack.push_back('(');
                    } else {
                        stack.push_back(op);
                    }
                }
                break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// parse

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr run() {
        Expr e = parse_sum();
        if (pos_ != text_.size()) fail("unexpected character");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    bool starts_atom() const { return !at_end() && (peek() == 'a' || peek() == 'b' || peek() == '('); }

    Expr parse_sum() {
        std::vector<Expr> parts{parse_product()};
        while (!at_end() && peek() == '+') {
            ++pos_;
            parts.push_back(parse_product());
        }
        return Expr::sum(std::move(parts));
    }

    Expr parse_product() {
        if (!starts_atom()) fail("expected term or '('");
        std::vector<Expr> factors;
        do {
            factors.push_back(parse_atom());
        } while (starts_atom());
        return Expr::product(std::move(factors));
    }

    Expr parse_atom() {
        if (peek() == '(') {
            ++pos_;
            Expr inner = parse_sum();
            if (at_end() || peek() != ')') fail("expected ')'");
            ++pos_;
            return inner;
        }
        TermKind kind = peek() == 'a' ? TermKind::a : TermKind::b;
        ++pos_;
        if (at_end() || peek() < '0' || peek() > '9') fail("expected decimal index");
        if (peek() == '0') fail("index must be >= 1");
        long long index = 0;
        while (!at_end() && peek() >= '0' && peek() <= '9') {
            index = index * 10 + (peek() - '0');
            if (index > std::numeric_limits<int>::max()) fail("index out of range");
            ++pos_;
        }
        return Expr::term(kind, static_cast<int>(index));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

// ---------------------------------------------------------------------------
// evaluation

Count eval(const Expr& e, const TermMap<Count>& assignment) {
    std::unordered_map<const Node*, Count> memo;
    for (const Node* n : postorder_unique(e.raw())) {
        Count v{1};
        switch (n->kind) {
            case Expr::Kind::one: break;
            case Expr::Kind::term: {
                auto it = assignment.find(n->term);
                if (it == assignment.end()) throw UnboundTermError("no value bound for term " + to_string(n->term));
                v = it->second;
                break;
            }
            case Expr::Kind::sum:
                v = Count{0};
                for (const Expr& op : n->ops) v += memo.at(op.raw());
                break;
            case Expr::Kind::product:
                for (const Expr& op : n->ops) v *= memo.at(op.raw());
                break;
        }
        memo[n] = v;
    }
    return memo.at(e.raw());
}

std::uint64_t eval_mod(const Expr& e, const TermMap<std::uint64_t>& assignment, std::uint64_t prime) {
    auto mul = [prime](std::uint64_t x, std::uint64_t y) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % prime);
    };
    std::unordered_map<const Node*, std::uint64_t> memo;
    for (const Node* n : postorder_unique(e.raw())) {
        std::uint64_t v = 1 % prime;
        switch (n->kind) {
            case Expr::Kind::one: break;
            case Expr::Kind::term: {
                auto it = assignment.find(n->term);
                if (it == assignment.end()) throw UnboundTermError("no value bound for term " + to_string(n->term));
                v = it->second % prime;
                break;
            }
            case Expr::Kind::sum:
                v = 0;
                for (const Expr& op : n->ops) v = (v + memo.at(op.raw())) % prime;
                break;
            case Expr::Kind::product:
                for (const Expr& op : n->ops) v = mul(v, memo.at(op.raw()));
                break;
        }
        memo[n] = v;
    }
    return memo.at(e.raw());
}

// ---------------------------------------------------------------------------
// expansion

PathSet expand(const Expr& e) {
    std::unordered_map<const Node*, std::vector<Monomial>> memo;
    for (const Node* n : postorder_unique(e.raw())) {
        std::vector<Monomial> out;
        switch (n->kind) {
            case Expr::Kind::one:
                out.push_back({});
                break;
            case Expr::Kind::term:
                out.push_back({n->term});
                break;
            case Expr::Kind::sum:
                for (const Expr& op : n->ops) {
                    const auto& part = memo.at(op.raw());
                    out.insert(out.end(), part.begin(), part.end());
                }
                break;
            case Expr::Kind::product: {
                out.push_back({});
                for (const Expr& op : n->ops) {
                    const auto& part = memo.at(op.raw());
                    std::vector<Monomial> next;
                    next.reserve(out.size() * part.size());
                    for (const Monomial& left : out) {
                        for (const Monomial& right : part) {
                            Monomial m = left;
                            m.insert(m.end(), right.begin(), right.end());
                            next.push_back(std::move(m));
                        }
                    }
                    out = std::move(next);
                }
                break;
            }
        }
        memo[n] = std::move(out);
    }
    return PathSet::from_monomials(std::move(memo.at(e.raw())));
}

}  // namespace fgx
