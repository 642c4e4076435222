#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "corolla/polynomial.hpp"

namespace corolla {

struct MalformedExpression : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IncompleteRouting : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedExpansion : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Lorentz tensor factor.  Scalar products xi_a · xi_b are not atoms; they
/// normalize into dot symbols inside the coefficient polynomials.
struct TensorAtom {
    enum class Kind { metric, mom, structure };
    Kind kind;
    Index a{}, b{};   // metric, with a <= b
    Slot slot{};      // mom
    Symbol token{};   // structure

    static TensorAtom metric(Index i, Index j) {
        if (j < i) std::swap(i, j);
        TensorAtom t;
        t.kind = Kind::metric;
        t.a = i;
        t.b = j;
        return t;
    }
    static TensorAtom mom(Slot s, Index i) {
        TensorAtom t;
        t.kind = Kind::mom;
        t.slot = s;
        t.a = i;
        return t;
    }
    static TensorAtom structure(Symbol tok) {
        TensorAtom t;
        t.kind = Kind::structure;
        t.token = tok;
        return t;
    }

    friend bool operator==(const TensorAtom& x, const TensorAtom& y) {
        return x.kind == y.kind && x.a == y.a && x.b == y.b && x.slot == y.slot &&
               x.token == y.token;
    }
    friend bool operator<(const TensorAtom& x, const TensorAtom& y) {
        auto key = [](const TensorAtom& t) {
            return std::tuple(static_cast<int>(t.kind), t.a.id, t.b.id, t.slot.id, t.token.id);
        };
        return key(x) < key(y);
    }
};

/// Exponent of the parametric representation: exp(-num/den - affine).
/// den is kept as a plain polynomial (psi-shaped) and normalized monic.
struct QuadricArg {
    Poly num;     // zero means no ratio part
    Poly den{1};  // monic after normalize()
    Poly affine;

    void normalize();
    bool is_trivial() const { return num.is_zero() && affine.is_zero(); }
    /// exp(a)·exp(b) composition of arguments.
    QuadricArg plus(const QuadricArg& o) const;

    friend bool operator==(const QuadricArg& x, const QuadricArg& y) {
        return x.num == y.num && x.den == y.den && x.affine == y.affine;
    }
    friend bool operator<(const QuadricArg& x, const QuadricArg& y) {
        if (x.num != y.num) return x.num < y.num;
        if (x.den != y.den) return x.den < y.den;
        return x.affine < y.affine;
    }
};

/// Rational coefficient num / prod(base^exp) with the denominator kept in
/// factored form so Schwinger-parameter pole orders stay syntactically
/// visible for the Laurent machinery.
struct Coefficient {
    Poly num;
    std::vector<std::pair<Poly, unsigned>> den;  // bases monic, sorted, non-constant

    Coefficient() : num(0) {}
    Coefficient(Poly n) : num(std::move(n)) {}
    Coefficient(long n) : num(n) {}
    Coefficient(const GaussRat& c) : num(c) {}

    static Coefficient over(Poly n, std::vector<std::pair<Poly, unsigned>> d);

    bool is_zero() const { return num.is_zero(); }
    bool is_one() const { return den.empty() && num == Poly(1); }
    void push_den(Poly base, unsigned exp);
    void reduce();

    friend Coefficient operator*(const Coefficient& a, const Coefficient& b);
    friend Coefficient operator+(const Coefficient& a, const Coefficient& b);
    Coefficient operator-() const;
    Coefficient scaled(const GaussRat& c) const;
    /// Divide by a polynomial (becomes a denominator factor).
    Coefficient divided_by(const Poly& p) const;
    std::optional<Coefficient> try_divide_num(const Poly& p) const;

    friend bool operator==(const Coefficient& a, const Coefficient& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Coefficient& a, const Coefficient& b) {
        if (a.num != b.num) return a.num < b.num;
        return a.den < b.den;
    }
};

struct Term {
    Coefficient coeff;
    std::vector<TensorAtom> tensors;        // sorted
    std::optional<QuadricArg> exponential;  // exp(-num/den - affine)
};

/// Linear map slot -> sum of (target slot, rational coefficient).
class Routing {
public:
    void set(Slot s, std::vector<std::pair<Slot, GaussRat>> combo);
    void set_zero(Slot s) { set(s, {}); }
    bool has(Slot s) const { return map_.count(s) != 0; }
    const std::vector<std::pair<Slot, GaussRat>>& at(Slot s) const;
    const std::map<Slot, std::vector<std::pair<Slot, GaussRat>>>& entries() const { return map_; }

private:
    std::map<Slot, std::vector<std::pair<Slot, GaussRat>>> map_;
};

/// Canonical sum of terms.  Immutable value type: every operation returns
/// a new normalized expression, so sharing across threads is safe.
class Expression {
public:
    Expression() = default;
    Expression(long n) { *this = from_coefficient(Coefficient(n)); }
    static Expression from_terms(std::vector<Term> terms);
    static Expression from_coefficient(Coefficient c);
    static Expression from_poly(Poly p) { return from_coefficient(Coefficient(std::move(p))); }
    static Expression zero() { return {}; }
    static Expression one() { return Expression(1); }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    friend Expression operator+(const Expression& a, const Expression& b);
    friend Expression operator-(const Expression& a, const Expression& b);
    friend Expression operator*(const Expression& a, const Expression& b);
    Expression& operator+=(const Expression& b) { return *this = *this + b; }
    Expression& operator-=(const Expression& b) { return *this = *this - b; }
    Expression& operator*=(const Expression& b) { return *this = *this * b; }
    Expression scaled(const GaussRat& c) const;

    friend bool operator==(const Expression& a, const Expression& b);
    friend bool operator!=(const Expression& a, const Expression& b) { return !(a == b); }

    /// Resolve repeated Lorentz indices (extended Einstein convention).
    Expression contract_indices() const;
    /// Exact partial derivative d/d xi_slot^index.
    Expression differentiate(Slot slot, Index index) const;
    /// Replace every momentum slot by its routed combination.
    Expression substitute_momenta(const Routing& routing) const;
    /// Coefficient of x^order in the Laurent expansion around x = 0.
    Expression laurent_coefficient(Symbol x, int order) const;
    /// Iterated residue (order -1) over the given symbols.
    Expression residue(const std::vector<Symbol>& xs) const;
    /// Iterated constant term (order 0) over the given symbols.
    Expression regular_part_at_zero(const std::vector<Symbol>& xs) const;

    /// Exact division by a single-term expression whose coefficient divides
    /// every term; used to split gauge factors off integrands.
    std::optional<Expression> try_divide(const Expression& divisor) const;

    std::set<Slot> slots() const;
    std::set<Index> free_indices() const;

private:
    std::vector<Term> terms_;
};

}  // namespace corolla
