#pragma once
#include <span>
#include <string>
#include <vector>

#include "cct/errors.hpp"
#include "cct/rational.hpp"

namespace cct {

// Order value used for jets that are known exactly (finite polynomials with
// no truncated tail). Large enough that min/subtraction arithmetic on orders
// never wraps.
constexpr int kOrderInf = 1 << 24;

inline bool order_is_exact(int order) { return order >= kOrderInf / 2; }

// Coordinate weights. The adapted invariant (nondecreasing, w_1 = 1) holds
// for every adapted coordinate system; internal scratch spaces (flow
// variables, free-Lie coefficients) only need positivity.
class Weights {
  public:
    Weights() = default;
    explicit Weights(std::vector<int> w);               // positive entries
    static Weights adapted(std::vector<int> w);         // + nondecreasing, w_1 = 1

    int n() const { return static_cast<int>(w_.size()); }
    int step() const;                                   // max entry
    int operator[](int i) const { return w_[static_cast<size_t>(i)]; }
    const std::vector<int>& vec() const { return w_; }
    long wdeg(std::span<const int> alpha) const;

    bool operator==(const Weights& o) const = default;

  private:
    std::vector<int> w_;
};

struct Term {
    std::vector<int> exp;
    Rat coef;
};

// Multivariate power series with exact rational coefficients, truncated by
// weighted degree: every stored exponent alpha satisfies
// sum_l alpha_l * w_l <= order. Terms are kept in graded-lexicographic order
// (weighted degree, then exponent lex) with no zero coefficients, so equal
// jets have equal term vectors. Values are immutable after construction.
class Jet {
  public:
    Jet() : nvars_(0), order_(0) {}
    Jet(int nvars, Weights weights, int order);  // zero jet

    static Jet constant(int nvars, const Weights& w, int order, const Rat& c);
    static Jet variable(int i, int nvars, const Weights& w, int order);
    // Builds canonical form from arbitrary terms; truncates above `order`.
    static Jet from_terms(int nvars, const Weights& w, int order, std::vector<Term> terms);

    int nvars() const { return nvars_; }
    const Weights& weights() const { return weights_; }
    int order() const { return order_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool same_shape(const Jet& o) const {
        return nvars_ == o.nvars_ && weights_ == o.weights_ && order_ == o.order_;
    }

    Rat at_zero() const;                       // constant coefficient
    Rat coefficient(std::span<const int> alpha) const;
    long top_wdeg() const;                     // 0 for the zero jet
    long min_wdeg() const;                     // kOrderInf for the zero jet

    Jet operator-() const;
    Jet scaled(const Rat& c) const;
    Jet truncated(int new_order) const;        // new_order <= order
    // Declares a different exactness horizon; the caller asserts correctness
    // (used when ingesting finite polynomials known exactly).
    Jet declared(int new_order) const;
    // Same terms under a different weight vector (coordinates reinterpreted);
    // order is re-declared by the caller.
    Jet reweighted(const Weights& w, int order) const;
    Jet derivative(int var) const;             // order drops by w[var]
    Jet antiderivative(int var) const;         // zero constant of integration
    // Substitutes a rational value for one variable (exponent collapses to 0,
    // the variable space is kept).
    Jet partial_eval(int var, const Rat& val) const;

    // Exact evaluation at a rational point.
    Rat eval(const RatVec& x) const;
    double eval(std::span<const double> x) const;

    bool operator==(const Jet& o) const;

    std::string str() const;  // debugging aid, canonical ordering

  private:
    friend class JetBuilder;
    int nvars_;
    Weights weights_;
    int order_;
    std::vector<Term> terms_;
};

// Spec surface: operands must agree in nvars, weights and order.
Jet jet_add(const Jet& a, const Jet& b);
Jet jet_sub(const Jet& a, const Jet& b);
Jet jet_mul(const Jet& a, const Jet& b);

inline Jet operator+(const Jet& a, const Jet& b) { return jet_add(a, b); }
inline Jet operator-(const Jet& a, const Jet& b) { return jet_sub(a, b); }
inline Jet operator*(const Jet& a, const Jet& b) { return jet_mul(a, b); }

// Internal arithmetic with honest order propagation: result order is the
// minimum of the operand orders (shapes must still agree in nvars/weights).
Jet add_mixed(const Jet& a, const Jet& b);
Jet mul_mixed(const Jet& a, const Jet& b);

struct JetMap {
    std::vector<Jet> comps;

    int m() const { return static_cast<int>(comps.size()); }
    static JetMap identity(int nvars, const Weights& w, int order);
    bool is_identity() const;
};

// Truncated substitution f(g(x)). Requires zero constant terms in g and the
// weighted-degree condition min_wdeg(g_j) >= w_j for every variable j of f,
// which makes the truncated result exact to the shared order.
Jet jet_compose(const Jet& f, const JetMap& g);

// Substitution without the degree condition. `f_exact` marks f as a finite
// polynomial with no truncated tail; otherwise the result order accounts for
// the monomials f could be missing above its horizon. Constant terms in g are
// allowed iff `allow_const` (exact polynomial flows need them).
Jet compose_series(const Jet& f, const JetMap& g, bool f_exact, bool allow_const = false);

// Compositional inverse of a square map with identity linear part, solved
// degree by degree; postcondition jet_compose(g, h) = id up to the order.
JetMap jet_invert(const JetMap& g);

}  // namespace cct
