#pragma once
#include <span>
#include <vector>

#include "cct/jet.hpp"
#include "cct/ratmat.hpp"

namespace cct {

// Polynomial vector field sum_j a_j(x) d/dx_j as an n-tuple of component
// jets sharing one shape.
struct PolyVectorField {
    std::vector<Jet> comp;

    int nvars() const { return static_cast<int>(comp.size()); }
    const Weights& weights() const { return comp.at(0).weights(); }
    int order() const { return comp.at(0).order(); }

    static PolyVectorField zero(int nvars, const Weights& w, int order);
    static PolyVectorField coordinate(int j, int nvars, const Weights& w, int order);  // d/dx_j

    void check_shape() const;
    bool same_shape(const PolyVectorField& o) const;
    bool is_zero() const;

    // largest weighted degree appearing in any component (0 if zero field)
    long content_wdeg() const;

    RatVec eval(const RatVec& x) const;
    void eval(std::span<const double> x, std::span<double> out) const;
    RatVec at_zero() const;

    PolyVectorField operator+(const PolyVectorField& o) const;
    PolyVectorField operator-() const;
    PolyVectorField scaled(const Rat& c) const;
    PolyVectorField truncated(int order) const;
    PolyVectorField declared(int order) const;

    // V(f) = sum_l a_l * df/dx_l with honest order propagation.
    Jet apply(const Jet& f) const;

    bool operator==(const PolyVectorField& o) const;
};

// Commutator [V,W] = V(W) - W(V). Requires the shared truncation order to
// dominate content_wdeg(V) + content_wdeg(W) - 1 so the polynomial result is
// exact (inputs are finite polynomials by contract).
PolyVectorField lie_bracket(const PolyVectorField& v, const PolyVectorField& w);

// Same commutator with the result order propagated honestly (minimum over
// the per-component losses); used where inputs are truncated series and only
// low-order coefficients are consumed.
PolyVectorField lie_bracket_honest(const PolyVectorField& v, const PolyVectorField& w);

// Evaluation matrix at 0: row i = fields[i](0).
RatMat evaluation_matrix(const std::vector<PolyVectorField>& fields);

// Exact flow of a polynomial field by Picard iteration, which stabilizes for
// the weight-triangular fields arising here. Field components are jets in a
// "field space" = n state variables followed by p parameter variables; the
// state and parameter images are jets in an auxiliary space containing the
// time variable `tvar`. Returns the state at time t (still a polynomial in
// the aux variables). Throws StructureError past max_rounds without a fixed
// point.
std::vector<Jet> picard_flow(const std::vector<Jet>& field_comps, const std::vector<Jet>& initial,
                             const std::vector<Jet>& params, int tvar, int max_rounds);

}  // namespace cct
