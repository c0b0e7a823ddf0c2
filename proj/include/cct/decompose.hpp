#pragma once
#include "cct/chart.hpp"

namespace cct {

// Certified splitting a_ij = p_ij + r_ij of a structure in exponential
// coordinates: p_ij is the weighted-degree-(w_j - w_i) part of a_ij (zero
// when w_j < w_i), r_ij the remainder. Construction throws a
// DecompositionError naming the failing clause if the input does not satisfy
//   (i)   p_ij delta-homogeneous of degree w_j - w_i        (w_j >= w_i)
//   (ii)  p_ij = delta_ij                                   (w_j <= w_i)
//   (iii) r_ij(0) = 0
//   (iv)  every term of r_ij has weighted degree > w_j - w_i.
struct DecomposedStructure {
    CCStructure base;                    // exponential coordinates, frame set
    std::vector<std::vector<Jet>> p;     // r x n homogeneous parts
    std::vector<std::vector<Jet>> rjet;  // r x n remainders
    Weights weights;

    int n() const { return base.n; }
    int rank() const { return base.r; }
    int step() const { return base.frame->step; }
};

DecomposedStructure decompose_graded(const CCStructure& xexp, const AdaptedFrame& f);

// Nilpotent approximation Y_i^inf(x) = sum_j p_ij(x) d/dx_j together with the
// bracket frame it generates. Constructed with its invariants verified
// exactly: homogeneity of degree one under the dilations, vanishing of every
// bracket word of length step+1, and constant nonzero frame determinant.
struct NilpotentStructure {
    std::vector<PolyVectorField> fields_inf;  // r generators (exact polynomials)
    std::vector<PolyVectorField> frame_inf;   // n bracket-word fields
    std::vector<BracketWord> words;
    Weights weights;
    int step = 1;
    Rat frame_det;  // det(Y_{J_1}^inf, ..., Y_{J_n}^inf), a nonzero constant

    CCStructure as_structure() const;  // re-ingestion (fields_inf as a CC structure)
};

NilpotentStructure nilpotent_approximation(const DecomposedStructure& d);

// Rescaled generators Y_i^lambda: component j is lambda^{w_j-1} a_ij(delta_{1/lambda} x),
// exact for rational lambda. Satisfies Y^lambda = Y^inf + E_lambda with every
// term of E_lambda carrying a strictly negative power of lambda.
std::vector<PolyVectorField> rescale_structure(const DecomposedStructure& d, const Rat& lambda);

// True iff every stored term of component j has weighted degree w_j - degree,
// i.e. (delta_lambda)_* V = lambda^degree V identically in symbolic lambda.
bool is_delta_homogeneous(const PolyVectorField& v, const Weights& w, int degree);

// Exact determinant of the n x n matrix with rows fields[i].comp[j].
Jet field_matrix_det(const std::vector<PolyVectorField>& fields);

}  // namespace cct
