#pragma once
#include <map>
#include <vector>

#include "cct/vector_field.hpp"

namespace cct {

// Polynomial in formal coefficients s_1..s_m whose coefficients are jets in
// the underlying x-variables: the shape of (s_1 Y_1 + ... + s_m Y_m)^k psi / k!.
// Each application of the operator multiplies by one formal letter, so terms
// of A_k have s-degree exactly k.
struct OperatorTermPoly {
    Weights s_weights;                       // weight of each formal letter
    std::map<std::vector<int>, Jet> coef;    // s-exponent -> x-jet

    // A_{k+1} = S(A_k) / (k+1); s-exponents above s_cap (weighted) are
    // dropped, and the x-jet of an entry at s-degree sdeg is truncated at
    // (s_cap - sdeg) * rem_num / rem_den: an x-term only reaches the value at
    // 0 if the remaining formal budget can differentiate its degree away, and
    // the caller bounds the removal rate per unit of budget (at most the max
    // weight in general; the fields' valuations usually give a better rate).
    OperatorTermPoly applied(const std::vector<PolyVectorField>& fields, int k_next, long s_cap,
                             long rem_num, long rem_den) const;

    // Evaluates every x-jet at x = 0, yielding an exact polynomial in s.
    // Throws OrderError when a constant term is below some jet's horizon.
    Jet at_x_zero(int order) const;
};

OperatorTermPoly operator_series_seed(const Jet& psi, const Weights& s_weights);

// k-th term of the operator exponential applied to psi and evaluated at 0:
//   sum over length-k words  s_{i_1}...s_{i_k} (Y_{i_1}...Y_{i_k} psi)(0) / k!
// returned as an exact polynomial (a jet in the formal variables, truncated
// only at the maximal possible degree k * max(s_weights)).
Jet apply_operator_power(const std::vector<PolyVectorField>& fields, const Weights& s_weights,
                         const Jet& psi, int k);

}  // namespace cct
