#pragma once
#include "cct/decompose.hpp"
#include "cct/hall.hpp"

namespace cct {

// Element of the free nilpotent Lie algebra (equivalently of the free Carnot
// group, exp being the identity map): rational coefficients over a Hall basis.
struct FreeLieElement {
    std::shared_ptr<const HallBasis> basis;
    RatVec coef;

    static FreeLieElement zero(std::shared_ptr<const HallBasis> b);
    static FreeLieElement generator(std::shared_ptr<const HallBasis> b, int i);  // 0-based

    bool is_zero() const;
    FreeLieElement operator+(const FreeLieElement& o) const;
    FreeLieElement operator-() const;
    FreeLieElement scaled(const Rat& c) const;
    bool operator==(const FreeLieElement& o) const;
};

FreeLieElement free_bracket(const FreeLieElement& a, const FreeLieElement& b);

// Truncated Baker-Campbell-Hausdorff product P(A,B): direct enumeration of
// the index tuples (k_1,l_1,...,k_p,l_p), k_i+l_i >= 1, total degree <= step,
// each tuple contributing
//   (-1)^{p+1}/p * [A^{k_1},B^{l_1},...,A^{k_p},B^{l_p}]
//                / (k_1!...k_p! l_1!...l_p! * sum_i (k_i+l_i))
// with right-nested brackets.
FreeLieElement bch(const FreeLieElement& a, const FreeLieElement& b);

// Group dilation: scales layer-k coefficients by lambda^k (lambda > 0).
FreeLieElement group_dilate(const FreeLieElement& f, const Rat& lambda);

// Free Carnot lifting of a nilpotent approximation: psi is the unique Lie
// algebra homomorphism with psi(W_i) = Y_i^inf, verified on the structure
// constants at construction. Carries the left-invariant generator fields of F
// in exponential coordinates and the polynomial projection pi_inf(f) = 0 . f.
struct LiftedStructure {
    std::shared_ptr<const HallBasis> basis;
    NilpotentStructure target;
    std::vector<PolyVectorField> psi_images;  // one per Hall word, fields on M^inf
    std::vector<PolyVectorField> lift_fields; // r generator fields on R^dim(F)
    std::vector<Jet> pi_map;                  // n jets in the dim(F) coefficients
    Weights f_weights;                        // layer of each basis element

    int dim_f() const { return basis->dim(); }
    int pi_rank_at_zero() const;
};

LiftedStructure build_psi(std::shared_ptr<const HallBasis> basis, const NilpotentStructure& target);

// Velocity of t -> A . exp(t W_i) at t = 0, i.e. the value of the i-th
// left-invariant generator field at the group element `at`.
RatVec generator_field(const LiftedStructure& l, int i, const FreeLieElement& at);

// Right action x . exp(A) = time-1 flow of psi(A) from x, exact.
RatVec group_action(const RatVec& x, const FreeLieElement& f, const LiftedStructure& l);

// pi_inf(f) = 0 . f
RatVec project_pi(const FreeLieElement& f, const LiftedStructure& l);

// Constructive witness that F is generated by exp of the first layer: a list
// of (generator index, time) whose ordered product of exponentials equals f.
std::vector<std::pair<int, Rat>> layer_one_factorization(const FreeLieElement& f);

// Ordered product of layer-one exponentials, for checking witnesses.
FreeLieElement product_of_exponentials(std::shared_ptr<const HallBasis> b,
                                       const std::vector<std::pair<int, Rat>>& factors);

}  // namespace cct
