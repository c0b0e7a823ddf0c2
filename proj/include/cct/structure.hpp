#pragma once
#include <optional>
#include <string>
#include <vector>

#include "cct/vector_field.hpp"

namespace cct {

// Multi-index J = (j_1..j_k) naming the right-nested iterated commutator
// [Y_{j_1},[...,[Y_{j_{k-1}},Y_{j_k}]...]] of the generating fields.
struct BracketWord {
    std::vector<int> letters;  // 1-based indices in 1..r

    int length() const { return static_cast<int>(letters.size()); }
    std::string str() const;
    bool operator==(const BracketWord& o) const = default;
};

// n bracket words whose evaluations at 0 form a basis adapted to the bracket
// filtration L^1 <= ... <= L^s, with weights w_i = length(J_i).
struct AdaptedFrame {
    std::vector<BracketWord> words;
    Weights weights;    // adapted: nondecreasing, w_1 = 1
    int step = 1;       // w_n
    RatMat basis_at_zero;  // row i = Y_{J_i}(0)

    int n() const { return static_cast<int>(words.size()); }
    void validate(int rank) const;
};

// Bracket-generating frame of polynomial vector fields on R^n, rank r.
// Ingested fields carry all-ones variable weights (the anisotropic grading
// only exists after a frame has been selected). `exact` marks the fields as
// finite polynomials known exactly; otherwise each jet's order is its honest
// Taylor horizon.
struct CCStructure {
    int n = 0;
    int r = 0;
    std::vector<PolyVectorField> fields;
    std::optional<AdaptedFrame> frame;
    bool exact = true;

    void validate() const;  // shapes + pointwise independence at 0
};

// Right-nested iterated bracket per the word convention above.
PolyVectorField evaluate_word(const CCStructure& x, const BracketWord& j);

// Greedy deterministic selection: enumerate words by (length, lex), keep a
// word iff its value at 0 is independent of those already kept, stop at n.
// Throws HormanderError (with the achieved dimension) if L^max_step(0) is a
// proper subspace.
AdaptedFrame select_adapted_frame(const CCStructure& x, int max_step);

// Anisotropic dilation delta_lambda(x) = (lambda^{w_1} x_1, ..., lambda^{w_n} x_n).
// lambda < 0 is admitted (literal integer powers) for two-sided lines.
RatVec dilate_point(const RatVec& x, const Rat& lambda, const Weights& w);
std::vector<double> dilate_point(const std::vector<double>& x, double lambda, const Weights& w);

// (delta_lambda)_* V: component j becomes lambda^{w_j} * (V_j o delta_{1/lambda}).
PolyVectorField pushforward_dilation(const PolyVectorField& v, const Rat& lambda, const Weights& w);

// Anisotropic pseudo-norm sum_i |x_i|^{1/w_i} (delta-homogeneous of degree 1).
double anorm(const std::vector<double>& x, const Weights& w);

}  // namespace cct
