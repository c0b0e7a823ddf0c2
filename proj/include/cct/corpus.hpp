#pragma once
#include <random>

#include "cct/control.hpp"
#include "cct/structure.hpp"

namespace cct {

// Deterministic generators for verification corpora.

// Piecewise-constant arclength control on [0, T] with 1..max_segments pieces
// and directions uniform on the sphere.
Control random_arclength_control(std::mt19937_64& rng, int r, double T, int max_segments);

// Random rational with numerator in [-num_bound, num_bound] and denominator
// in [1, den_bound].
Rat random_rational(std::mt19937_64& rng, int num_bound, int den_bound);

// Random polynomial perturbation of a bracket-generating structure given in
// standard adapted coordinates: a conjugation by a weight-compatible
// triangular polynomial diffeomorphism plus additive field terms of weighted
// degree >= w_j per component, both of which leave the input coordinates
// privileged. The result is exact.
CCStructure perturbed_structure(const CCStructure& base, const Weights& frame_weights,
                                std::mt19937_64& rng);

}  // namespace cct
