#pragma once
#include "cct/structure.hpp"

namespace cct {

// Germ of the map u -> exp(sum u_i Y_{J_i})(0), expressed in the linearly
// normalized coordinates (frame values at 0 are the standard basis, so the
// linear part of phi is the identity).
struct ExponentialChart {
    JetMap phi;
    JetMap phi_inv;
    int order = 0;
};

// Linear change of coordinates making Y_{J_i}(0) = d/dx_i, with the jets
// reinterpreted under the frame's weights afterwards. Returned structure
// carries the normalized frame (basis = identity).
CCStructure normalize_to_frame(const CCStructure& x, const AdaptedFrame& f);

// Evaluations of the frame words on a normalized structure, with honest
// order propagation (truncated-series inputs supported).
std::vector<PolyVectorField> frame_fields(const CCStructure& x, const AdaptedFrame& f);

// Operator-exponential chart of the normalized structure:
//   phi_j(u) = sum_{k<=N} (1/k!) ((sum_i u_i Y_{J_i})^k x_j)(0)
// truncated at weighted degree N; phi_inv by series inversion.
ExponentialChart build_exponential_chart(const CCStructure& x, const AdaptedFrame& f, int order);

// Pushforward of a structure's fields under x = phi(u) for a polynomial map
// with identity linear part: a~(u) = (Dphi(u))^{-1} a(phi(u)) via a Neumann
// solve. Honest output order; OrderError if it falls below out_order.
std::vector<PolyVectorField> pushforward_fields(const std::vector<PolyVectorField>& fields,
                                                const JetMap& phi, int out_order, bool fields_exact);

// Full transformation into exponential coordinates of the first kind: linear
// normalization, chart, pushforward. Resulting a_ij satisfy a_ij(0) = delta_ij;
// fields are truncated series at `order` (exact flag cleared).
CCStructure to_exponential_coordinates(const CCStructure& x, const AdaptedFrame& f, int order);

}  // namespace cct
