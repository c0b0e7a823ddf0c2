#pragma once
#include <optional>

#include "cct/free_lie.hpp"
#include "cct/integrate.hpp"

namespace cct {

// Blow-up of the curve driven by `h` at time t0 and scale eta, realized
// control-side: the control tau -> h(t0 + eta tau) is integrated from the
// origin against the rescaled fields Y^{1/eta}. This is the horizontal-curve
// form of the rescaling identity and avoids dilating near-zero states whose
// coordinates scale like eta^{w_j}. Window [a, b] must contain 0.
HorizontalCurve blowup(const DecomposedStructure& d, const Control& h, double t0, double eta,
                       double window_a, double window_b, const IntegrateOptions& opt, int samples);

// gamma^lambda(t) = delta_lambda(gamma(t / lambda)) on the sample level.
HorizontalCurve dilate_curve(const HorizontalCurve& c, double lambda, const Weights& w);

struct HalflineResult {
    bool found = false;
    std::vector<double> v;          // fitted direction in R^n
    double v_norm = 0;              // |v| reported, not assumed = 1
    double residual = 0;            // sup |kappa(tau) - tau v| on the window
    std::vector<double> gaps;       // successive sup distances
};

// Detects a half-line limit of a blow-up family computed on one window:
// successive sup-norm gaps must shrink below tol and the last curve must fit
// kappa(tau) = tau v with residual < tol. A non-Cauchy family is reported as
// not found (the tangent cone may contain several curves).
HalflineResult detect_halfline(const std::vector<HorizontalCurve>& family, double tol);

struct LineCheckResult {
    bool line = false;
    std::vector<double> c;  // constant control (x0)_{1..r} on acceptance
    double residual = 0;
};

// Checks whether t -> delta_t(x0) is a horizontal curve of the nilpotent
// structure: fits a constant control by least squares against Y^inf along
// the dilation orbit and accepts iff the sup defect is below tol.
LineCheckResult is_horizontal_line(const std::vector<double>& x0, const NilpotentStructure& ns, double tol);

struct ControlLimitResult {
    bool found = false;
    std::vector<double> c;
    std::vector<double> distances;  // L2 distance to the mean per scale
};

// L2-convergence of h(t0 + eta .) to a constant unit vector on the window:
// returns the mean when the distances drop below tol and |mean| -> 1.
ControlLimitResult control_blowup_limit(const Control& h, double t0, const std::vector<double>& etas,
                                        double window_a, double window_b, double tol);

struct LiftResult {
    HorizontalCurve lift;       // curve in F (dim = dim_f)
    HorizontalCurve projected;  // pi_inf of the lift, sampled on the same grid
    double projection_defect;   // sup distance to the directly integrated curve
};

// Integrates the lift d kappa / dt = sum h_i W_i(kappa) in the free group by
// RK4 and checks pi_inf(kappa(t)) against the curve integrated downstairs;
// a defect beyond tol is a consistency error.
LiftResult lift_curve(const Control& h, const LiftedStructure& l, const IntegrateOptions& opt,
                      int samples, double tol);

}  // namespace cct
