#pragma once
#include "cct/control.hpp"
#include "cct/decompose.hpp"

namespace cct {

// Double-precision evaluator for a family of polynomial fields, with the
// coefficients flattened once at construction. An optional rescaling factor
// lambda bakes in Y_i^lambda: coefficient of x^alpha in component j gets
// multiplied by lambda^{w_j - 1 - w_alpha}.
class CompiledFields {
  public:
    CompiledFields(const std::vector<PolyVectorField>& fields, const Weights& w, double lambda = 1.0);

    int rank() const { return static_cast<int>(fields_.size()); }
    int dim() const { return n_; }

    // dx = sum_i h_i * Y_i(x)
    void combo(std::span<const double> x, std::span<const double> h, std::span<double> dx) const;
    void single(int i, std::span<const double> x, std::span<double> dx) const;

  private:
    struct CTerm {
        double coef;
        std::vector<int> exp;
    };
    int n_;
    std::vector<std::vector<std::vector<CTerm>>> fields_;  // [i][j] -> terms
};

struct IntegrateOptions {
    double step = 1e-3;
    double escape_box = 1e6;  // sup-norm bound before an escape error
};

// Classical fixed-step RK4 against a piecewise-constant control, splitting
// steps exactly at control breakpoints and sample times. Deterministic.
HorizontalCurve integrate(const CompiledFields& fields, const Control& h, const std::vector<double>& x0,
                          const IntegrateOptions& opt, const std::vector<double>& sample_times,
                          const std::string& structure_id = "");

// Uniform sample grid a..b with `count` intervals.
std::vector<double> uniform_grid(double a, double b, int count);

}  // namespace cct
