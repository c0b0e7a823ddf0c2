#pragma once
#include <string>
#include <vector>

#include "cct/errors.hpp"

namespace cct {

// Piecewise-constant control h : [t_0, t_m] -> R^r. Piecewise-constant
// controls keep lengths exact and are dense in the topologies the blow-up
// analysis needs.
struct Control {
    int r = 0;
    std::vector<double> grid;                 // strictly increasing, size m+1
    std::vector<std::vector<double>> values;  // size m, each of size r
    bool arclength = false;                   // |h| = 1 on every interval

    void validate() const;
    double t_begin() const { return grid.front(); }
    double t_end() const { return grid.back(); }

    // value on the interval containing t (right-continuous; the last
    // interval is closed)
    const std::vector<double>& at(double t) const;

    // exact piecewise sum of |h| * interval length
    double length() const;

    // control tau -> h(t0 + eta * tau) restricted to [a, b] (window in tau)
    Control reparametrized(double t0, double eta, double a, double b) const;

    // mean value over the whole domain
    std::vector<double> mean() const;
    // L2 distance to a constant on the whole domain, exact segment sums
    double l2_distance_to(const std::vector<double>& c) const;

    // normalizes every value to unit Euclidean norm and sets the flag
    static Control make_arclength(int r, std::vector<double> grid, std::vector<std::vector<double>> values);
};

// Sampled horizontal curve: states at the sample times of `times`.
struct HorizontalCurve {
    Control control;
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    std::string structure_id;  // which field family was integrated

    int dim() const { return states.empty() ? 0 : static_cast<int>(states.front().size()); }
    const std::vector<double>& state_at(double t, double tol = 1e-12) const;
};

double sup_distance(const HorizontalCurve& a, const HorizontalCurve& b);

}  // namespace cct
