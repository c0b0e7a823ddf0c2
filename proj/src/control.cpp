#include "cct/control.hpp"

#include <algorithm>
#include <cmath>

namespace cct {

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

void Control::validate() const {
    if (r < 1) throw DomainError("control rank must be >= 1");
    if (grid.size() < 2) throw DomainError("control needs at least one interval");
    for (size_t q = 1; q < grid.size(); ++q)
        if (!(grid[q] > grid[q - 1])) throw DomainError("control grid must be strictly increasing");
    if (values.size() != grid.size() - 1) throw DomainError("control needs one value per interval");
    for (const auto& v : values) {
        if (static_cast<int>(v.size()) != r) throw DomainError("control value dimension mismatch");
        if (arclength && std::abs(norm2(v) - 1.0) > 1e-12)
            throw DomainError("arclength control with |h| != 1");
    }
}

const std::vector<double>& Control::at(double t) const {
    if (t <= grid.front()) return values.front();
    if (t >= grid.back()) return values.back();
    size_t q = static_cast<size_t>(std::upper_bound(grid.begin(), grid.end(), t) - grid.begin());
    return values[q - 1];
}

double Control::length() const {
    double s = 0;
    for (size_t q = 0; q < values.size(); ++q) s += norm2(values[q]) * (grid[q + 1] - grid[q]);
    return s;
}

Control Control::reparametrized(double t0, double eta, double a, double b) const {
    if (eta <= 0) throw DomainError("reparametrized: eta must be positive");
    if (t0 + eta * a < grid.front() - 1e-12 || t0 + eta * b > grid.back() + 1e-12)
        throw DomainError("blow-up window exceeds the control domain");
    Control out;
    out.r = r;
    out.arclength = arclength;
    out.grid.push_back(a);
    for (size_t q = 1; q + 1 < grid.size(); ++q) {
        double tau = (grid[q] - t0) / eta;
        if (tau > a && tau < b) out.grid.push_back(tau);
    }
    out.grid.push_back(b);
    for (size_t q = 0; q + 1 < out.grid.size(); ++q) {
        double mid = t0 + eta * 0.5 * (out.grid[q] + out.grid[q + 1]);
        out.values.push_back(at(mid));
    }
    out.validate();
    return out;
}

std::vector<double> Control::mean() const {
    std::vector<double> m(static_cast<size_t>(r), 0.0);
    double total = grid.back() - grid.front();
    for (size_t q = 0; q < values.size(); ++q) {
        double len = grid[q + 1] - grid[q];
        for (int i = 0; i < r; ++i) m[static_cast<size_t>(i)] += values[q][static_cast<size_t>(i)] * len;
    }
    for (auto& x : m) x /= total;
    return m;
}

double Control::l2_distance_to(const std::vector<double>& c) const {
    double s = 0;
    for (size_t q = 0; q < values.size(); ++q) {
        double len = grid[q + 1] - grid[q];
        for (int i = 0; i < r; ++i) {
            double d = values[q][static_cast<size_t>(i)] - c[static_cast<size_t>(i)];
            s += d * d * len;
        }
    }
    return std::sqrt(s);
}

Control Control::make_arclength(int r, std::vector<double> grid, std::vector<std::vector<double>> values) {
    for (auto& v : values) {
        double n = norm2(v);
        if (n == 0) throw DomainError("arclength control with zero value");
        for (auto& x : v) x /= n;
    }
    Control c{r, std::move(grid), std::move(values), true};
    c.validate();
    return c;
}

const std::vector<double>& HorizontalCurve::state_at(double t, double tol) const {
    for (size_t q = 0; q < times.size(); ++q)
        if (std::abs(times[q] - t) <= tol) return states[q];
    throw DomainError("curve not sampled at the requested time");
}

double sup_distance(const HorizontalCurve& a, const HorizontalCurve& b) {
    if (a.times.size() != b.times.size()) throw ShapeError("sup_distance: sample grids differ");
    double m = 0;
    for (size_t q = 0; q < a.times.size(); ++q) {
        if (std::abs(a.times[q] - b.times[q]) > 1e-9) throw ShapeError("sup_distance: sample grids differ");
        for (size_t j = 0; j < a.states[q].size(); ++j)
            m = std::max(m, std::abs(a.states[q][j] - b.states[q][j]));
    }
    return m;
}

}  // namespace cct
