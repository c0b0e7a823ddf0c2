#include "cct/blowup.hpp"

#include <algorithm>
#include <cmath>

namespace cct {

namespace {

// forward integration on [0, b] plus time-reversed integration on [a, 0],
// both from the origin-time state x0
HorizontalCurve integrate_two_sided(const CompiledFields& fields, const Control& h,
                                    const std::vector<double>& x0, const IntegrateOptions& opt,
                                    const std::vector<double>& sample_times, const std::string& id) {
    size_t zero_pos = 0;
    bool has_zero = false;
    for (size_t q = 0; q < sample_times.size(); ++q)
        if (std::abs(sample_times[q]) < 1e-12) {
            zero_pos = q;
            has_zero = true;
        }
    if (!has_zero) throw DomainError("two-sided integration: sample grid must contain 0");

    HorizontalCurve out;
    out.control = h;
    out.structure_id = id;
    out.times = sample_times;
    out.states.assign(sample_times.size(), {});
    out.states[zero_pos] = x0;

    if (zero_pos + 1 < sample_times.size()) {
        std::vector<double> fwd(sample_times.begin() + static_cast<long>(zero_pos), sample_times.end());
        HorizontalCurve c = integrate(fields, h, x0, opt, fwd, id);
        for (size_t q = 0; q < c.times.size(); ++q) out.states[zero_pos + q] = c.states[q];
    }
    if (zero_pos > 0) {
        // sigma = -tau: d kappa / d sigma = -sum h_i(-sigma) Y_i(kappa)
        Control rev;
        rev.r = h.r;
        for (size_t q = h.grid.size(); q-- > 0;) rev.grid.push_back(-h.grid[q]);
        for (size_t q = h.values.size(); q-- > 0;) {
            std::vector<double> v = h.values[q];
            for (auto& x : v) x = -x;
            rev.values.push_back(std::move(v));
        }
        rev.validate();
        std::vector<double> back;
        for (size_t q = zero_pos + 1; q-- > 0;) back.push_back(-sample_times[q]);
        HorizontalCurve c = integrate(fields, rev, x0, opt, back, id);
        for (size_t q = 0; q < c.times.size(); ++q) out.states[zero_pos - q] = c.states[q];
    }
    return out;
}

}  // namespace

HorizontalCurve blowup(const DecomposedStructure& d, const Control& h, double t0, double eta,
                       double window_a, double window_b, const IntegrateOptions& opt, int samples) {
    if (eta <= 0) throw DomainError("blowup: eta must be positive");
    if (!(window_a <= 0 && window_b >= 0 && window_a < window_b))
        throw DomainError("blowup: window must contain 0");
    Control hb = h.reparametrized(t0, eta, window_a, window_b);
    CompiledFields fields(d.base.fields, d.weights, 1.0 / eta);

    // grid aligned so that 0 is a sample
    int neg = static_cast<int>(std::round(-window_a / (window_b - window_a) * samples));
    std::vector<double> grid;
    for (int q = 0; q <= samples; ++q) {
        double tau = (window_b - window_a) * q / samples + window_a;
        if (q == neg) tau = 0.0;
        grid.push_back(tau);
    }
    std::vector<double> x0(static_cast<size_t>(d.n()), 0.0);
    return integrate_two_sided(fields, hb, x0, opt, grid, "rescaled:" + std::to_string(1.0 / eta));
}

HorizontalCurve dilate_curve(const HorizontalCurve& c, double lambda, const Weights& w) {
    HorizontalCurve out;
    out.control = c.control;
    out.structure_id = c.structure_id + ";dilated";
    out.times.reserve(c.times.size());
    for (double t : c.times) out.times.push_back(t * lambda);
    for (const auto& s : c.states) out.states.push_back(dilate_point(s, lambda, w));
    return out;
}

HalflineResult detect_halfline(const std::vector<HorizontalCurve>& family, double tol) {
    HalflineResult res;
    if (family.size() < 2) throw DomainError("detect_halfline: need at least two scales");
    for (size_t k = 0; k + 1 < family.size(); ++k) res.gaps.push_back(sup_distance(family[k], family[k + 1]));

    bool cauchy = res.gaps.back() < tol;
    for (size_t k = 0; k + 1 < res.gaps.size(); ++k)
        if (res.gaps[k + 1] > res.gaps[k] + tol) cauchy = false;

    const HorizontalCurve& last = family.back();
    const int n = last.dim();
    res.v.assign(static_cast<size_t>(n), 0.0);
    double tt = 0;
    for (size_t q = 0; q < last.times.size(); ++q) tt += last.times[q] * last.times[q];
    if (tt == 0) throw DomainError("detect_halfline: degenerate sample window");
    for (size_t q = 0; q < last.times.size(); ++q)
        for (int j = 0; j < n; ++j) res.v[static_cast<size_t>(j)] += last.times[q] * last.states[q][static_cast<size_t>(j)] / tt;

    res.residual = 0;
    for (size_t q = 0; q < last.times.size(); ++q)
        for (int j = 0; j < n; ++j)
            res.residual = std::max(res.residual,
                                    std::abs(last.states[q][static_cast<size_t>(j)] - last.times[q] * res.v[static_cast<size_t>(j)]));
    double nv = 0;
    for (double x : res.v) nv += x * x;
    res.v_norm = std::sqrt(nv);
    res.found = cauchy && res.residual < tol;
    return res;
}

LineCheckResult is_horizontal_line(const std::vector<double>& x0, const NilpotentStructure& ns, double tol) {
    const Weights& w = ns.weights;
    const int n = w.n();
    const int r = static_cast<int>(ns.fields_inf.size());
    if (static_cast<int>(x0.size()) != n) throw ShapeError("is_horizontal_line: dimension mismatch");
    CompiledFields fields(ns.fields_inf, w);

    const int grid_n = 200;
    std::vector<std::vector<double>> m_cols(static_cast<size_t>(r));
    // normal equations for the least-squares constant control
    std::vector<std::vector<double>> g(static_cast<size_t>(r), std::vector<double>(static_cast<size_t>(r), 0.0));
    std::vector<double> b(static_cast<size_t>(r), 0.0);

    std::vector<std::vector<double>> kdots, ys;
    for (int q = 0; q <= grid_n; ++q) {
        double t = -1.0 + 2.0 * q / grid_n;
        std::vector<double> kappa(static_cast<size_t>(n)), kdot(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            kappa[static_cast<size_t>(j)] = std::pow(t, w[j]) * x0[static_cast<size_t>(j)];
            kdot[static_cast<size_t>(j)] = (w[j] == 1 ? 1.0 : w[j] * std::pow(t, w[j] - 1)) * x0[static_cast<size_t>(j)];
        }
        std::vector<double> yi(static_cast<size_t>(n));
        std::vector<std::vector<double>> cols;
        for (int i = 0; i < r; ++i) {
            fields.single(i, kappa, yi);
            cols.push_back(yi);
        }
        for (int i = 0; i < r; ++i) {
            for (int k = 0; k < r; ++k)
                for (int j = 0; j < n; ++j)
                    g[static_cast<size_t>(i)][static_cast<size_t>(k)] +=
                        cols[static_cast<size_t>(i)][static_cast<size_t>(j)] * cols[static_cast<size_t>(k)][static_cast<size_t>(j)];
            for (int j = 0; j < n; ++j)
                b[static_cast<size_t>(i)] += cols[static_cast<size_t>(i)][static_cast<size_t>(j)] * kdot[static_cast<size_t>(j)];
        }
        kdots.push_back(std::move(kdot));
        ys.push_back(std::move(kappa));
    }

    // solve g c = b (tiny SPD system)
    std::vector<double> c(static_cast<size_t>(r), 0.0);
    {
        auto a = g;
        auto rhs = b;
        for (int col = 0; col < r; ++col) {
            int piv = col;
            for (int i = col + 1; i < r; ++i)
                if (std::abs(a[static_cast<size_t>(i)][static_cast<size_t>(col)]) >
                    std::abs(a[static_cast<size_t>(piv)][static_cast<size_t>(col)]))
                    piv = i;
            std::swap(a[static_cast<size_t>(col)], a[static_cast<size_t>(piv)]);
            std::swap(rhs[static_cast<size_t>(col)], rhs[static_cast<size_t>(piv)]);
            double d = a[static_cast<size_t>(col)][static_cast<size_t>(col)];
            if (std::abs(d) < 1e-300) throw StructureError("is_horizontal_line: singular normal equations");
            for (int i = 0; i < r; ++i) {
                if (i == col) continue;
                double f = a[static_cast<size_t>(i)][static_cast<size_t>(col)] / d;
                for (int k = col; k < r; ++k)
                    a[static_cast<size_t>(i)][static_cast<size_t>(k)] -= f * a[static_cast<size_t>(col)][static_cast<size_t>(k)];
                rhs[static_cast<size_t>(i)] -= f * rhs[static_cast<size_t>(col)];
            }
        }
        for (int i = 0; i < r; ++i) c[static_cast<size_t>(i)] = rhs[static_cast<size_t>(i)] / a[static_cast<size_t>(i)][static_cast<size_t>(i)];
    }

    LineCheckResult res;
    res.residual = 0;
    std::vector<double> yi(static_cast<size_t>(n));
    for (size_t q = 0; q < ys.size(); ++q) {
        std::vector<double> defect = kdots[q];
        for (int i = 0; i < r; ++i) {
            fields.single(i, ys[q], yi);
            for (int j = 0; j < n; ++j) defect[static_cast<size_t>(j)] -= c[static_cast<size_t>(i)] * yi[static_cast<size_t>(j)];
        }
        for (double dv : defect) res.residual = std::max(res.residual, std::abs(dv));
    }
    res.line = res.residual < tol;
    if (res.line) res.c.assign(x0.begin(), x0.begin() + r);
    return res;
}

ControlLimitResult control_blowup_limit(const Control& h, double t0, const std::vector<double>& etas,
                                        double window_a, double window_b, double tol) {
    ControlLimitResult res;
    if (etas.empty()) throw DomainError("control_blowup_limit: no scales");
    std::vector<double> mean;
    for (double eta : etas) {
        Control hb = h.reparametrized(t0, eta, window_a, window_b);
        mean = hb.mean();
        res.distances.push_back(hb.l2_distance_to(mean));
    }
    double norm = 0;
    for (double x : mean) norm += x * x;
    norm = std::sqrt(norm);

    bool decreasing = true;
    for (size_t k = 0; k + 1 < res.distances.size(); ++k)
        if (res.distances[k + 1] > res.distances[k] + tol) decreasing = false;
    res.found = decreasing && res.distances.back() < tol && std::abs(norm - 1.0) < tol;
    if (res.found) res.c = mean;
    return res;
}

LiftResult lift_curve(const Control& h, const LiftedStructure& l, const IntegrateOptions& opt,
                      int samples, double tol) {
    h.validate();
    if (h.r != l.basis->rank()) throw ShapeError("lift_curve: control rank differs from the basis rank");
    const int nf = l.dim_f();
    const int n = l.target.weights.n();

    CompiledFields up(l.lift_fields, l.f_weights);
    std::vector<double> grid = uniform_grid(h.t_begin(), h.t_end(), samples);
    std::vector<double> x0(static_cast<size_t>(nf), 0.0);
    LiftResult res;
    res.lift = integrate(up, h, x0, opt, grid, "free-lift");

    // project through the polynomial pi map
    res.projected.control = h;
    res.projected.times = res.lift.times;
    res.projected.structure_id = "pi-projection";
    for (const auto& state : res.lift.states) {
        std::vector<double> p(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) p[static_cast<size_t>(j)] = l.pi_map[static_cast<size_t>(j)].eval(state);
        res.projected.states.push_back(std::move(p));
    }

    CompiledFields down(l.target.fields_inf, l.target.weights);
    std::vector<double> y0(static_cast<size_t>(n), 0.0);
    HorizontalCurve direct = integrate(down, h, y0, opt, grid, "nilpotent");
    res.projection_defect = sup_distance(res.projected, direct);
    if (res.projection_defect > tol)
        throw ConsistencyError("lift_curve: projection defect " + std::to_string(res.projection_defect) +
                               " exceeds tolerance");
    return res;
}

}  // namespace cct
