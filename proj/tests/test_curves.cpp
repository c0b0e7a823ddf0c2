#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cct/blowup.hpp"
#include "cct/corpus.hpp"
#include "test_util.hpp"

using namespace cct;
using namespace cct::testing;

namespace {

// fine piecewise-constant sampling of a smooth control
Control sampled_control(int r, double t0, double t1, double dt,
                        const std::function<std::vector<double>(double)>& h, bool left_endpoint = false) {
    std::vector<double> grid;
    std::vector<std::vector<double>> values;
    int m = static_cast<int>(std::round((t1 - t0) / dt));
    for (int q = 0; q <= m; ++q) grid.push_back(t0 + (t1 - t0) * q / m);
    for (int q = 0; q < m; ++q)
        values.push_back(h(left_endpoint ? grid[static_cast<size_t>(q)]
                                         : 0.5 * (grid[static_cast<size_t>(q)] + grid[static_cast<size_t>(q) + 1])));
    Control c{r, std::move(grid), std::move(values), false};
    c.validate();
    return c;
}

struct HeisSetup {
    Pipeline p;
    CompiledFields fields;
    HeisSetup() : p(pipeline(heisenberg())), fields(p.ns.fields_inf, p.frame.weights) {}
};

}  // namespace

TEST_CASE("integration: straight line in the abelian plane") {
    Pipeline p = pipeline(abelian2());
    CompiledFields f(p.ns.fields_inf, p.frame.weights);
    Control h{2, {0.0, 1.0}, {{1.0, 0.0}}, true};
    HorizontalCurve c = integrate(f, h, {0.0, 0.0}, {}, uniform_grid(0.0, 1.0, 10));
    CHECK(c.states.back()[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c.states.back()[1] == doctest::Approx(0.0));
}

TEST_CASE("integration: two-segment Heisenberg path reaches (1,1,1/2)") {
    HeisSetup s;
    Control h{2, {0.0, 1.0, 2.0}, {{1.0, 0.0}, {0.0, 1.0}}, true};
    HorizontalCurve c = integrate(s.fields, h, {0.0, 0.0, 0.0}, {}, uniform_grid(0.0, 2.0, 20));
    CHECK(c.states.back()[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.states.back()[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.states.back()[2] == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("integration: circular control encloses area pi") {
    HeisSetup s;
    const double two_pi = 6.283185307179586476;
    Control h = sampled_control(2, 0.0, two_pi, 1e-3,
                                [](double t) { return std::vector<double>{std::cos(t), std::sin(t)}; });
    HorizontalCurve c = integrate(s.fields, h, {0.0, 0.0, 0.0}, {}, uniform_grid(0.0, two_pi, 100));
    CHECK(std::abs(c.states.back()[0]) < 2e-6);
    CHECK(std::abs(c.states.back()[1]) < 2e-6);
    CHECK(c.states.back()[2] == doctest::Approx(3.14159265358979).epsilon(1e-5));
}

TEST_CASE("integration guards: escape box and bad sample grids") {
    HeisSetup s;
    Control h{2, {0.0, 1.0}, {{1.0, 0.0}}, true};
    IntegrateOptions opt;
    opt.escape_box = 0.5;
    CHECK_THROWS_AS(integrate(s.fields, h, {0.0, 0.0, 0.0}, opt, uniform_grid(0.0, 1.0, 4)),
                    ConsistencyError);
    CHECK_THROWS_AS(integrate(s.fields, h, {0.0, 0.0, 0.0}, {}, uniform_grid(0.0, 2.0, 4)), DomainError);
}

TEST_CASE("length: exact sums and exact rescaling") {
    Control h{2, {0.0, 2.0}, {{1.0, 0.0}}, true};
    CHECK(h.length() == 2.0);
    Control arc{2, {0.0, 0.25, 1.5}, {{0.6, 0.8}, {-1.0, 0.0}}, true};
    CHECK(arc.length() == 1.5);

    // h(./lambda) on [0, lambda]: length becomes lambda * L, exactly for lambda = 2
    Control resc = arc.reparametrized(0.0, 0.5, 0.0, 3.0);
    CHECK(resc.length() == 2.0 * arc.length());
}

TEST_CASE("blow-up of a horizontal line is the line at every scale") {
    HeisSetup s;
    Control h{2, {-2.0, 2.0}, {{0.6, 0.8}}, true};
    IntegrateOptions opt;
    // window must stay inside the control domain and contain 0
    CHECK_THROWS_AS(blowup(s.p.dec, h, 0.0, 4.0, -1.0, 1.0, opt, 10), DomainError);
    CHECK_THROWS_AS(blowup(s.p.dec, h, 0.0, 0.5, 0.5, 1.0, opt, 10), DomainError);
    for (double eta : {0.5, 0.1, 0.01}) {
        HorizontalCurve b = blowup(s.p.dec, h, 0.0, eta, -1.0, 1.0, opt, 40);
        for (size_t q = 0; q < b.times.size(); ++q) {
            CHECK(b.states[q][0] == doctest::Approx(0.6 * b.times[q]).epsilon(1e-10));
            CHECK(b.states[q][1] == doctest::Approx(0.8 * b.times[q]).epsilon(1e-10));
            CHECK(std::abs(b.states[q][2]) < 1e-10);
        }
    }
}

TEST_CASE("blow-ups of h = (1, t) converge to the x1-line and the detector accepts") {
    HeisSetup s;
    Control h = sampled_control(2, 0.0, 0.5, 1e-4,
                                [](double t) { return std::vector<double>{1.0, t}; }, true);
    IntegrateOptions opt;
    std::vector<HorizontalCurve> family;
    std::vector<double> errs;
    for (double eta : {1e-1, 1e-2, 1e-3, 1e-4}) {
        family.push_back(blowup(s.p.dec, h, 0.0, eta, 0.0, 1.0, opt, 100));
        double err = 0;
        for (size_t q = 0; q < family.back().times.size(); ++q) {
            err = std::max(err, std::abs(family.back().states[q][0] - family.back().times[q]));
            err = std::max(err, std::abs(family.back().states[q][1]));
            err = std::max(err, std::abs(family.back().states[q][2]));
        }
        errs.push_back(err);
    }
    for (size_t k = 0; k + 1 < errs.size(); ++k) CHECK(errs[k + 1] < errs[k] + 1e-12);
    CHECK(errs.back() < 1e-3);

    HalflineResult det = detect_halfline(family, 1e-3);
    CHECK(det.found);
    CHECK(det.v[0] == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(std::abs(det.v[1]) < 1e-3);
    CHECK(std::abs(det.v[2]) < 1e-3);
    CHECK(std::abs(det.v_norm - 1.0) < 1e-3);
}

TEST_CASE("oscillating control on geometric scales is declined (non-Cauchy)") {
    HeisSetup s;
    // alternating directions on dyadic scales: blow-ups at eta = 4^{-k}
    // keep switching between the two patterns
    std::vector<double> grid{0.0};
    std::vector<std::vector<double>> vals;
    std::vector<double> breaks;
    for (int k = 12; k >= 0; --k) breaks.push_back(std::pow(2.0, -k));
    int parity = 0;
    for (double b : breaks) {
        grid.push_back(b);
        vals.push_back(parity % 2 == 0 ? std::vector<double>{1.0, 0.0} : std::vector<double>{0.0, 1.0});
        ++parity;
    }
    Control h{2, grid, vals, true};
    h.validate();
    IntegrateOptions opt;
    std::vector<HorizontalCurve> family;
    for (double eta : {std::pow(2.0, -4), std::pow(2.0, -5), std::pow(2.0, -6), std::pow(2.0, -7)})
        family.push_back(blowup(s.p.dec, h, 0.0, eta, 0.0, 1.0, opt, 50));
    HalflineResult det = detect_halfline(family, 1e-3);
    CHECK_FALSE(det.found);
    CHECK(det.gaps.back() > 0.1);
}

TEST_CASE("horizontal line detection along dilation orbits") {
    HeisSetup s;
    LineCheckResult a = is_horizontal_line({1.0, 0.0, 0.0}, s.p.ns, 1e-6);
    CHECK(a.line);
    REQUIRE(a.c.size() == 2);
    CHECK(a.c[0] == doctest::Approx(1.0));
    CHECK(a.c[1] == doctest::Approx(0.0));

    LineCheckResult b = is_horizontal_line({0.0, 0.0, 1.0}, s.p.ns, 1e-3);
    CHECK_FALSE(b.line);

    LineCheckResult z = is_horizontal_line({0.0, 0.0, 0.0}, s.p.ns, 1e-9);
    CHECK(z.line);
    CHECK(z.c == std::vector<double>{0.0, 0.0});
}

TEST_CASE("Engel horizontal lines may carry higher coordinates") {
    Pipeline p = pipeline(engel());
    // constant control (1,1) from 0: kappa(1) = (1, 1, 1/2, 1/6)
    CompiledFields f(p.ns.fields_inf, p.frame.weights);
    Control h{2, {0.0, 1.0}, {{1.0, 1.0}}, false};
    HorizontalCurve c = integrate(f, h, {0, 0, 0, 0}, {}, uniform_grid(0.0, 1.0, 10));
    LineCheckResult r = is_horizontal_line(c.states.back(), p.ns, 1e-6);
    CHECK(r.line);
    CHECK(r.c[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.c[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("control blow-up limits") {
    Control constant{2, {-1.0, 1.0}, {{0.8, 0.6}}, true};
    ControlLimitResult a = control_blowup_limit(constant, 0.0, {0.5, 0.1, 0.01}, -1.0, 1.0, 1e-6);
    CHECK(a.found);
    CHECK(a.c == std::vector<double>{0.8, 0.6});

    const double pi_half = 1.5707963267948966;
    Control circle = sampled_control(2, 0.0, 3.2, 1e-3,
                                     [](double t) { return std::vector<double>{std::cos(t), std::sin(t)}; });
    ControlLimitResult b = control_blowup_limit(circle, pi_half, {1e-1, 1e-2, 1e-3, 1e-4}, -1.0, 1.0, 1e-3);
    CHECK(b.found);
    CHECK(std::abs(b.c[0]) < 1e-3);
    CHECK(b.c[1] == doctest::Approx(1.0).epsilon(1e-3));

    // the geometric-scale alternating control declines
    std::vector<double> grid{0.0};
    std::vector<std::vector<double>> vals;
    for (int k = 12; k >= 0; --k) {
        grid.push_back(std::pow(2.0, -k));
        vals.push_back(k % 2 == 0 ? std::vector<double>{1.0, 0.0} : std::vector<double>{0.0, 1.0});
    }
    Control osc{2, grid, vals, true};
    ControlLimitResult c = control_blowup_limit(osc, 0.0, {std::pow(2.0, -4), std::pow(2.0, -6), std::pow(2.0, -8)},
                                                0.0, 1.0, 1e-3);
    CHECK_FALSE(c.found);
}

TEST_CASE("blow-up at an interior time of a Heisenberg geodesic is a horizontal line") {
    HeisSetup s;
    for (double omega : {1.0, 2.0})
        for (double phase : {0.0, 0.7}) {
            Control h = sampled_control(2, 0.0, 3.0, 1e-3, [&](double t) {
                return std::vector<double>{std::cos(omega * t + phase), std::sin(omega * t + phase)};
            });
            IntegrateOptions opt;
            HorizontalCurve b = blowup(s.p.dec, h, 1.0, 1e-4, -1.0, 1.0, opt, 100);
            LineCheckResult line = is_horizontal_line(b.state_at(1.0), s.p.ns, 1e-3);
            CHECK(line.line);
        }
}

TEST_CASE("rescaled-curve identity: integrating h(./lambda) against Y^lambda dilates the curve") {
    HeisSetup s;
    std::mt19937_64 rng(6060);
    Control h = random_arclength_control(rng, 2, 1.0, 3);
    const double lam = 2.0;
    IntegrateOptions opt;
    HorizontalCurve gamma = integrate(CompiledFields(s.p.dec.base.fields, s.p.frame.weights), h,
                                      {0.0, 0.0, 0.0}, opt, uniform_grid(0.0, 1.0, 50));
    HorizontalCurve dilated = dilate_curve(gamma, lam, s.p.frame.weights);
    Control hl = h.reparametrized(0.0, 1.0 / lam, 0.0, lam);
    HorizontalCurve direct = integrate(CompiledFields(s.p.dec.base.fields, s.p.frame.weights, lam), hl,
                                       {0.0, 0.0, 0.0}, opt, dilated.times);
    CHECK(sup_distance(direct, dilated) < 1e-10);
}

TEST_CASE("two-stage blow-up agrees with the single-stage blow-up") {
    HeisSetup s;
    Control h = sampled_control(2, 0.0, 0.5, 1e-3,
                                [](double t) { return std::vector<double>{1.0, t}; }, true);
    IntegrateOptions opt;
    const double eta = 0.1, xi = 0.1;
    HorizontalCurve outer = blowup(s.p.dec, h, 0.0, eta, 0.0, 1.0, opt, 1000);
    HorizontalCurve dil = dilate_curve(outer, 1.0 / xi, s.p.frame.weights);
    HorizontalCurve window;
    window.control = dil.control;
    for (size_t q = 0; q < dil.times.size(); ++q)
        if (dil.times[q] <= 1.0 + 1e-9) {
            window.times.push_back(dil.times[q]);
            window.states.push_back(dil.states[q]);
        }
    HorizontalCurve single = blowup(s.p.dec, h, 0.0, eta * xi, 0.0, 1.0, opt,
                                    static_cast<int>(window.times.size()) - 1);
    CHECK(sup_distance(window, single) < 1e-4);
}

TEST_CASE("lifting: Heisenberg is its own lift under the coordinate identification") {
    Pipeline p = pipeline(heisenberg());
    LiftedStructure l = build_psi(HallBasis::build(2, 2), p.ns);
    std::mt19937_64 rng(808);
    Control h = random_arclength_control(rng, 2, 1.0, 3);
    IntegrateOptions opt;
    LiftResult lr = lift_curve(h, l, opt, 50, 1e-6);
    CHECK(lr.projection_defect < 1e-9);
    // pi is the identity here, so the lift equals its projection
    CHECK(sup_distance(lr.lift, lr.projected) < 1e-12);
}

TEST_CASE("lifting: zero control stays at the group identity") {
    Pipeline p = pipeline(engel());
    LiftedStructure l = build_psi(HallBasis::build(2, 3), p.ns);
    Control h{2, {0.0, 1.0}, {{0.0, 0.0}}, false};
    IntegrateOptions opt;
    LiftResult lr = lift_curve(h, l, opt, 10, 1e-9);
    for (const auto& s : lr.lift.states)
        for (double x : s) CHECK(std::abs(x) < 1e-14);
}

TEST_CASE("lifting into the free (2,3) group over Engel") {
    Pipeline p = pipeline(engel());
    LiftedStructure l = build_psi(HallBasis::build(2, 3), p.ns);
    IntegrateOptions opt;

    // constant control e1: the lift is exp(t W1)
    Control h{2, {0.0, 1.0}, {{1.0, 0.0}}, true};
    LiftResult lr = lift_curve(h, l, opt, 20, 1e-8);
    CHECK(lr.lift.states.back()[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (int m = 1; m < 5; ++m) CHECK(std::abs(lr.lift.states.back()[static_cast<size_t>(m)]) < 1e-12);

    // the projection of exp(tW) is a horizontal line downstairs
    LineCheckResult line = is_horizontal_line(lr.projected.states.back(), p.ns, 1e-8);
    CHECK(line.line);

    // a circular control activates the second layer-3 coordinate (the fiber)
    Control circ = sampled_control(2, 0.0, 1.0, 1e-3,
                                   [](double t) { return std::vector<double>{std::cos(t), std::sin(t)}; });
    LiftResult lc = lift_curve(circ, l, opt, 20, 1e-6);
    CHECK(std::abs(lc.lift.states.back()[4]) > 1e-4);
    CHECK(lc.projection_defect < 1e-9);
}

TEST_CASE("growth bound on a small random corpus") {
    for (CCStructure base : {heisenberg(), engel()}) {
        Pipeline p = pipeline(base);
        CompiledFields f(p.dec.base.fields, p.frame.weights);
        std::mt19937_64 rng(123456);
        std::vector<double> samples;
        for (int q = 1; q <= 1000; ++q) samples.push_back(q / 1000.0);
        std::vector<HorizontalCurve> cs;
        double cmax = 0;
        for (int c = 0; c < 25; ++c) {
            Control h = random_arclength_control(rng, 2, 1.0, 4);
            cs.push_back(integrate(f, h, std::vector<double>(static_cast<size_t>(base.n), 0.0), {}, samples));
            for (int j = 0; j < base.n; ++j) cmax = std::max(cmax, std::abs(cs.back().states.back()[static_cast<size_t>(j)]));
        }
        double big_c = 2.0 * cmax;
        for (const auto& curve : cs)
            for (size_t q = 0; q < curve.times.size(); ++q)
                for (int j = 0; j < base.n; ++j)
                    CHECK(std::abs(curve.states[q][static_cast<size_t>(j)]) <=
                          big_c * std::pow(curve.times[q], p.frame.weights[j]));
    }
}

TEST_CASE("group action flows agree with the RK4 integrator") {
    Pipeline p = pipeline(engel());
    LiftedStructure l = build_psi(HallBasis::build(2, 3), p.ns);
    // act by exp(W1) exp(W2) and integrate the same two-segment control
    RatVec zero(4, Rat(0));
    RatVec exact = group_action(group_action(zero, FreeLieElement::generator(l.basis, 0), l),
                                FreeLieElement::generator(l.basis, 1), l);
    CompiledFields f(p.ns.fields_inf, p.frame.weights);
    Control h{2, {0.0, 1.0, 2.0}, {{1.0, 0.0}, {0.0, 1.0}}, true};
    HorizontalCurve c = integrate(f, h, {0, 0, 0, 0}, {}, uniform_grid(0.0, 2.0, 10));
    for (int j = 0; j < 4; ++j)
        CHECK(c.states.back()[static_cast<size_t>(j)] ==
              doctest::Approx(rat_double(exact[static_cast<size_t>(j)])).epsilon(1e-9));
}
