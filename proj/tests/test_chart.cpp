#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace cct;
using namespace cct::testing;

TEST_CASE("chart of the polarized model is the shear (x1, x2, x3 + x1 x2 / 2)") {
    CCStructure x = polarized_heisenberg();
    AdaptedFrame f = select_adapted_frame(x, 4);
    ExponentialChart c = build_exponential_chart(x, f, 4);
    Weights w = f.weights;
    CHECK(c.phi.comps[0] == Jet::variable(0, 3, w, 4));
    CHECK(c.phi.comps[1] == Jet::variable(1, 3, w, 4));
    CHECK(c.phi.comps[2] == jet_of(3, w, 4, {{{0, 0, 1}, Rat(1)}, {{1, 1, 0}, Rat(1, 2)}}));
    CHECK(c.phi_inv.comps[2] == jet_of(3, w, 4, {{{0, 0, 1}, Rat(1)}, {{1, 1, 0}, Rat(-1, 2)}}));
}

TEST_CASE("already-exponential structures get the identity chart") {
    for (CCStructure x : {heisenberg(), abelian2()}) {
        AdaptedFrame f = select_adapted_frame(x, 4);
        ExponentialChart c = build_exponential_chart(x, f, 2 * f.step);
        CHECK(c.phi.is_identity());
        CHECK(c.phi_inv.is_identity());
    }
}

TEST_CASE("chart order must dominate the step") {
    CCStructure x = engel();
    AdaptedFrame f = select_adapted_frame(x, 4);
    CHECK_THROWS_AS(build_exponential_chart(x, f, 2), DomainError);
}

TEST_CASE("Engel chart matches the hand-integrated flow") {
    CCStructure x = engel();
    AdaptedFrame f = select_adapted_frame(x, 4);
    ExponentialChart c = build_exponential_chart(x, f, 6);
    Weights w = f.weights;
    // phi = (u1, u2, u3 + u1 u2/2, u4 + u1 u3/2 + u1^2 u2/6)
    CHECK(c.phi.comps[2] == jet_of(4, w, 6, {{{0, 0, 1, 0}, Rat(1)}, {{1, 1, 0, 0}, Rat(1, 2)}}));
    CHECK(c.phi.comps[3] == jet_of(4, w, 6,
                                   {{{0, 0, 0, 1}, Rat(1)},
                                    {{1, 0, 1, 0}, Rat(1, 2)},
                                    {{2, 1, 0, 0}, Rat(1, 6)}}));
}

TEST_CASE("polarized model transforms to the symmetric fields") {
    CCStructure x = polarized_heisenberg();
    AdaptedFrame f = select_adapted_frame(x, 4);
    CCStructure e = to_exponential_coordinates(x, f, 4);
    Weights w = f.weights;
    CHECK(e.fields[0].comp[0] == Jet::constant(3, w, 4, Rat(1)));
    CHECK(e.fields[0].comp[1].is_zero());
    CHECK(e.fields[0].comp[2] == jet_of(3, w, 4, {{{0, 1, 0}, Rat(-1, 2)}}));
    CHECK(e.fields[1].comp[2] == jet_of(3, w, 4, {{{1, 0, 0}, Rat(1, 2)}}));
}

TEST_CASE("exponential structures are fixed points of the transformation") {
    for (CCStructure x : {heisenberg(), abelian2()}) {
        AdaptedFrame f = select_adapted_frame(x, 4);
        CCStructure e = to_exponential_coordinates(x, f, 2 * f.step);
        for (int i = 0; i < x.r; ++i)
            for (int j = 0; j < x.n; ++j) {
                Jet expect = x.fields[static_cast<size_t>(i)]
                                 .comp[static_cast<size_t>(j)]
                                 .reweighted(f.weights, kOrderInf)
                                 .truncated(2 * f.step);
                CHECK(e.fields[static_cast<size_t>(i)].comp[static_cast<size_t>(j)] == expect);
            }
    }
}

TEST_CASE("Engel transforms to the step-3 Carnot fields") {
    CCStructure x = engel();
    AdaptedFrame f = select_adapted_frame(x, 4);
    CCStructure e = to_exponential_coordinates(x, f, 6);
    Weights w = f.weights;
    // Y1 = d1 - u2/2 d3 - (u3/2 + u1 u2/12) d4
    CHECK(e.fields[0].comp[2] == jet_of(4, w, 6, {{{0, 1, 0, 0}, Rat(-1, 2)}}));
    CHECK(e.fields[0].comp[3] ==
          jet_of(4, w, 6, {{{0, 0, 1, 0}, Rat(-1, 2)}, {{1, 1, 0, 0}, Rat(-1, 12)}}));
    // Y2 = d2 + u1/2 d3 + u1^2/12 d4
    CHECK(e.fields[1].comp[2] == jet_of(4, w, 6, {{{1, 0, 0, 0}, Rat(1, 2)}}));
    CHECK(e.fields[1].comp[3] == jet_of(4, w, 6, {{{2, 0, 0, 0}, Rat(1, 12)}}));
}

TEST_CASE("linear normalization handles a non-identity basis at 0") {
    // X1 = d1, X2 = d2 + (x1^2 + x2 + x1^3) d3: the length-3 bracket value is 2 d3,
    // the x2 term breaks the privilege of the input coordinates and the cubic
    // survives as a genuine remainder
    Weights ones{std::vector<int>{1, 1, 1}};
    auto jet = [&](std::vector<Term> ts) { return Jet::from_terms(3, ones, kOrderInf, std::move(ts)); };
    CCStructure x;
    x.n = 3;
    x.r = 2;
    x.exact = true;
    PolyVectorField y1, y2;
    y1.comp = {jet({{{0, 0, 0}, Rat(1)}}), jet({}), jet({})};
    y2.comp = {jet({}), jet({{{0, 0, 0}, Rat(1)}}),
               jet({{{2, 0, 0}, Rat(1)}, {{0, 1, 0}, Rat(1)}, {{3, 0, 0}, Rat(1)}})};
    x.fields = {y1, y2};

    AdaptedFrame f = select_adapted_frame(x, 4);
    CHECK(f.weights.vec() == std::vector<int>{1, 1, 3});
    CHECK(f.basis_at_zero.at(2, 2) == Rat(2));

    // despite the privilege-breaking x2 term, exact polynomial input
    // transforms cleanly and the decomposition certifies
    CCStructure e = to_exponential_coordinates(x, f, 6);
    DecomposedStructure d = decompose_graded(e, f);
    NilpotentStructure ns = nilpotent_approximation(d);
    CHECK(ns.step == 3);
    bool has_remainder = false;
    for (const auto& row : d.rjet)
        for (const auto& rj : row)
            if (!rj.is_zero()) has_remainder = true;
    CHECK(has_remainder);
}

TEST_CASE("chart values agree with the numerically integrated frame flow") {
    // x = phi(u) is the time-1 flow of sum u_i Y_{J_i} from 0; RK4 gives an
    // independent oracle for the operator-series construction
    Weights ones{std::vector<int>{1, 1, 1}};
    auto jet = [&](std::vector<Term> ts) { return Jet::from_terms(3, ones, kOrderInf, std::move(ts)); };
    CCStructure x;
    x.n = 3;
    x.r = 2;
    x.exact = true;
    PolyVectorField y1, y2;
    y1.comp = {jet({{{0, 0, 0}, Rat(1)}}), jet({}), jet({})};
    y2.comp = {jet({}), jet({{{0, 0, 0}, Rat(1)}}),
               jet({{{2, 0, 0}, Rat(1)}, {{0, 1, 0}, Rat(1)}, {{3, 0, 0}, Rat(1)}})};
    x.fields = {y1, y2};
    AdaptedFrame f = select_adapted_frame(x, 4);
    CCStructure nx = normalize_to_frame(x, f);
    ExponentialChart chart = build_exponential_chart(nx, *nx.frame, 9);

    std::vector<PolyVectorField> yj = frame_fields(nx, *nx.frame);
    CompiledFields fields(yj, f.weights);
    IntegrateOptions opt;
    opt.step = 1e-4;

    std::mt19937_64 rng(2718);
    for (int c = 0; c < 5; ++c) {
        std::vector<double> u(3);
        for (auto& v : u) v = ((rng() % 2000) / 1000.0 - 1.0) * 0.1;
        Control h{3, {0.0, 1.0}, {u}, false};
        HorizontalCurve flow = integrate(fields, h, {0.0, 0.0, 0.0}, opt, {0.0, 1.0});
        for (int j = 0; j < 3; ++j)
            CHECK(chart.phi.comps[static_cast<size_t>(j)].eval(std::span<const double>(u)) ==
                  doctest::Approx(flow.states.back()[static_cast<size_t>(j)]).epsilon(1e-8));
    }
}

TEST_CASE("truncated (non-exact) input with insufficient order raises the order error") {
    // same structure as above but declared as a Taylor horizon of order 3:
    // determining the pushforward to weighted order 6 is impossible
    Weights ones{std::vector<int>{1, 1, 1}};
    auto jet = [&](std::vector<Term> ts) { return Jet::from_terms(3, ones, 3, std::move(ts)); };
    CCStructure x;
    x.n = 3;
    x.r = 2;
    x.exact = false;
    PolyVectorField y1, y2;
    y1.comp = {jet({{{0, 0, 0}, Rat(1)}}), jet({}), jet({})};
    y2.comp = {jet({}), jet({{{0, 0, 0}, Rat(1)}}), jet({{{2, 0, 0}, Rat(1)}, {{0, 1, 0}, Rat(1)}})};
    x.fields = {y1, y2};

    AdaptedFrame f = select_adapted_frame(x, 4);
    try {
        to_exponential_coordinates(x, f, 6);
        FAIL("expected OrderError");
    } catch (const OrderError& e) {
        CHECK(e.required_order > 3);  // strictly more data than the declared horizon
    }
}

TEST_CASE("truncated Heisenberg data of order 2s transforms to order s") {
    CCStructure x = polarized_heisenberg();
    x.exact = false;
    for (auto& fld : x.fields)
        for (auto& c : fld.comp) c = c.truncated(4);  // 2s = 4 in unit weights
    AdaptedFrame f = select_adapted_frame(x, 4);
    CCStructure e = to_exponential_coordinates(x, f, 2);  // order s
    CHECK(e.fields[0].comp[2] == jet_of(3, f.weights, 2, {{{0, 1, 0}, Rat(-1, 2)}}));
}
