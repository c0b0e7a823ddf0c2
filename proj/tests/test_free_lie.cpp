#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cct/free_lie.hpp"
#include "test_util.hpp"

using namespace cct;
using namespace cct::testing;

namespace {

LiftedStructure heisenberg_lift(int basis_step = 2) {
    Pipeline p = pipeline(heisenberg());
    return build_psi(HallBasis::build(2, basis_step), p.ns);
}

LiftedStructure engel_lift() {
    Pipeline p = pipeline(engel());
    return build_psi(HallBasis::build(2, 3), p.ns);
}

FreeLieElement elt(std::shared_ptr<const HallBasis> b, RatVec coef) {
    FreeLieElement f = FreeLieElement::zero(std::move(b));
    f.coef = std::move(coef);
    return f;
}

}  // namespace

TEST_CASE("psi maps generators to the nilpotent fields and the Hall word to the bracket") {
    LiftedStructure l = heisenberg_lift();
    Pipeline p = pipeline(heisenberg());
    CHECK(l.psi_images[0] == p.ns.fields_inf[0]);
    CHECK(l.psi_images[1] == p.ns.fields_inf[1]);
    CHECK(l.psi_images[2] == PolyVectorField::coordinate(2, 3, p.frame.weights, kOrderInf));
}

TEST_CASE("psi kills the third layer over a step-2 target") {
    LiftedStructure l = heisenberg_lift(3);
    CHECK(l.psi_images[3].is_zero());
    CHECK(l.psi_images[4].is_zero());
}

TEST_CASE("psi rejects corrupted bracket relations") {
    // fake target whose 'generators' do not satisfy the nilpotent relations
    Weights w{std::vector<int>{1, 1}};
    NilpotentStructure fake;
    fake.weights = w;
    fake.step = 2;
    PolyVectorField v1 = PolyVectorField::coordinate(0, 2, w, kOrderInf);
    PolyVectorField v2 = PolyVectorField::zero(2, w, kOrderInf);
    v2.comp[0] = Jet::variable(0, 2, w, kOrderInf);  // x1 d1: not nilpotent of step 2
    fake.fields_inf = {v1, v2};
    CHECK_THROWS_AS(build_psi(HallBasis::build(2, 2), fake), StructureError);
}

TEST_CASE("psi requires rank and step compatibility") {
    Pipeline p = pipeline(engel());  // step 3
    CHECK_THROWS_AS(build_psi(HallBasis::build(2, 2), p.ns), DomainError);
    CHECK_THROWS_AS(build_psi(HallBasis::build(3, 3), p.ns), ShapeError);
}

TEST_CASE("group action: identity, single flows, BCH composition") {
    LiftedStructure l = heisenberg_lift();
    auto hb = l.basis;
    RatVec zero{Rat(0), Rat(0), Rat(0)};

    CHECK(group_action(zero, FreeLieElement::zero(hb), l) == zero);
    CHECK(group_action(zero, FreeLieElement::generator(hb, 0), l) == RatVec{Rat(1), Rat(0), Rat(0)});

    FreeLieElement prod = bch(FreeLieElement::generator(hb, 0), FreeLieElement::generator(hb, 1));
    CHECK(group_action(zero, prod, l) == RatVec{Rat(1), Rat(1), Rat(1, 2)});

    // flowing W1 then W2 equals acting by their product
    RatVec mid = group_action(zero, FreeLieElement::generator(hb, 0), l);
    CHECK(group_action(mid, FreeLieElement::generator(hb, 1), l) == RatVec{Rat(1), Rat(1), Rat(1, 2)});
}

TEST_CASE("action property on random rational data") {
    LiftedStructure l = engel_lift();
    auto hb = l.basis;
    std::mt19937_64 rng(123);
    for (int c = 0; c < 6; ++c) {
        FreeLieElement f = FreeLieElement::zero(hb), g = FreeLieElement::zero(hb);
        for (auto& x : f.coef) x = rnd_rat(rng, 2, 2);
        for (auto& x : g.coef) x = rnd_rat(rng, 2, 2);
        RatVec x0{rnd_rat(rng, 2, 3), rnd_rat(rng, 2, 3), rnd_rat(rng, 2, 3), rnd_rat(rng, 2, 3)};
        CHECK(group_action(group_action(x0, f, l), g, l) == group_action(x0, bch(f, g), l));
    }
}

TEST_CASE("projection: zero, Heisenberg bijection, Engel fibers") {
    LiftedStructure l = heisenberg_lift();
    CHECK(project_pi(FreeLieElement::zero(l.basis), l) == RatVec{Rat(0), Rat(0), Rat(0)});

    // Heisenberg with the (2,2) basis: pi is the identity in coordinates
    for (int j = 0; j < 3; ++j)
        CHECK(l.pi_map[static_cast<size_t>(j)] == Jet::variable(j, 3, l.f_weights, kOrderInf));
    CHECK(l.pi_rank_at_zero() == 3);

    LiftedStructure le = engel_lift();
    CHECK(le.dim_f() == 5);
    CHECK(le.pi_rank_at_zero() == 4);  // dim-5 group onto dim-4 target
    std::mt19937_64 rng(9);
    FreeLieElement f = FreeLieElement::zero(le.basis);
    for (auto& x : f.coef) x = rnd_rat(rng, 2, 2);
    CHECK(project_pi(f, le) == group_action(RatVec(4, Rat(0)), f, le));
}

TEST_CASE("generator fields: value at the origin and the step-2 affine formula") {
    LiftedStructure l = heisenberg_lift();
    auto hb = l.basis;
    // at the identity the field is the generator direction
    FreeLieElement origin = FreeLieElement::zero(hb);
    CHECK(generator_field(l, 1, origin) == RatVec{Rat(1), Rat(0), Rat(0)});
    CHECK(generator_field(l, 2, origin) == RatVec{Rat(0), Rat(1), Rat(0)});

    // at aW1 + bW2 the bracket component of W1's field is -b/2
    std::mt19937_64 rng(44);
    for (int c = 0; c < 8; ++c) {
        Rat a = rnd_rat(rng), b = rnd_rat(rng);
        FreeLieElement at = elt(hb, {a, b, Rat(0)});
        RatVec g1 = generator_field(l, 1, at);
        CHECK(g1 == RatVec{Rat(1), Rat(0), -b / 2});
        RatVec g2 = generator_field(l, 2, at);
        CHECK(g2 == RatVec{Rat(0), Rat(1), a / 2});
    }
    CHECK_THROWS_AS(generator_field(l, 0, origin), DomainError);
    CHECK_THROWS_AS(generator_field(l, 3, origin), DomainError);
}

TEST_CASE("projection intertwines generator fields with the target generators") {
    for (LiftedStructure l : {heisenberg_lift(), engel_lift()}) {
        const int n = l.target.weights.n();
        const int nf = l.dim_f();
        for (int i = 0; i < l.basis->rank(); ++i)
            for (int j = 0; j < n; ++j) {
                Jet lhs(nf, l.f_weights, kOrderInf);
                for (int m = 0; m < nf; ++m)
                    lhs = add_mixed(lhs, mul_mixed(l.pi_map[static_cast<size_t>(j)].derivative(m),
                                                   l.lift_fields[static_cast<size_t>(i)].comp[static_cast<size_t>(m)]));
                JetMap pim;
                pim.comps = l.pi_map;
                Jet rhs = compose_series(l.target.fields_inf[static_cast<size_t>(i)].comp[static_cast<size_t>(j)],
                                         pim, true);
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("projection commutes with dilations") {
    LiftedStructure l = engel_lift();
    // symbolic: each pi_j is homogeneous of degree w_j in the layer grading
    for (int j = 0; j < 4; ++j)
        for (const auto& t : l.pi_map[static_cast<size_t>(j)].terms())
            CHECK(l.f_weights.wdeg(t.exp) == l.target.weights[j]);

    std::mt19937_64 rng(15);
    for (int c = 0; c < 5; ++c) {
        FreeLieElement f = FreeLieElement::zero(l.basis);
        for (auto& x : f.coef) x = rnd_rat(rng, 2, 2);
        Rat lam(7, 3);
        CHECK(project_pi(group_dilate(f, lam), l) ==
              dilate_point(project_pi(f, l), lam, l.target.weights));
    }
}

TEST_CASE("dilated action identity on first-layer elements") {
    LiftedStructure l = heisenberg_lift();
    std::mt19937_64 rng(21);
    for (int c = 0; c < 6; ++c) {
        FreeLieElement a = elt(l.basis, {rnd_rat(rng), rnd_rat(rng), Rat(0)});
        RatVec x0{rnd_rat(rng, 2, 3), rnd_rat(rng, 2, 3), rnd_rat(rng, 2, 3)};
        Rat lam(5, 2);
        RatVec lhs = group_action(dilate_point(x0, lam, l.target.weights), a.scaled(lam), l);
        RatVec rhs = dilate_point(group_action(x0, a, l), lam, l.target.weights);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("layer-one generation witnesses reproduce every basis element") {
    for (auto rs : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {2, 4}}) {
        auto hb = HallBasis::build(rs.first, rs.second);
        for (int k = 0; k < hb->dim(); ++k) {
            FreeLieElement e = FreeLieElement::zero(hb);
            e.coef[static_cast<size_t>(k)] = Rat(5, 3);
            auto wit = layer_one_factorization(e);
            for (const auto& [i, t] : wit) {
                CHECK(i >= 1);
                CHECK(i <= rs.first);
            }
            CHECK(product_of_exponentials(hb, wit) == e);
        }
        std::mt19937_64 rng(1000 + rs.second);
        for (int c = 0; c < 4; ++c) {
            FreeLieElement f = FreeLieElement::zero(hb);
            for (auto& x : f.coef) x = rnd_rat(rng, 2, 2);
            CHECK(product_of_exponentials(hb, layer_one_factorization(f)) == f);
        }
    }
}
