#include "cct/free_lie.hpp"

#include <functional>

namespace cct {

namespace {

Rat factorial(int k) {
    Rat f(1);
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

void check_same_basis(const FreeLieElement& a, const FreeLieElement& b) {
    if (!a.basis || !b.basis || a.basis->rank() != b.basis->rank() || a.basis->step() != b.basis->step())
        throw ShapeError("free Lie elements over different bases");
}

// Enumerates the index tuples of the truncated BCH series; the callback
// receives ((k_1,l_1),...,(k_p,l_p)) and the rational coefficient
// (-1)^{p+1}/p / (prod k_i! l_i! * total).
void for_each_bch_tuple(int step,
                        const std::function<void(const std::vector<std::pair<int, int>>&, const Rat&)>& cb) {
    std::vector<std::pair<int, int>> tuple;
    std::function<void(int)> rec = [&](int total) {
        if (!tuple.empty()) {
            int p = static_cast<int>(tuple.size());
            Rat denom(total);
            for (auto [k, l] : tuple) denom *= factorial(k) * factorial(l);
            Rat coef = Rat((p % 2 == 1) ? 1 : -1, p) / denom;
            cb(tuple, coef);
        }
        for (int m = 1; total + m <= step; ++m)
            for (int k = 0; k <= m; ++k) {
                tuple.emplace_back(k, m - k);
                rec(total + m);
                tuple.pop_back();
            }
    };
    rec(0);
}

// letters: false = first argument, true = second
std::vector<bool> tuple_letters(const std::vector<std::pair<int, int>>& tuple) {
    std::vector<bool> seq;
    for (auto [k, l] : tuple) {
        seq.insert(seq.end(), static_cast<size_t>(k), false);
        seq.insert(seq.end(), static_cast<size_t>(l), true);
    }
    return seq;
}

}  // namespace

FreeLieElement FreeLieElement::zero(std::shared_ptr<const HallBasis> b) {
    FreeLieElement f;
    f.coef.assign(static_cast<size_t>(b->dim()), Rat(0));
    f.basis = std::move(b);
    return f;
}

FreeLieElement FreeLieElement::generator(std::shared_ptr<const HallBasis> b, int i) {
    if (i < 0 || i >= b->rank()) throw DomainError("generator index out of range");
    FreeLieElement f = zero(std::move(b));
    f.coef[static_cast<size_t>(i)] = 1;
    return f;
}

bool FreeLieElement::is_zero() const { return cct::is_zero(coef); }

FreeLieElement FreeLieElement::operator+(const FreeLieElement& o) const {
    check_same_basis(*this, o);
    FreeLieElement f = *this;
    for (size_t k = 0; k < coef.size(); ++k) f.coef[k] += o.coef[k];
    return f;
}

FreeLieElement FreeLieElement::operator-() const {
    FreeLieElement f = *this;
    for (auto& c : f.coef) c = -c;
    return f;
}

FreeLieElement FreeLieElement::scaled(const Rat& c) const {
    FreeLieElement f = *this;
    for (auto& x : f.coef) x *= c;
    return f;
}

bool FreeLieElement::operator==(const FreeLieElement& o) const {
    if (!basis || !o.basis || basis->rank() != o.basis->rank() || basis->step() != o.basis->step()) return false;
    return coef == o.coef;
}

FreeLieElement free_bracket(const FreeLieElement& a, const FreeLieElement& b) {
    check_same_basis(a, b);
    const HallBasis& hb = *a.basis;
    FreeLieElement out = FreeLieElement::zero(a.basis);
    for (int i = 0; i < hb.dim(); ++i) {
        if (a.coef[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j < hb.dim(); ++j) {
            if (b.coef[static_cast<size_t>(j)] == 0 || i == j) continue;
            if (hb.layer(i) + hb.layer(j) > hb.step()) continue;
            Rat c = a.coef[static_cast<size_t>(i)] * b.coef[static_cast<size_t>(j)];
            RatVec sc = hb.bracket(i, j);
            for (int m = 0; m < hb.dim(); ++m)
                if (sc[static_cast<size_t>(m)] != 0) out.coef[static_cast<size_t>(m)] += c * sc[static_cast<size_t>(m)];
        }
    }
    return out;
}

FreeLieElement bch(const FreeLieElement& a, const FreeLieElement& b) {
    check_same_basis(a, b);
    FreeLieElement out = FreeLieElement::zero(a.basis);
    for_each_bch_tuple(a.basis->step(), [&](const std::vector<std::pair<int, int>>& tuple, const Rat& coef) {
        std::vector<bool> seq = tuple_letters(tuple);
        FreeLieElement acc = seq.back() ? b : a;
        for (int q = static_cast<int>(seq.size()) - 2; q >= 0; --q) {
            if (acc.is_zero()) return;
            acc = free_bracket(seq[static_cast<size_t>(q)] ? b : a, acc);
        }
        if (acc.is_zero()) return;
        out = out + acc.scaled(coef);
    });
    return out;
}

FreeLieElement group_dilate(const FreeLieElement& f, const Rat& lambda) {
    if (lambda <= 0) throw DomainError("group dilation needs lambda > 0");
    FreeLieElement out = f;
    for (int k = 0; k < f.basis->dim(); ++k)
        out.coef[static_cast<size_t>(k)] *= rat_pow(lambda, f.basis->layer(k));
    return out;
}

namespace {

// free Lie element with jet coefficients (symbolic group point)
using SymElt = std::vector<Jet>;

SymElt sym_zero(const HallBasis& hb, const Weights& cw) {
    return SymElt(static_cast<size_t>(hb.dim()), Jet(hb.dim(), cw, kOrderInf));
}

SymElt sym_bracket(const HallBasis& hb, const Weights& cw, const SymElt& a, const SymElt& b) {
    SymElt out = sym_zero(hb, cw);
    for (int i = 0; i < hb.dim(); ++i) {
        if (a[static_cast<size_t>(i)].is_zero()) continue;
        for (int j = 0; j < hb.dim(); ++j) {
            if (b[static_cast<size_t>(j)].is_zero() || i == j) continue;
            if (hb.layer(i) + hb.layer(j) > hb.step()) continue;
            Jet c = mul_mixed(a[static_cast<size_t>(i)], b[static_cast<size_t>(j)]);
            if (c.is_zero()) continue;
            RatVec sc = hb.bracket(i, j);
            for (int m = 0; m < hb.dim(); ++m)
                if (sc[static_cast<size_t>(m)] != 0)
                    out[static_cast<size_t>(m)] = add_mixed(out[static_cast<size_t>(m)], c.scaled(sc[static_cast<size_t>(m)]));
        }
    }
    return out;
}

}  // namespace

LiftedStructure build_psi(std::shared_ptr<const HallBasis> basis, const NilpotentStructure& target) {
    if (target.fields_inf.size() != static_cast<size_t>(basis->rank()))
        throw ShapeError("build_psi: target rank differs from the basis rank");
    if (target.step > basis->step())
        throw DomainError("build_psi: target step exceeds the basis step");

    LiftedStructure l;
    l.basis = basis;
    l.target = target;
    const HallBasis& hb = *basis;
    const int nf = hb.dim();

    // psi through the Hall trees
    for (int k = 0; k < nf; ++k) {
        if (hb.is_generator(k))
            l.psi_images.push_back(target.fields_inf[static_cast<size_t>(k)]);
        else
            l.psi_images.push_back(lie_bracket(l.psi_images[static_cast<size_t>(hb.left(k))],
                                               l.psi_images[static_cast<size_t>(hb.right(k))]));
    }

    // homomorphism property on the structure constants, exactly
    const int n = target.weights.n();
    for (int i = 0; i < nf; ++i)
        for (int j = i + 1; j < nf; ++j) {
            PolyVectorField lhs = lie_bracket(l.psi_images[static_cast<size_t>(i)], l.psi_images[static_cast<size_t>(j)]);
            PolyVectorField rhs = PolyVectorField::zero(n, target.weights, kOrderInf);
            RatVec sc = hb.bracket(i, j);
            for (int m = 0; m < nf; ++m)
                if (sc[static_cast<size_t>(m)] != 0)
                    rhs = rhs + l.psi_images[static_cast<size_t>(m)].scaled(sc[static_cast<size_t>(m)]);
            if (!(lhs == rhs))
                throw StructureError("build_psi: bracket relations violated at (" + std::to_string(i + 1) +
                                     "," + std::to_string(j + 1) + ")");
        }

    std::vector<int> lw;
    for (int k = 0; k < nf; ++k) lw.push_back(hb.layer(k));
    l.f_weights = Weights(lw);

    // left-invariant generator fields: G_i(A) = d/dt P(A, t W_i) |_{t=0},
    // i.e. the t-linear part of the BCH series (tuples with sum l_i = 1)
    for (int i = 0; i < hb.rank(); ++i) {
        SymElt a_sym = sym_zero(hb, l.f_weights);
        for (int m = 0; m < nf; ++m) a_sym[static_cast<size_t>(m)] = Jet::variable(m, nf, l.f_weights, kOrderInf);
        SymElt b_sym = sym_zero(hb, l.f_weights);
        b_sym[static_cast<size_t>(i)] = Jet::constant(nf, l.f_weights, kOrderInf, Rat(1));

        SymElt acc = sym_zero(hb, l.f_weights);
        for_each_bch_tuple(hb.step(), [&](const std::vector<std::pair<int, int>>& tuple, const Rat& coef) {
            int lsum = 0;
            for (auto [k, lv] : tuple) lsum += lv;
            if (lsum != 1) return;
            std::vector<bool> seq = tuple_letters(tuple);
            SymElt term = seq.back() ? b_sym : a_sym;
            for (int q = static_cast<int>(seq.size()) - 2; q >= 0; --q)
                term = sym_bracket(hb, l.f_weights, seq[static_cast<size_t>(q)] ? b_sym : a_sym, term);
            for (int m = 0; m < nf; ++m)
                acc[static_cast<size_t>(m)] = add_mixed(acc[static_cast<size_t>(m)], term[static_cast<size_t>(m)].scaled(coef));
        });
        PolyVectorField g;
        g.comp = std::move(acc);
        l.lift_fields.push_back(std::move(g));
    }

    // polynomial projection pi_inf: flow of psi(sum c_m W_m) from 0, time 1,
    // with symbolic coefficients c
    {
        std::vector<int> fw;  // field space: x_1..x_n, c_1..c_N
        for (int j = 0; j < n; ++j) fw.push_back(target.weights[j]);
        for (int m = 0; m < nf; ++m) fw.push_back(hb.layer(m));
        Weights field_w(fw);

        std::vector<int> aw;  // aux space: c_1..c_N, t
        for (int m = 0; m < nf; ++m) aw.push_back(hb.layer(m));
        aw.push_back(1);
        Weights aux_w(aw);
        const int aux_n = nf + 1;

        std::vector<Jet> field_comps;
        for (int j = 0; j < n; ++j) {
            Jet acc(n + nf, field_w, kOrderInf);
            for (int m = 0; m < nf; ++m) {
                const Jet& pj = l.psi_images[static_cast<size_t>(m)].comp[static_cast<size_t>(j)];
                if (pj.is_zero()) continue;
                std::vector<Term> ts;
                for (const auto& t : pj.terms()) {
                    std::vector<int> e(static_cast<size_t>(n + nf), 0);
                    for (int q = 0; q < n; ++q) e[static_cast<size_t>(q)] = t.exp[static_cast<size_t>(q)];
                    e[static_cast<size_t>(n + m)] = 1;
                    ts.push_back({std::move(e), t.coef});
                }
                acc = add_mixed(acc, Jet::from_terms(n + nf, field_w, kOrderInf, std::move(ts)));
            }
            field_comps.push_back(std::move(acc));
        }

        std::vector<Jet> initial(static_cast<size_t>(n), Jet(aux_n, aux_w, kOrderInf));
        std::vector<Jet> params;
        for (int m = 0; m < nf; ++m) params.push_back(Jet::variable(m, aux_n, aux_w, kOrderInf));

        std::vector<Jet> flow = picard_flow(field_comps, initial, params, nf, target.step + 2);

        // evaluate at t = 1 and drop the time variable
        Weights cw(std::vector<int>(aw.begin(), aw.end() - 1));
        for (int j = 0; j < n; ++j) {
            Jet at1 = flow[static_cast<size_t>(j)].partial_eval(nf, Rat(1));
            std::vector<Term> ts;
            for (const auto& t : at1.terms())
                ts.push_back({std::vector<int>(t.exp.begin(), t.exp.end() - 1), t.coef});
            l.pi_map.push_back(Jet::from_terms(nf, cw, kOrderInf, std::move(ts)));
        }
    }
    return l;
}

int LiftedStructure::pi_rank_at_zero() const {
    RatMat m = evaluation_matrix(psi_images);
    return m.rank();
}

RatVec generator_field(const LiftedStructure& l, int i, const FreeLieElement& at) {
    if (i < 1 || i > l.basis->rank()) throw DomainError("generator index out of range 1..r");
    RatVec out;
    out.reserve(static_cast<size_t>(l.dim_f()));
    for (const auto& c : l.lift_fields[static_cast<size_t>(i - 1)].comp) out.push_back(c.eval(at.coef));
    return out;
}

RatVec group_action(const RatVec& x, const FreeLieElement& f, const LiftedStructure& l) {
    const int n = l.target.weights.n();
    if (static_cast<int>(x.size()) != n) throw ShapeError("group_action: point dimension mismatch");

    PolyVectorField v = PolyVectorField::zero(n, l.target.weights, kOrderInf);
    for (int k = 0; k < l.dim_f(); ++k)
        if (f.coef[static_cast<size_t>(k)] != 0)
            v = v + l.psi_images[static_cast<size_t>(k)].scaled(f.coef[static_cast<size_t>(k)]);

    Weights aux_w(std::vector<int>{1});  // time only
    std::vector<Jet> initial;
    for (int j = 0; j < n; ++j) initial.push_back(Jet::constant(1, aux_w, kOrderInf, x[static_cast<size_t>(j)]));
    std::vector<Jet> flow = picard_flow(v.comp, initial, {}, 0, l.target.step + 2);

    RatVec out;
    out.reserve(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) out.push_back(flow[static_cast<size_t>(j)].partial_eval(0, Rat(1)).at_zero());
    return out;
}

RatVec project_pi(const FreeLieElement& f, const LiftedStructure& l) {
    RatVec zero(static_cast<size_t>(l.target.weights.n()), Rat(0));
    return group_action(zero, f, l);
}

namespace {

// Ordered list of layer-one exponential factors whose product equals
// exp(a W_k + R) with R supported in layers above layer(k): a generator is
// atomic, a Hall word [u,v] becomes the genuine group commutator
// G H G^{-1} H^{-1} of the chains of u and v (inverses reverse the chain and
// negate the times, so the log has no linear leftovers). The junk R is
// absorbed later by the ascending pass below.
void commutator_chain(const HallBasis& hb, int k, const Rat& a, std::vector<std::pair<int, Rat>>& out) {
    if (hb.is_generator(k)) {
        out.emplace_back(k + 1, a);
        return;
    }
    int u = hb.left(k), v = hb.right(k);
    std::vector<std::pair<int, Rat>> cu, cv;
    commutator_chain(hb, u, Rat(1), cu);
    commutator_chain(hb, v, a, cv);
    out.insert(out.end(), cu.begin(), cu.end());
    out.insert(out.end(), cv.begin(), cv.end());
    for (size_t q = cu.size(); q-- > 0;) out.emplace_back(cu[q].first, -cu[q].second);
    for (size_t q = cv.size(); q-- > 0;) out.emplace_back(cv[q].first, -cv[q].second);
}

}  // namespace

std::vector<std::pair<int, Rat>> layer_one_factorization(const FreeLieElement& f) {
    const HallBasis& hb = *f.basis;
    std::vector<std::pair<int, Rat>> out;
    // one ascending pass: appending the chain for W_k zeroes the k-th
    // coefficient of g^{-1} f and leaves everything below and beside it alone
    FreeLieElement g_log = FreeLieElement::zero(f.basis);
    for (int k = 0; k < hb.dim(); ++k) {
        FreeLieElement rem = bch(-g_log, f);
        Rat a = rem.coef[static_cast<size_t>(k)];
        if (a == 0) continue;
        std::vector<std::pair<int, Rat>> chain;
        commutator_chain(hb, k, a, chain);
        for (const auto& [i, t] : chain)
            g_log = bch(g_log, FreeLieElement::generator(f.basis, i - 1).scaled(t));
        out.insert(out.end(), chain.begin(), chain.end());
    }
    if (!(g_log == f)) throw StructureError("layer-one factorization failed to reproduce the element");
    return out;
}

FreeLieElement product_of_exponentials(std::shared_ptr<const HallBasis> b,
                                       const std::vector<std::pair<int, Rat>>& factors) {
    FreeLieElement acc = FreeLieElement::zero(b);
    for (const auto& [i, t] : factors) {
        FreeLieElement g = FreeLieElement::generator(b, i - 1).scaled(t);
        acc = bch(acc, g);
    }
    return acc;
}

}  // namespace cct
