#include "cct/chart.hpp"

#include <algorithm>

#include "cct/operator_series.hpp"

namespace cct {

CCStructure normalize_to_frame(const CCStructure& x, const AdaptedFrame& f) {
    x.validate();
    f.validate(x.r);
    const int n = x.n;
    const Weights& ones = x.fields[0].weights();
    const int in_order = x.fields[0].order();

    // v = M x with M = (columns Y_{J_i}(0))^{-1}; then values at 0 become e_i
    RatMat bcols(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) bcols.at(j, i) = f.basis_at_zero.at(i, j);
    RatMat m = bcols.inverse();

    // substitution x = M^{-1} v = bcols * v
    JetMap lin;
    for (int j = 0; j < n; ++j) {
        std::vector<Term> ts;
        for (int k = 0; k < n; ++k) {
            if (bcols.at(j, k) == 0) continue;
            std::vector<int> e(n, 0);
            e[k] = 1;
            ts.push_back({std::move(e), bcols.at(j, k)});
        }
        lin.comps.push_back(Jet::from_terms(n, ones, in_order, std::move(ts)));
    }

    CCStructure out;
    out.n = n;
    out.r = x.r;
    out.exact = x.exact;
    for (const auto& field : x.fields) {
        std::vector<Jet> subst;
        subst.reserve(field.comp.size());
        for (const auto& c : field.comp) subst.push_back(compose_series(c, lin, x.exact, true));
        PolyVectorField g;
        for (int j = 0; j < n; ++j) {
            Jet acc(n, ones, subst[0].order());
            for (int k = 0; k < n; ++k)
                if (m.at(j, k) != 0) acc = add_mixed(acc, subst[static_cast<size_t>(k)].scaled(m.at(j, k)));
            g.comp.push_back(std::move(acc));
        }
        out.fields.push_back(std::move(g));
    }

    // reinterpret the jets under the frame weights; for honestly truncated
    // inputs the total-degree horizon D is also a weighted horizon (unknown
    // monomials have weighted degree >= total degree > D)
    for (auto& field : out.fields)
        for (auto& c : field.comp) {
            int ord = x.exact ? kOrderInf : c.order();
            c = c.reweighted(f.weights, ord);
        }

    AdaptedFrame nf = f;
    nf.basis_at_zero = RatMat::identity(n);
    out.frame = std::move(nf);
    return out;
}

std::vector<PolyVectorField> frame_fields(const CCStructure& x, const AdaptedFrame& f) {
    std::vector<PolyVectorField> out;
    out.reserve(f.words.size());
    for (const auto& word : f.words) {
        PolyVectorField acc = x.fields[static_cast<size_t>(word.letters.back() - 1)];
        for (int q = word.length() - 2; q >= 0; --q)
            acc = lie_bracket_honest(x.fields[static_cast<size_t>(word.letters[static_cast<size_t>(q)] - 1)], acc);
        out.push_back(std::move(acc));
    }
    return out;
}

namespace {

bool frame_is_normalized(const CCStructure& x) {
    return x.frame && x.frame->basis_at_zero == RatMat::identity(x.n);
}

JetMap chart_map(const CCStructure& nx, const AdaptedFrame& f, int order) {
    const int n = nx.n;
    std::vector<PolyVectorField> yj = frame_fields(nx, f);

    JetMap phi;
    phi.comps.reserve(n);
    std::vector<OperatorTermPoly> state;
    state.reserve(n);
    for (int j = 0; j < n; ++j) {
        Jet xj = Jet::variable(j, n, f.weights, kOrderInf);
        state.push_back(operator_series_seed(xj, f.weights));
    }
    std::vector<Jet> acc(static_cast<size_t>(n), Jet(n, f.weights, order));
    const int input_order = nx.fields[0].order();

    // removal rate: applying the frame field Y_{J_i} (formal budget w_i) to a
    // monomial strips at most w_l - val(a_{il}) of weighted x-degree; the max
    // ratio bounds how much x-degree the remaining budget can still remove
    long rem_num = 1, rem_den = 1;
    for (size_t i = 0; i < yj.size(); ++i) {
        long wi = f.weights[static_cast<int>(i)];
        long ri = 0;
        for (int l = 0; l < n; ++l) {
            const Jet& a = yj[i].comp[static_cast<size_t>(l)];
            long mhat = std::min<long>(a.min_wdeg(), static_cast<long>(a.order()) + 1);
            ri = std::max(ri, f.weights[l] - std::min<long>(mhat, f.weights[l]));
        }
        if (ri * rem_den > rem_num * wi) {
            rem_num = ri;
            rem_den = wi;
        }
    }

    for (int k = 1; k <= order; ++k) {
        for (int j = 0; j < n; ++j) {
            state[static_cast<size_t>(j)] =
                state[static_cast<size_t>(j)].applied(yj, k, order, rem_num, rem_den);
            try {
                acc[static_cast<size_t>(j)] =
                    add_mixed(acc[static_cast<size_t>(j)], state[static_cast<size_t>(j)].at_x_zero(order)).declared(order);
            } catch (const OrderError& e) {
                throw OrderError("exponential chart to order " + std::to_string(order) +
                                     " is not determined by input jets of order " + std::to_string(input_order) +
                                     "; supply order >= " + std::to_string(input_order + e.required_order),
                                 input_order + e.required_order);
            }
        }
    }
    for (int j = 0; j < n; ++j) phi.comps.push_back(std::move(acc[static_cast<size_t>(j)]));

    // the normalization makes a_ij(0) = delta_ij, so the linear part is the identity
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            std::vector<int> e(n, 0);
            e[k] = 1;
            if (phi.comps[static_cast<size_t>(j)].coefficient(e) != Rat(k == j ? 1 : 0))
                throw StructureError("exponential chart: linear part is not the identity");
        }
    return phi;
}

}  // namespace

ExponentialChart build_exponential_chart(const CCStructure& x, const AdaptedFrame& f, int order) {
    if (order < f.step) throw DomainError("chart order must be >= the step");
    CCStructure nx = frame_is_normalized(x) ? x : normalize_to_frame(x, f);
    ExponentialChart chart;
    chart.order = order;
    chart.phi = chart_map(nx, *nx.frame, order);
    chart.phi_inv = jet_invert(chart.phi);
    return chart;
}

std::vector<PolyVectorField> pushforward_fields(const std::vector<PolyVectorField>& fields,
                                                const JetMap& phi, int out_order, bool fields_exact) {
    const int n = phi.m();
    const Weights& w = phi.comps[0].weights();

    // Jacobian dphi_j/du_l, split as identity + c
    std::vector<std::vector<Jet>> c(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
            Jet d = phi.comps[static_cast<size_t>(j)].derivative(l);
            if (j == l) d = add_mixed(d, Jet::constant(n, w, d.order(), Rat(-1)));
            c[static_cast<size_t>(j)].push_back(std::move(d));
        }

    std::vector<PolyVectorField> out;
    out.reserve(fields.size());
    for (const auto& field : fields) {
        std::vector<Jet> b;
        b.reserve(field.comp.size());
        for (const auto& comp : field.comp) b.push_back(compose_series(comp, phi, fields_exact));

        // solve (I + C) a~ = b by the terminating Neumann iteration
        std::vector<Jet> cur = b;
        const int max_it = std::max(out_order, n) + 1;
        for (int it = 0; it <= max_it; ++it) {
            std::vector<Jet> next;
            next.reserve(b.size());
            bool stable = true;
            for (int j = 0; j < n; ++j) {
                Jet acc = b[static_cast<size_t>(j)];
                for (int l = 0; l < n; ++l) {
                    const Jet& cjl = c[static_cast<size_t>(j)][static_cast<size_t>(l)];
                    if (cjl.is_zero()) continue;
                    acc = add_mixed(acc, -mul_mixed(cjl, cur[static_cast<size_t>(l)]));
                }
                if (!(acc == cur[static_cast<size_t>(j)])) stable = false;
                next.push_back(std::move(acc));
            }
            cur = std::move(next);
            if (stable) break;
        }

        int achieved = kOrderInf;
        for (const auto& j : cur) achieved = std::min(achieved, j.order());
        if (achieved < out_order)
            throw OrderError("pushforward: input jet order determines the result only to weighted order " +
                                 std::to_string(achieved) + ", need " + std::to_string(out_order) +
                                 "; supply input jets of order at least " +
                                 std::to_string(fields[0].order() + (out_order - achieved)),
                             fields[0].order() + (out_order - achieved));
        PolyVectorField v;
        // a genuinely polynomial pushforward (triangular map, exact inputs)
        // is kept exact rather than truncated
        for (auto& j : cur)
            v.comp.push_back(order_is_exact(achieved) ? j : j.truncated(out_order));
        out.push_back(std::move(v));
    }
    return out;
}

CCStructure to_exponential_coordinates(const CCStructure& x, const AdaptedFrame& f, int order) {
    if (order < f.step) throw DomainError("output order must be >= the step");
    CCStructure nx = frame_is_normalized(x) ? x : normalize_to_frame(x, f);

    // one extra weighted order on the chart: the Jacobian costs w_l <= s
    JetMap phi = chart_map(nx, *nx.frame, order + f.step);
    std::vector<PolyVectorField> pushed = pushforward_fields(nx.fields, phi, order, nx.exact);

    CCStructure out;
    out.n = nx.n;
    out.r = nx.r;
    out.fields = std::move(pushed);
    out.exact = order_is_exact(out.fields[0].order());
    out.frame = *nx.frame;

    // Eq-of-definition sanity: exponential coordinates give a_ij(0) = delta_ij
    for (int i = 0; i < out.r; ++i) {
        RatVec v = out.fields[static_cast<size_t>(i)].at_zero();
        for (int j = 0; j < out.n; ++j)
            if (v[static_cast<size_t>(j)] != Rat(i == j ? 1 : 0))
                throw StructureError("exponential coordinates: a_ij(0) != delta_ij");
    }
    return out;
}

}  // namespace cct
