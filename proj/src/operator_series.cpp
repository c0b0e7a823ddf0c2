#include "cct/operator_series.hpp"

namespace cct {

OperatorTermPoly OperatorTermPoly::applied(const std::vector<PolyVectorField>& fields, int k_next,
                                           long s_cap, long rem_num, long rem_den) const {
    OperatorTermPoly out;
    out.s_weights = s_weights;
    const Rat inv_k(1, k_next);
    const int m = static_cast<int>(fields.size());
    for (const auto& [sexp, psi] : coef) {
        if (psi.is_zero()) continue;
        const long x_wmax = psi.weights().step();
        for (int i = 0; i < m; ++i) {
            std::vector<int> e = sexp;
            e[i] += 1;
            const long sdeg = s_weights.wdeg(e);
            if (sdeg > s_cap) continue;
            const long cap = (s_cap - sdeg) * rem_num / rem_den;
            Jet src = psi.order() > cap + x_wmax ? psi.truncated(static_cast<int>(cap + x_wmax)) : psi;
            Jet t = fields[static_cast<size_t>(i)].apply(src).scaled(inv_k);
            if (t.order() > cap) t = t.truncated(static_cast<int>(cap));
            auto it = out.coef.find(e);
            if (it == out.coef.end())
                out.coef.emplace(std::move(e), std::move(t));
            else
                it->second = add_mixed(it->second, t);
        }
    }
    return out;
}

Jet OperatorTermPoly::at_x_zero(int order) const {
    const int m = s_weights.n();
    std::vector<Term> terms;
    for (const auto& [sexp, psi] : coef) {
        if (psi.order() < 0)
            throw OrderError("operator series: input jet order too low to determine the value at 0",
                             -psi.order());
        Rat c = psi.at_zero();
        if (c != 0) terms.push_back({sexp, c});
    }
    return Jet::from_terms(m, s_weights, order, std::move(terms));
}

OperatorTermPoly operator_series_seed(const Jet& psi, const Weights& s_weights) {
    OperatorTermPoly p;
    p.s_weights = s_weights;
    p.coef.emplace(std::vector<int>(s_weights.n(), 0), psi);
    return p;
}

Jet apply_operator_power(const std::vector<PolyVectorField>& fields, const Weights& s_weights,
                         const Jet& psi, int k) {
    if (k < 0) throw DomainError("apply_operator_power: k must be nonnegative");
    if (static_cast<int>(fields.size()) != s_weights.n())
        throw ShapeError("apply_operator_power: one formal letter per field required");
    for (const auto& f : fields) {
        f.check_shape();
        if (!f.comp[0].same_shape(psi)) throw ShapeError("apply_operator_power: field/jet shapes differ");
    }
    const long s_cap = static_cast<long>(k) * s_weights.step();
    const long wmax = psi.weights().step();
    OperatorTermPoly a = operator_series_seed(psi, s_weights);
    // generic removal bound: one application strips at most the max weight
    for (int q = 1; q <= k; ++q) a = a.applied(fields, q, s_cap, wmax, 1);
    return a.at_x_zero(static_cast<int>(s_cap));
}

}  // namespace cct
