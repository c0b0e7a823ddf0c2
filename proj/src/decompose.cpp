#include "cct/decompose.hpp"

namespace cct {

DecomposedStructure decompose_graded(const CCStructure& xexp, const AdaptedFrame& f) {
    if (!xexp.frame) throw DomainError("decompose: structure carries no frame");
    const int n = xexp.n, r = xexp.r;
    const Weights& w = f.weights;

    if (!(xexp.frame->weights == f.weights) || !(xexp.frame->words == f.words))
        throw DomainError("decompose: frame does not match the structure's frame");
    DecomposedStructure d;
    d.base = xexp;
    d.weights = w;
    d.p.assign(static_cast<size_t>(r), {});
    d.rjet.assign(static_cast<size_t>(r), {});

    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < n; ++j) {
            const Jet& a = xexp.fields[static_cast<size_t>(i)].comp[static_cast<size_t>(j)];
            const int target = w[j] - w[i];

            std::vector<Term> pt, rt;
            for (const auto& t : a.terms()) {
                long deg = w.wdeg(t.exp);
                if (target >= 0 && deg == target)
                    pt.push_back(t);
                else
                    rt.push_back(t);
            }
            Jet pj = Jet::from_terms(n, w, a.order(), std::move(pt));
            Jet rj = Jet::from_terms(n, w, a.order(), std::move(rt));

            // (ii): the degree-0 part must be the Kronecker delta whenever
            // w_j <= w_i; this is where non-exponential inputs fail
            if (w[j] <= w[i]) {
                Jet expected = Jet::constant(n, w, a.order(), Rat(i == j ? 1 : 0));
                if (!(pj == expected))
                    throw DecompositionError("decompose: p_" + std::to_string(i + 1) + std::to_string(j + 1) +
                                                 " != delta_ij for w_j <= w_i",
                                             "(ii)");
            }
            // (iii): remainder vanishes at 0
            if (rj.at_zero() != 0)
                throw DecompositionError("decompose: r_" + std::to_string(i + 1) + std::to_string(j + 1) +
                                             "(0) != 0",
                                         "(iii)");
            // (iv): remainder strictly above the homogeneous degree; a term
            // below it means a_ij is not O(||x||^{w_j - w_i})
            if (rj.min_wdeg() <= target)
                throw DecompositionError("decompose: r_" + std::to_string(i + 1) + std::to_string(j + 1) +
                                             " carries weighted degree <= " + std::to_string(target),
                                         "(iv)");
            // (i) holds by extraction; keep an explicit certificate anyway
            for (const auto& t : pj.terms())
                if (w.wdeg(t.exp) != target)
                    throw DecompositionError("decompose: p_ij not homogeneous", "(i)");

            d.p[static_cast<size_t>(i)].push_back(std::move(pj));
            d.rjet[static_cast<size_t>(i)].push_back(std::move(rj));
        }
    }
    return d;
}

bool is_delta_homogeneous(const PolyVectorField& v, const Weights& w, int degree) {
    for (size_t j = 0; j < v.comp.size(); ++j)
        for (const auto& t : v.comp[j].terms())
            if (w.wdeg(t.exp) != w[static_cast<int>(j)] - degree) return false;
    return true;
}

Jet field_matrix_det(const std::vector<PolyVectorField>& fields) {
    const int n = static_cast<int>(fields.size());
    // cofactor expansion; n stays small for every supported structure
    std::vector<int> cols(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) cols[static_cast<size_t>(j)] = j;

    auto rec = [&](auto&& self, int row, std::vector<int>& free_cols) -> Jet {
        const Jet& sample = fields[0].comp[0];
        if (free_cols.empty()) return Jet::constant(sample.nvars(), sample.weights(), sample.order(), Rat(1));
        Jet acc(sample.nvars(), sample.weights(), sample.order());
        for (size_t k = 0; k < free_cols.size(); ++k) {
            int col = free_cols[k];
            const Jet& entry = fields[static_cast<size_t>(row)].comp[static_cast<size_t>(col)];
            if (entry.is_zero()) continue;
            std::vector<int> rest = free_cols;
            rest.erase(rest.begin() + static_cast<long>(k));
            Jet minor = self(self, row + 1, rest);
            Jet t = mul_mixed(entry, minor);
            if (k % 2 == 1) t = -t;
            acc = add_mixed(acc, t);
        }
        return acc.declared(sample.order());
    };
    return rec(rec, 0, cols);
}

NilpotentStructure nilpotent_approximation(const DecomposedStructure& d) {
    const int n = d.n(), r = d.rank();
    const Weights& w = d.weights;
    const int s = d.step();

    NilpotentStructure ns;
    ns.weights = w;
    ns.step = s;
    ns.words = d.base.frame->words;

    for (int i = 0; i < r; ++i) {
        PolyVectorField v;
        // homogeneous parts are finite polynomials known exactly
        for (int j = 0; j < n; ++j) v.comp.push_back(d.p[static_cast<size_t>(i)][static_cast<size_t>(j)].declared(kOrderInf));
        if (!is_delta_homogeneous(v, w, 1))
            throw StructureError("nilpotent approximation: generator " + std::to_string(i + 1) +
                                 " is not delta-homogeneous of degree 1");
        ns.fields_inf.push_back(std::move(v));
    }

    CCStructure xinf = ns.as_structure();
    for (const auto& word : ns.words) ns.frame_inf.push_back(evaluate_word(xinf, word));

    // brackets of length step+1 vanish identically; right-nested words of
    // that exact length are enough (Jacobi reduces everything else to them)
    std::vector<int> letters(static_cast<size_t>(s) + 1, 1);
    while (true) {
        BracketWord word{letters};
        if (!evaluate_word(xinf, word).is_zero())
            throw StructureError("nilpotent approximation: bracket word " + word.str() +
                                 " of length step+1 does not vanish");
        int pos = s;
        while (pos >= 0 && letters[static_cast<size_t>(pos)] == r) {
            letters[static_cast<size_t>(pos)] = 1;
            --pos;
        }
        if (pos < 0) break;
        letters[static_cast<size_t>(pos)] += 1;
    }

    Jet det = field_matrix_det(ns.frame_inf);
    if (det.is_zero() || det.top_wdeg() != 0)
        throw StructureError("nilpotent approximation: frame determinant is not a nonzero constant");
    ns.frame_det = det.at_zero();
    return ns;
}

CCStructure NilpotentStructure::as_structure() const {
    CCStructure x;
    x.n = static_cast<int>(weights.n());
    x.r = static_cast<int>(fields_inf.size());
    x.fields = fields_inf;
    x.exact = true;
    AdaptedFrame f;
    f.words = words;
    f.weights = weights;
    f.step = step;
    f.basis_at_zero = RatMat::identity(x.n);
    x.frame = std::move(f);
    return x;
}

std::vector<PolyVectorField> rescale_structure(const DecomposedStructure& d, const Rat& lambda) {
    if (lambda <= 0) throw DomainError("rescale: lambda must be positive");
    const Weights& w = d.weights;
    std::vector<PolyVectorField> out;
    out.reserve(static_cast<size_t>(d.rank()));
    for (int i = 0; i < d.rank(); ++i) {
        const PolyVectorField& a = d.base.fields[static_cast<size_t>(i)];
        PolyVectorField v;
        for (int j = 0; j < d.n(); ++j) {
            std::vector<Term> ts;
            for (const auto& t : a.comp[static_cast<size_t>(j)].terms()) {
                long e = w[j] - 1 - w.wdeg(t.exp);
                ts.push_back({t.exp, t.coef * rat_pow(lambda, e)});
            }
            v.comp.push_back(Jet::from_terms(d.n(), w, a.comp[static_cast<size_t>(j)].order(), std::move(ts)));
        }
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace cct
