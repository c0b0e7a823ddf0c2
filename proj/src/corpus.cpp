#include "cct/corpus.hpp"

#include <cmath>

#include "cct/chart.hpp"

namespace cct {

Control random_arclength_control(std::mt19937_64& rng, int r, double T, int max_segments) {
    int segs = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_segments));
    std::vector<double> grid;
    grid.push_back(0.0);
    for (int q = 1; q < segs; ++q) grid.push_back(T * (q + (rng() % 1000) / 2000.0) / segs);
    grid.push_back(T);
    std::vector<std::vector<double>> values;
    for (int q = 0; q < segs; ++q) {
        std::vector<double> v(static_cast<size_t>(r));
        double norm = 0;
        while (norm < 1e-6) {
            norm = 0;
            for (int i = 0; i < r; ++i) {
                double u1 = ((rng() % 100000) + 0.5) / 100000.0;
                double u2 = ((rng() % 100000) + 0.5) / 100000.0;
                v[static_cast<size_t>(i)] = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
                norm += v[static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
            }
            norm = std::sqrt(norm);
        }
        for (auto& x : v) x /= norm;
        values.push_back(std::move(v));
    }
    return Control::make_arclength(r, std::move(grid), std::move(values));
}

Rat random_rational(std::mt19937_64& rng, int num_bound, int den_bound) {
    long num = static_cast<long>(rng() % static_cast<unsigned>(2 * num_bound + 1)) - num_bound;
    long den = 1 + static_cast<long>(rng() % static_cast<unsigned>(den_bound));
    Rat q(num, den);
    q.canonicalize();
    return q;
}

namespace {

// random monomials over variables < j_max with weighted degree in [lo, hi]
std::vector<Term> random_terms(std::mt19937_64& rng, int nvars, const Weights& fw, int var_cap,
                               long lo, long hi, int count) {
    std::vector<Term> out;
    for (int c = 0; c < count; ++c) {
        std::vector<int> exp(static_cast<size_t>(nvars), 0);
        long deg = 0;
        for (int tries = 0; tries < 64 && deg < lo; ++tries) {
            int v = static_cast<int>(rng() % static_cast<unsigned>(std::max(1, var_cap)));
            if (deg + fw[v] > hi) continue;
            exp[static_cast<size_t>(v)] += 1;
            deg += fw[v];
        }
        if (deg < lo || deg > hi) continue;
        Rat coef = random_rational(rng, 3, 4);
        if (coef == 0) continue;
        out.push_back({std::move(exp), coef});
    }
    return out;
}

}  // namespace

CCStructure perturbed_structure(const CCStructure& base, const Weights& fw, std::mt19937_64& rng) {
    base.validate();
    const int n = base.n;
    const Weights& ones = base.fields[0].weights();

    // triangular diffeomorphism x = phi(u): phi_j = u_j + (terms in u_1..u_{j-1}
    // of weighted degree >= w_j); its jacobian is unipotent, so the conjugated
    // structure stays polynomial
    JetMap phi;
    for (int j = 0; j < n; ++j) {
        std::vector<Term> ts;
        std::vector<int> e(static_cast<size_t>(n), 0);
        e[static_cast<size_t>(j)] = 1;
        ts.push_back({e, Rat(1)});
        if (j > 0) {
            auto extra = random_terms(rng, n, fw, j, fw[j], fw[j] + 1, 2);
            // keep the linear part exactly the identity
            for (auto& t : extra) {
                int total = 0;
                for (int x : t.exp) total += x;
                if (total >= 2) ts.push_back(std::move(t));
            }
        }
        phi.comps.push_back(Jet::from_terms(n, ones, kOrderInf, std::move(ts)));
    }

    std::vector<PolyVectorField> conj = pushforward_fields(base.fields, phi, 4 * fw.step(), true);

    // additive remainder-type perturbation: terms of weighted degree >= w_j
    CCStructure out;
    out.n = n;
    out.r = base.r;
    out.exact = true;
    for (int i = 0; i < base.r; ++i) {
        PolyVectorField f = conj[static_cast<size_t>(i)].declared(kOrderInf);
        for (int j = 0; j < n; ++j) {
            auto extra = random_terms(rng, n, fw, n, fw[j], fw[j] + 2, 1);
            for (auto& t : extra) {
                Rat small = t.coef / 4;
                f.comp[static_cast<size_t>(j)] = add_mixed(
                    f.comp[static_cast<size_t>(j)],
                    Jet::from_terms(n, ones, kOrderInf, {{t.exp, small}}));
            }
        }
        out.fields.push_back(std::move(f));
    }
    out.validate();
    return out;
}

}  // namespace cct
