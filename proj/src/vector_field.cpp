#include "cct/vector_field.hpp"

#include <algorithm>

namespace cct {

PolyVectorField PolyVectorField::zero(int nvars, const Weights& w, int order) {
    PolyVectorField v;
    v.comp.assign(nvars, Jet(nvars, w, order));
    return v;
}

PolyVectorField PolyVectorField::coordinate(int j, int nvars, const Weights& w, int order) {
    PolyVectorField v = zero(nvars, w, order);
    v.comp[j] = Jet::constant(nvars, w, order, Rat(1));
    return v;
}

void PolyVectorField::check_shape() const {
    if (comp.empty()) throw ShapeError("empty vector field");
    for (const auto& c : comp)
        if (!c.same_shape(comp[0])) throw ShapeError("vector field components have mixed shapes");
    if (comp[0].nvars() != nvars()) throw ShapeError("vector field must have one component per variable");
}

bool PolyVectorField::same_shape(const PolyVectorField& o) const {
    return comp.size() == o.comp.size() && !comp.empty() && comp[0].same_shape(o.comp[0]);
}

bool PolyVectorField::is_zero() const {
    return std::all_of(comp.begin(), comp.end(), [](const Jet& j) { return j.is_zero(); });
}

long PolyVectorField::content_wdeg() const {
    long d = 0;
    for (const auto& c : comp) d = std::max(d, c.top_wdeg());
    return d;
}

RatVec PolyVectorField::eval(const RatVec& x) const {
    RatVec out;
    out.reserve(comp.size());
    for (const auto& c : comp) out.push_back(c.eval(x));
    return out;
}

void PolyVectorField::eval(std::span<const double> x, std::span<double> out) const {
    for (size_t j = 0; j < comp.size(); ++j) out[j] = comp[j].eval(x);
}

RatVec PolyVectorField::at_zero() const {
    RatVec out;
    out.reserve(comp.size());
    for (const auto& c : comp) out.push_back(c.at_zero());
    return out;
}

PolyVectorField PolyVectorField::operator+(const PolyVectorField& o) const {
    PolyVectorField r;
    r.comp.reserve(comp.size());
    for (size_t j = 0; j < comp.size(); ++j) r.comp.push_back(add_mixed(comp[j], o.comp[j]));
    return r;
}

PolyVectorField PolyVectorField::operator-() const {
    PolyVectorField r;
    r.comp.reserve(comp.size());
    for (const auto& c : comp) r.comp.push_back(-c);
    return r;
}

PolyVectorField PolyVectorField::scaled(const Rat& c) const {
    PolyVectorField r;
    r.comp.reserve(comp.size());
    for (const auto& j : comp) r.comp.push_back(j.scaled(c));
    return r;
}

PolyVectorField PolyVectorField::truncated(int order) const {
    PolyVectorField r;
    r.comp.reserve(comp.size());
    for (const auto& j : comp) r.comp.push_back(j.truncated(order));
    return r;
}

PolyVectorField PolyVectorField::declared(int order) const {
    PolyVectorField r;
    r.comp.reserve(comp.size());
    for (const auto& j : comp) r.comp.push_back(j.declared(order));
    return r;
}

bool PolyVectorField::operator==(const PolyVectorField& o) const {
    if (comp.size() != o.comp.size()) return false;
    for (size_t j = 0; j < comp.size(); ++j)
        if (!(comp[j] == o.comp[j])) return false;
    return true;
}

Jet PolyVectorField::apply(const Jet& f) const {
    Jet acc(f.nvars(), f.weights(), kOrderInf);
    bool any = false;
    for (size_t l = 0; l < comp.size(); ++l) {
        if (comp[l].is_zero()) continue;
        Jet df = f.derivative(static_cast<int>(l));
        Jet t = mul_mixed(comp[l], df);
        acc = any ? add_mixed(acc, t) : t;
        any = true;
    }
    if (!any) {
        // zero field: exact zero at f's order
        return Jet(f.nvars(), f.weights(), f.order());
    }
    return acc;
}

PolyVectorField lie_bracket(const PolyVectorField& v, const PolyVectorField& w) {
    v.check_shape();
    w.check_shape();
    if (!v.same_shape(w)) throw ShapeError("lie_bracket: operand shapes differ");
    long need = v.content_wdeg() + w.content_wdeg() - 1;
    if (!order_is_exact(v.order()) && need > v.order())
        throw OrderError("lie_bracket: truncation order too low for an exact bracket",
                         static_cast<int>(need));
    // nothing can truncate below the checked bound, so the input order is kept
    return lie_bracket_honest(v, w).declared(v.order());
}

PolyVectorField lie_bracket_honest(const PolyVectorField& v, const PolyVectorField& w) {
    PolyVectorField r;
    r.comp.reserve(v.comp.size());
    int out = kOrderInf;
    for (size_t j = 0; j < v.comp.size(); ++j) {
        Jet t = add_mixed(v.apply(w.comp[j]), -w.apply(v.comp[j]));
        out = std::min(out, t.order());
        r.comp.push_back(std::move(t));
    }
    for (auto& c : r.comp) c = c.truncated(out);
    return r;
}

std::vector<Jet> picard_flow(const std::vector<Jet>& field_comps, const std::vector<Jet>& initial,
                             const std::vector<Jet>& params, int tvar, int max_rounds) {
    const size_t n = field_comps.size();
    if (initial.size() != n) throw ShapeError("picard_flow: initial state dimension mismatch");

    std::vector<Jet> state = initial;
    for (int round = 0; round <= max_rounds; ++round) {
        JetMap g;
        g.comps = state;
        for (const auto& p : params) g.comps.push_back(p);
        std::vector<Jet> next;
        next.reserve(n);
        bool stable = true;
        for (size_t j = 0; j < n; ++j) {
            Jet rhs = compose_series(field_comps[j], g, true, true);
            Jet nj = add_mixed(initial[j], rhs.antiderivative(tvar));
            if (!(nj == state[j])) stable = false;
            next.push_back(std::move(nj));
        }
        if (stable) return state;
        state = std::move(next);
    }
    throw StructureError("picard_flow: no fixed point within the iteration bound (field not weight-triangular?)");
}

RatMat evaluation_matrix(const std::vector<PolyVectorField>& fields) {
    if (fields.empty()) throw ShapeError("no fields");
    int n = fields[0].nvars();
    RatMat m(static_cast<int>(fields.size()), n);
    for (size_t i = 0; i < fields.size(); ++i) {
        RatVec v = fields[i].at_zero();
        for (int j = 0; j < n; ++j) m.at(static_cast<int>(i), j) = v[j];
    }
    return m;
}

}  // namespace cct
