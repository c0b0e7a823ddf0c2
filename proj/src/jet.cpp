#include "cct/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace cct {

Weights::Weights(std::vector<int> w) : w_(std::move(w)) {
    for (int x : w_)
        if (x <= 0) throw DomainError("weights must be positive");
}

Weights Weights::adapted(std::vector<int> w) {
    Weights r(std::move(w));
    if (r.n() == 0) throw DomainError("empty weight vector");
    if (r.w_.front() != 1) throw DomainError("w_1 must be 1");
    if (!std::is_sorted(r.w_.begin(), r.w_.end())) throw DomainError("weights must be nondecreasing");
    return r;
}

int Weights::step() const { return w_.empty() ? 1 : *std::max_element(w_.begin(), w_.end()); }

long Weights::wdeg(std::span<const int> alpha) const {
    long d = 0;
    for (size_t i = 0; i < alpha.size(); ++i) d += static_cast<long>(alpha[i]) * w_[i];
    return d;
}

namespace {

// graded lex: weighted degree first, then exponent lex
bool term_less(const Weights& w, const std::vector<int>& a, const std::vector<int>& b) {
    long da = w.wdeg(a), db = w.wdeg(b);
    if (da != db) return da < db;
    return a < b;
}

}  // namespace

Jet::Jet(int nvars, Weights weights, int order) : nvars_(nvars), weights_(std::move(weights)), order_(order) {
    if (weights_.n() != nvars_) throw ShapeError("weights length != nvars");
}

Jet Jet::constant(int nvars, const Weights& w, int order, const Rat& c) {
    Jet j(nvars, w, order);
    if (c != 0) j.terms_.push_back({std::vector<int>(nvars, 0), c});
    return j;
}

Jet Jet::variable(int i, int nvars, const Weights& w, int order) {
    if (i < 0 || i >= nvars) throw DomainError("variable index out of range");
    if (w[i] > order) throw DomainError("variable weight exceeds truncation order");
    Jet j(nvars, w, order);
    std::vector<int> e(nvars, 0);
    e[i] = 1;
    j.terms_.push_back({std::move(e), Rat(1)});
    return j;
}

Jet Jet::from_terms(int nvars, const Weights& w, int order, std::vector<Term> terms) {
    std::map<std::vector<int>, Rat> acc;
    for (auto& t : terms) {
        if (static_cast<int>(t.exp.size()) != nvars) throw ShapeError("exponent length != nvars");
        for (int e : t.exp)
            if (e < 0) throw DomainError("negative exponent");
        if (w.wdeg(t.exp) > order) continue;
        acc[std::move(t.exp)] += t.coef;
    }
    Jet j(nvars, w, order);
    for (auto& [e, c] : acc)
        if (c != 0) j.terms_.push_back({e, c});
    std::sort(j.terms_.begin(), j.terms_.end(),
              [&](const Term& a, const Term& b) { return term_less(j.weights_, a.exp, b.exp); });
    return j;
}

Rat Jet::at_zero() const {
    if (!terms_.empty() && std::all_of(terms_.front().exp.begin(), terms_.front().exp.end(), [](int e) { return e == 0; }))
        return terms_.front().coef;
    return Rat(0);
}

Rat Jet::coefficient(std::span<const int> alpha) const {
    for (const auto& t : terms_)
        if (std::equal(t.exp.begin(), t.exp.end(), alpha.begin(), alpha.end())) return t.coef;
    return Rat(0);
}

long Jet::top_wdeg() const { return terms_.empty() ? 0 : weights_.wdeg(terms_.back().exp); }

long Jet::min_wdeg() const { return terms_.empty() ? kOrderInf : weights_.wdeg(terms_.front().exp); }

Jet Jet::operator-() const {
    Jet j = *this;
    for (auto& t : j.terms_) t.coef = -t.coef;
    return j;
}

Jet Jet::scaled(const Rat& c) const {
    if (c == 0) return Jet(nvars_, weights_, order_);
    Jet j = *this;
    for (auto& t : j.terms_) t.coef *= c;
    return j;
}

Jet Jet::truncated(int new_order) const {
    if (new_order > order_) throw DomainError("truncation cannot raise the order");
    Jet j(nvars_, weights_, new_order);
    for (const auto& t : terms_)
        if (weights_.wdeg(t.exp) <= new_order) j.terms_.push_back(t);
    return j;
}

Jet Jet::declared(int new_order) const {
    if (new_order <= order_) return truncated(new_order);
    Jet j = *this;
    j.order_ = new_order;
    return j;
}

Jet Jet::reweighted(const Weights& w, int order) const {
    if (w.n() != nvars_) throw ShapeError("reweighted: weights length != nvars");
    std::vector<Term> ts = terms_;
    return from_terms(nvars_, w, order, std::move(ts));
}

Jet Jet::derivative(int var) const {
    if (var < 0 || var >= nvars_) throw DomainError("derivative index out of range");
    Jet j(nvars_, weights_, order_is_exact(order_) ? order_ : order_ - weights_[var]);
    for (const auto& t : terms_) {
        if (t.exp[var] == 0) continue;
        Term d = t;
        d.coef *= t.exp[var];
        d.exp[var] -= 1;
        j.terms_.push_back(std::move(d));
    }
    // graded-lex order is preserved by shifting one exponent down uniformly
    std::sort(j.terms_.begin(), j.terms_.end(),
              [&](const Term& a, const Term& b) { return term_less(j.weights_, a.exp, b.exp); });
    return j;
}

Jet Jet::antiderivative(int var) const {
    if (var < 0 || var >= nvars_) throw DomainError("antiderivative index out of range");
    int new_order = order_is_exact(order_) ? order_ : order_ + weights_[var];
    std::vector<Term> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) {
        Term a = t;
        a.exp[var] += 1;
        a.coef /= a.exp[var];
        ts.push_back(std::move(a));
    }
    return from_terms(nvars_, weights_, new_order, std::move(ts));
}

Jet Jet::partial_eval(int var, const Rat& val) const {
    if (var < 0 || var >= nvars_) throw DomainError("partial_eval index out of range");
    std::vector<Term> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) {
        Term a = t;
        if (a.exp[var] > 0) {
            a.coef *= rat_pow(val, a.exp[var]);
            a.exp[var] = 0;
        }
        ts.push_back(std::move(a));
    }
    return from_terms(nvars_, weights_, order_, std::move(ts));
}

Rat Jet::eval(const RatVec& x) const {
    if (static_cast<int>(x.size()) != nvars_) throw ShapeError("eval: point dimension mismatch");
    Rat s(0);
    for (const auto& t : terms_) {
        Rat m = t.coef;
        for (int i = 0; i < nvars_; ++i)
            if (t.exp[i] > 0) m *= rat_pow(x[i], t.exp[i]);
        s += m;
    }
    return s;
}

double Jet::eval(std::span<const double> x) const {
    double s = 0;
    for (const auto& t : terms_) {
        double m = rat_double(t.coef);
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < t.exp[i]; ++k) m *= x[i];
        s += m;
    }
    return s;
}

bool Jet::operator==(const Jet& o) const {
    if (nvars_ != o.nvars_ || weights_ != o.weights_) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].exp != o.terms_[i].exp || terms_[i].coef != o.terms_[i].coef) return false;
    return true;
}

std::string Jet::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        os << rat_str(t.coef);
        for (int i = 0; i < nvars_; ++i) {
            if (t.exp[i] == 0) continue;
            os << "*x" << (i + 1);
            if (t.exp[i] > 1) os << "^" << t.exp[i];
        }
    }
    return os.str();
}

namespace {

void check_same_shape(const Jet& a, const Jet& b, const char* op) {
    if (!a.same_shape(b)) throw ShapeError(std::string(op) + ": operand shapes differ");
}

Jet add_at_order(const Jet& a, const Jet& b, int order) {
    std::vector<Term> ts;
    ts.reserve(a.terms().size() + b.terms().size());
    for (const auto& t : a.terms()) ts.push_back(t);
    for (const auto& t : b.terms()) ts.push_back(t);
    return Jet::from_terms(a.nvars(), a.weights(), order, std::move(ts));
}

Jet mul_at_order(const Jet& a, const Jet& b, int order) {
    std::map<std::vector<int>, Rat> acc;
    std::vector<long> wa(a.terms().size()), wb(b.terms().size());
    for (size_t i = 0; i < a.terms().size(); ++i) wa[i] = a.weights().wdeg(a.terms()[i].exp);
    for (size_t i = 0; i < b.terms().size(); ++i) wb[i] = b.weights().wdeg(b.terms()[i].exp);
    int n = a.nvars();
    for (size_t i = 0; i < a.terms().size(); ++i)
        for (size_t j = 0; j < b.terms().size(); ++j) {
            if (wa[i] + wb[j] > order) continue;
            std::vector<int> e(n);
            for (int k = 0; k < n; ++k) e[k] = a.terms()[i].exp[k] + b.terms()[j].exp[k];
            acc[std::move(e)] += a.terms()[i].coef * b.terms()[j].coef;
        }
    std::vector<Term> ts;
    ts.reserve(acc.size());
    for (auto& [e, c] : acc)
        if (c != 0) ts.push_back({e, c});
    return Jet::from_terms(n, a.weights(), order, std::move(ts));
}

}  // namespace

Jet jet_add(const Jet& a, const Jet& b) {
    check_same_shape(a, b, "jet_add");
    return add_at_order(a, b, a.order());
}

Jet jet_sub(const Jet& a, const Jet& b) { return jet_add(a, -b); }

Jet jet_mul(const Jet& a, const Jet& b) {
    check_same_shape(a, b, "jet_mul");
    return mul_at_order(a, b, a.order());
}

Jet add_mixed(const Jet& a, const Jet& b) {
    if (a.nvars() != b.nvars() || !(a.weights() == b.weights()))
        throw ShapeError("add_mixed: variable spaces differ");
    return add_at_order(a, b, std::min(a.order(), b.order()));
}

Jet mul_mixed(const Jet& a, const Jet& b) {
    if (a.nvars() != b.nvars() || !(a.weights() == b.weights()))
        throw ShapeError("mul_mixed: variable spaces differ");
    // terms missing from one factor (weighted degree above its horizon) land
    // shifted up by the other factor's valuation
    long ma = std::min<long>(a.min_wdeg(), static_cast<long>(a.order()) + 1);
    long mb = std::min<long>(b.min_wdeg(), static_cast<long>(b.order()) + 1);
    long ord = std::min<long>(static_cast<long>(a.order()) + mb, static_cast<long>(b.order()) + ma);
    ord = std::min<long>(ord, kOrderInf);
    return mul_at_order(a, b, static_cast<int>(ord));
}

JetMap JetMap::identity(int nvars, const Weights& w, int order) {
    JetMap g;
    g.comps.reserve(nvars);
    for (int i = 0; i < nvars; ++i) g.comps.push_back(Jet::variable(i, nvars, w, order));
    return g;
}

bool JetMap::is_identity() const {
    for (int j = 0; j < m(); ++j) {
        const Jet& id = Jet::variable(j, comps[j].nvars(), comps[j].weights(), comps[j].order());
        if (!(comps[j] == id)) return false;
    }
    return true;
}

namespace {

void check_map(const JetMap& g) {
    if (g.comps.empty()) throw ShapeError("empty substitution map");
    for (const auto& c : g.comps)
        if (c.nvars() != g.comps[0].nvars() || !(c.weights() == g.comps[0].weights()))
            throw ShapeError("substitution map components live in different spaces");
}

// Minimal weighted degree (in f's grading) reachable by monomials f might be
// missing above its horizon, measured after substitution: unbounded knapsack
// over (weight w_j, cost m_j).
int landing_floor(const Weights& fw, const std::vector<long>& mins, int f_order) {
    const long kBig = kOrderInf;
    int maxw = fw.step();
    int target = f_order + 1;
    std::vector<long> L(static_cast<size_t>(target + maxw) + 1, kBig);
    L[0] = 0;
    for (size_t d = 1; d < L.size(); ++d)
        for (int j = 0; j < fw.n(); ++j) {
            if (static_cast<long>(d) < fw[j]) continue;
            long prev = L[d - fw[j]];
            if (prev >= kBig) continue;
            L[d] = std::min(L[d], prev + mins[j]);
        }
    long best = kBig;
    for (int d = target; d <= target + maxw; ++d) best = std::min(best, L[d]);
    return static_cast<int>(std::min<long>(best, kOrderInf));
}

Jet compose_impl(const Jet& f, const JetMap& g, bool strict, bool f_exact, bool allow_const) {
    check_map(g);
    if (f.nvars() != g.m()) throw ShapeError("jet_compose: map must have one component per variable of f");

    std::vector<long> mins(g.comps.size());
    int g_order = kOrderInf;
    for (size_t j = 0; j < g.comps.size(); ++j) {
        if (!allow_const && g.comps[j].at_zero() != 0)
            throw DomainError("jet_compose: substitution component has nonzero constant term");
        mins[j] = std::min<long>(g.comps[j].min_wdeg(), kOrderInf);
        g_order = std::min(g_order, g.comps[j].order());
    }

    int out_order;
    if (strict) {
        if (!(f.weights() == g.comps[0].weights()) || f.order() != g_order)
            throw ShapeError("jet_compose: weights/order not shared");
        for (int j = 0; j < f.nvars(); ++j)
            if (mins[j] < f.weights()[j])
                throw DegreeError("jet_compose: component " + std::to_string(j + 1) +
                                  " carries weighted degree below its variable weight");
        out_order = f.order();
    } else {
        out_order = g_order;
        if (!f_exact && !order_is_exact(f.order()))
            out_order = std::min(out_order, landing_floor(f.weights(), mins, f.order()) - 1);
    }

    const int gn = g.comps[0].nvars();
    const Weights& gw = g.comps[0].weights();
    Jet acc(gn, gw, out_order);
    // powers[j][k] = g_j^k at out_order, filled on demand
    std::vector<std::vector<Jet>> powers(g.comps.size());
    auto power = [&](int j, int k) -> const Jet& {
        auto& p = powers[static_cast<size_t>(j)];
        if (p.empty()) p.push_back(Jet::constant(gn, gw, out_order, Rat(1)));
        while (static_cast<int>(p.size()) <= k) p.push_back(mul_at_order(p.back(), g.comps[static_cast<size_t>(j)], out_order));
        return p[static_cast<size_t>(k)];
    };

    for (const auto& t : f.terms()) {
        Jet prod = Jet::constant(gn, gw, out_order, t.coef);
        for (int j = 0; j < f.nvars(); ++j)
            if (t.exp[j] > 0) {
                prod = mul_at_order(prod, power(j, t.exp[j]), out_order);
                if (prod.is_zero()) break;
            }
        acc = add_at_order(acc, prod, out_order);
    }
    return acc;
}

}  // namespace

Jet jet_compose(const Jet& f, const JetMap& g) { return compose_impl(f, g, true, false, false); }

Jet compose_series(const Jet& f, const JetMap& g, bool f_exact, bool allow_const) {
    return compose_impl(f, g, false, f_exact, allow_const);
}

JetMap jet_invert(const JetMap& g) {
    check_map(g);
    const int n = g.comps[0].nvars();
    if (g.m() != n) throw ShapeError("jet_invert: map is not square");
    const Weights& w = g.comps[0].weights();
    const int order = g.comps[0].order();
    for (int j = 0; j < n; ++j) {
        if (g.comps[j].order() != order) throw ShapeError("jet_invert: mixed component orders");
        if (g.comps[j].at_zero() != 0) throw DomainError("jet_invert: nonzero constant term");
        for (int k = 0; k < n; ++k) {
            std::vector<int> e(n, 0);
            e[k] = 1;
            if (g.comps[j].coefficient(e) != Rat(k == j ? 1 : 0))
                throw DomainError("jet_invert: linear part is not the identity (unsupported)");
        }
    }

    JetMap id = JetMap::identity(n, w, order);
    // nonlinear part: g = id + ghat
    JetMap ghat;
    for (int j = 0; j < n; ++j) ghat.comps.push_back(jet_sub(g.comps[j], id.comps[j]));

    JetMap h = id;
    for (int it = 0; it <= order; ++it) {
        JetMap next;
        bool stable = true;
        for (int j = 0; j < n; ++j) {
            Jet c = compose_series(ghat.comps[j], h, true);
            next.comps.push_back(jet_sub(id.comps[j], c.declared(order)));
            if (!(next.comps[j] == h.comps[j])) stable = false;
        }
        h = std::move(next);
        if (stable) break;
    }
    for (int j = 0; j < n; ++j) {
        Jet check = compose_series(g.comps[j], h, true).declared(order);
        if (!(check == id.comps[j])) throw StructureError("jet_invert: fixed point iteration failed");
    }
    return h;
}

}  // namespace cct
