#include "cct/structure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cct {

std::string BracketWord::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < letters.size(); ++i) {
        if (i) os << ",";
        os << letters[i];
    }
    os << ")";
    return os.str();
}

void AdaptedFrame::validate(int rank) const {
    int nn = n();
    if (weights.n() != nn) throw ShapeError("frame weights length mismatch");
    for (int i = 0; i < rank; ++i)
        if (!(words[static_cast<size_t>(i)] == BracketWord{{i + 1}}))
            throw StructureError("frame words 1..r must be the single letters");
    for (int i = 0; i < nn; ++i)
        if (weights[i] != words[static_cast<size_t>(i)].length())
            throw StructureError("frame weight differs from word length");
    if (!std::is_sorted(weights.vec().begin(), weights.vec().end()))
        throw StructureError("frame weights must be nondecreasing");
    if (step != weights.step()) throw StructureError("frame step mismatch");
    if (basis_at_zero.rank() != nn) throw StructureError("frame basis at 0 is singular");
}

void CCStructure::validate() const {
    if (n < 1 || r < 1) throw DomainError("structure needs n >= 1, r >= 1");
    if (static_cast<int>(fields.size()) != r) throw ShapeError("structure must carry r fields");
    for (const auto& f : fields) {
        f.check_shape();
        if (f.nvars() != n) throw ShapeError("field dimension != n");
        if (!f.comp[0].same_shape(fields[0].comp[0])) throw ShapeError("fields have mixed shapes");
    }
    if (evaluation_matrix(fields).rank() != r)
        throw StructureError("fields are linearly dependent at 0");
}

PolyVectorField evaluate_word(const CCStructure& x, const BracketWord& j) {
    if (j.length() < 1) throw DomainError("empty bracket word");
    for (int l : j.letters)
        if (l < 1 || l > x.r) throw DomainError("bracket word letter out of range 1..r");
    PolyVectorField acc = x.fields[static_cast<size_t>(j.letters.back() - 1)];
    for (int q = j.length() - 2; q >= 0; --q)
        acc = lie_bracket(x.fields[static_cast<size_t>(j.letters[static_cast<size_t>(q)] - 1)], acc);
    return acc;
}

namespace {

// value of the iterated bracket at 0 only, with honest order bookkeeping for
// truncated inputs (select_adapted_frame must not demand full polynomial
// exactness of every intermediate bracket).
RatVec word_value_at_zero(const CCStructure& x, const BracketWord& j) {
    PolyVectorField acc = x.fields[static_cast<size_t>(j.letters.back() - 1)];
    for (int q = j.length() - 2; q >= 0; --q)
        acc = lie_bracket_honest(x.fields[static_cast<size_t>(j.letters[static_cast<size_t>(q)] - 1)], acc);
    if (acc.order() < 0)
        throw OrderError("adapted frame: input jet order too low to evaluate bracket words at 0",
                         -acc.order());
    return acc.at_zero();
}

}  // namespace

AdaptedFrame select_adapted_frame(const CCStructure& x, int max_step) {
    if (max_step < 1) throw DomainError("max_step must be >= 1");
    x.validate();

    AdaptedFrame f;
    RatMat chosen(x.n, x.n);
    int count = 0;
    std::vector<int> wvec;

    for (int len = 1; len <= max_step && count < x.n; ++len) {
        // lexicographic enumeration of all words of this length
        std::vector<int> letters(static_cast<size_t>(len), 1);
        while (true) {
            BracketWord word{letters};
            RatVec v = word_value_at_zero(x, word);
            for (int j = 0; j < x.n; ++j) chosen.at(count, j) = v[j];
            RatMat probe = chosen;  // rows beyond count are zero and do not add rank
            if (probe.rank() == count + 1) {
                f.words.push_back(word);
                wvec.push_back(len);
                ++count;
                if (count == x.n) break;
            } else {
                for (int j = 0; j < x.n; ++j) chosen.at(count, j) = 0;
            }
            int pos = len - 1;
            while (pos >= 0 && letters[static_cast<size_t>(pos)] == x.r) {
                letters[static_cast<size_t>(pos)] = 1;
                --pos;
            }
            if (pos < 0) break;
            letters[static_cast<size_t>(pos)] += 1;
        }
    }

    if (count < x.n)
        throw HormanderError("brackets up to length " + std::to_string(max_step) +
                                 " span only a " + std::to_string(count) + "-dimensional subspace at 0",
                             count);

    f.weights = Weights::adapted(std::move(wvec));
    f.step = f.weights.step();
    f.basis_at_zero = chosen;
    f.validate(x.r);
    return f;
}

RatVec dilate_point(const RatVec& x, const Rat& lambda, const Weights& w) {
    if (lambda == 0) throw DomainError("dilation with lambda = 0");
    RatVec y(x.size());
    for (size_t i = 0; i < x.size(); ++i) y[i] = rat_pow(lambda, w[static_cast<int>(i)]) * x[i];
    return y;
}

std::vector<double> dilate_point(const std::vector<double>& x, double lambda, const Weights& w) {
    if (lambda == 0) throw DomainError("dilation with lambda = 0");
    std::vector<double> y(x.size());
    for (size_t i = 0; i < x.size(); ++i) y[i] = std::pow(lambda, w[static_cast<int>(i)]) * x[i];
    return y;
}

PolyVectorField pushforward_dilation(const PolyVectorField& v, const Rat& lambda, const Weights& w) {
    if (lambda == 0) throw DomainError("dilation with lambda = 0");
    v.check_shape();
    PolyVectorField r;
    r.comp.reserve(v.comp.size());
    for (size_t j = 0; j < v.comp.size(); ++j) {
        std::vector<Term> ts;
        for (const auto& t : v.comp[j].terms()) {
            // lambda^{w_j} * x^alpha(delta_{1/lambda} x) = lambda^{w_j - w_alpha} x^alpha
            long e = w[static_cast<int>(j)] - v.weights().wdeg(t.exp);
            ts.push_back({t.exp, t.coef * rat_pow(lambda, e)});
        }
        r.comp.push_back(Jet::from_terms(v.nvars(), v.weights(), v.order(), std::move(ts)));
    }
    return r;
}

double anorm(const std::vector<double>& x, const Weights& w) {
    double s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]), 1.0 / w[static_cast<int>(i)]);
    return s;
}

}  // namespace cct
