#include "cct/rational.hpp"

#include <cctype>

#include "cct/errors.hpp"

namespace cct {

Rat rat_parse(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    for (char c : s) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
            throw ParseError("bad rational literal: '" + s + "'");
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw ParseError("bad rational literal: '" + s + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator: '" + s + "'");
    q.canonicalize();
    return q;
}

std::string rat_str(const Rat& q) { return q.get_str(); }

double rat_double(const Rat& q) { return q.get_d(); }

Rat rat_pow(const Rat& q, long e) {
    if (e == 0) return Rat(1);
    bool inv = e < 0;
    unsigned long k = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    if (inv && q == 0) throw DomainError("negative power of zero");
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), k);
    mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), k);
    r.canonicalize();
    if (inv) r = 1 / r;
    return r;
}

bool is_zero(const RatVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace cct
