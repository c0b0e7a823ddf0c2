#pragma once
#include <gmpxx.h>

#include <string>
#include <vector>

namespace cct {

// Exact arbitrary-precision rational scalar. All symbolic layers compute over
// Rat; doubles appear only in the curve integration layer.
using Rat = mpq_class;

// Parses "p", "-p/q", "p/q" (arbitrary precision); canonicalizes sign and gcd.
Rat rat_parse(const std::string& s);

// Canonical "p" or "p/q" form, denominator positive.
std::string rat_str(const Rat& q);

double rat_double(const Rat& q);

// q^e for integer e (e < 0 requires q != 0). Signed base allowed.
Rat rat_pow(const Rat& q, long e);

using RatVec = std::vector<Rat>;

bool is_zero(const RatVec& v);

}  // namespace cct
