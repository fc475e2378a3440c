#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace matchdiff {

using Int = mpz_class;
using Rat = mpq_class;

/// p/q in lowest terms; q must be nonzero.
Rat ratio(const Int& p, const Int& q);

/// Parses "p/q" or "p". The result is canonicalized; q must be nonzero.
Rat parse_rat(std::string_view text);

/// Always renders "p/q", including q = 1.
std::string rat_str(const Rat& value);

/// Fixed-point decimal rendering with `digits` fractional digits, rounded
/// toward zero. Display only.
std::string rat_decimal(const Rat& value, int digits = 12);

Int binomial(long n, long k);
Int factorial(long n);
Rat pow(const Rat& base, unsigned long exponent);
Rat pow(const Rat& base, long exponent);

}  // namespace matchdiff
