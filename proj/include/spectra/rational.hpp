#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace spectra {

// All numeric state in the library is exact: arbitrary-precision integers and
// canonical-form rationals (reduced fraction, positive denominator). GMP's
// class wrappers maintain canonicity through arithmetic; construction paths
// below canonicalize explicitly.
using Int = mpz_class;
using Rat = mpq_class;

int sgn(const Rat& x);  // -1, 0, +1
int sgn(const Int& x);
Rat rat_abs(const Rat& x);

/// Exact ceiling of a rational.
Int ceil_rat(const Rat& x);

Int pow2(unsigned long k);

/// num/den reduced to canonical form. den must be nonzero.
Rat make_rat(const Int& num, const Int& den);

/// Accepts "p/q" (integers, q > 0) or a finite decimal ("0.75" -> 3/4).
/// Conversion is exact; no floating point is involved.
Rat parse_rational(std::string_view token);

/// "p/q", or just "p" when the denominator is 1. parse_rational round-trips it.
std::string format_rational(const Rat& x);

std::string format_int(const Int& x);

}  // namespace spectra
