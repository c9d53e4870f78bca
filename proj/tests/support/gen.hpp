#pragma once

// Deterministic random generators and independent oracles shared by the unit
// and acceptance suites. mt19937_64 is fully specified by the standard, so
// fixed seeds reproduce bit-identical corpora everywhere.

#include <random>
#include <set>
#include <vector>

#include "spectra/cover.hpp"
#include "spectra/polytope.hpp"
#include "spectra/spectrum.hpp"

namespace testgen {

using namespace spectra;

inline Rat random_positive_rat(std::mt19937_64& rng, int max_num = 64, int max_den = 16) {
  std::uniform_int_distribution<long> num(1, max_num), den(1, max_den);
  return make_rat(Int(num(rng)), Int(den(rng)));
}

inline std::vector<Rat> random_spectrum_entries(std::mt19937_64& rng, int n, int max_num = 64,
                                                int max_den = 16) {
  std::set<Rat> vals;
  while (static_cast<int>(vals.size()) < n) vals.insert(random_positive_rat(rng, max_num, max_den));
  return std::vector<Rat>(vals.begin(), vals.end());
}

inline Spectrum random_spectrum(std::mt19937_64& rng, int n) {
  return Spectrum(random_spectrum_entries(rng, n));
}

/// Any-sign rational with |value| <= max_num and denominator <= max_den.
inline Rat random_signed_rat(std::mt19937_64& rng, int max_num = 4, int max_den = 16) {
  std::uniform_int_distribution<long> num(-max_num, max_num);
  std::uniform_int_distribution<long> den(1, max_den);
  return make_rat(Int(num(rng)), Int(den(rng)));
}

inline SignedVector random_signed_vector(std::mt19937_64& rng, int n, int max_num = 4,
                                         int max_den = 16) {
  SignedVector v(static_cast<size_t>(n));
  for (auto& e : v) e = random_signed_rat(rng, max_num, max_den);
  return v;
}

/// A random vector covered by `bound`: each coordinate keeps the sign of the
/// bound and shrinks it by a random fraction with denominator <= 16.
inline SignedVector random_covered_by(std::mt19937_64& rng, const SignedVector& bound) {
  std::uniform_int_distribution<long> num16(0, 16);
  SignedVector x(bound.size());
  for (size_t c = 0; c < bound.size(); ++c) x[c] = bound[c] * make_rat(Int(num16(rng)), Int(16));
  return x;
}

inline IntMatrix random_int_matrix(std::mt19937_64& rng, int n, int lo = -9, int hi = 9) {
  std::uniform_int_distribution<long> entry(lo, hi);
  IntMatrix m(static_cast<size_t>(n), std::vector<Int>(static_cast<size_t>(n)));
  for (auto& row : m)
    for (auto& v : row) v = Int(entry(rng));
  return m;
}

/// Independent determinant oracle: Laplace cofactor expansion along row 0.
inline Int det_cofactor(const IntMatrix& m) {
  const size_t n = m.size();
  if (n == 0) return Int(1);
  if (n == 1) return m[0][0];
  Int sum(0);
  for (size_t c = 0; c < n; ++c) {
    if (sgn(m[0][c]) == 0) continue;
    IntMatrix minor(n - 1, std::vector<Int>(n - 1));
    for (size_t r = 1; r < n; ++r) {
      size_t mc = 0;
      for (size_t cc = 0; cc < n; ++cc) {
        if (cc == c) continue;
        minor[r - 1][mc++] = m[r][cc];
      }
    }
    Int term = m[0][c] * det_cofactor(minor);
    if (c % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  return sum;
}

inline SignedVector int_row_to_signed(const std::vector<Int>& v) { return to_signed(v); }

}  // namespace testgen
