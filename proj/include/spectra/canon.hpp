#pragma once

#include "spectra/polytope.hpp"

namespace spectra {

struct BoundsChecked {
  bool upper = false;     // y_n <= 2^n
  bool internal = false;  // 2^(n-i+1) y_i >= y_n for all i < n
  bool band = false;      // 2^i <= band_i <= 2^(n+1), band_n == 2^(n+1)
};

struct CanonReport {
  Spectrum input;
  VertexCertificate vertex;
  IntegralSpectrum lifted;
  IntegralSpectrum conant_band;
  BoundsChecked bounds_checked;
};

/// The vertex of the spectral polyhedron of x reached by purification from
/// the scaled feasible point. Always equivalent to x.
Spectrum rational_representative(const Spectrum& x);

/// |det(basis)| times the vertex: an integral spectrum equivalent to x with
/// y_n <= 2^n and 2^(n-i+1) y_i >= y_n. All three facts are re-checked at
/// runtime and raise BoundViolation on failure.
IntegralSpectrum integral_representative(const Spectrum& x);

/// Ceiling rescale of the integral representative to the band
/// 2^i <= y_i <= 2^(n+1) with y_n = 2^(n+1) exactly; equivalence and the band
/// are re-checked at runtime.
IntegralSpectrum conant_band(const Spectrum& x);

/// Full pipeline report; every check flag is true on return.
CanonReport canonicalize(const Spectrum& x);

}  // namespace spectra
