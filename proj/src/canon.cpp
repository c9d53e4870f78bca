#include "spectra/canon.hpp"

namespace spectra {

namespace {

struct Pipeline {
  TriangleProfile prof;
  VertexCertificate vertex;
};

Pipeline run_vertex_stage(const Spectrum& x) {
  TriangleProfile prof = profile(x);
  ConstraintSystem sys = build_system(prof);
  RationalPoint start = feasible_point_in(sys, x);
  VertexCertificate cert = purify_to_vertex(sys, start);
  return Pipeline{std::move(prof), std::move(cert)};
}

IntegralSpectrum lift_vertex(const TriangleProfile& prof, const VertexCertificate& cert) {
  const int n = prof.n();
  Int d = abs(cert.basis_det);
  std::vector<Int> lifted;
  lifted.reserve(cert.point.size());
  for (const Rat& v : cert.point) {
    Rat scaled = Rat(d) * v;
    if (scaled.get_den() != 1)
      fail(ErrorCode::BoundViolation, "Cramer lift produced a non-integer entry");
    lifted.push_back(scaled.get_num());
  }
  IntegralSpectrum y(std::move(lifted));

  if (profile(y.to_spectrum()) != prof)
    fail(ErrorCode::BoundViolation, "integral representative changed the profile");
  if (y.at(n) > pow2(static_cast<unsigned long>(n)))
    fail(ErrorCode::BoundViolation, "largest entry exceeds 2^n");
  for (int i = 1; i < n; ++i) {
    if (pow2(static_cast<unsigned long>(n - i + 1)) * y.at(i) < y.at(n))
      fail(ErrorCode::BoundViolation,
           "internal bound 2^(n-i+1) y_i >= y_n fails at i=" + std::to_string(i));
  }
  return y;
}

IntegralSpectrum band_of(const TriangleProfile& prof, const IntegralSpectrum& z) {
  const int n = z.dim();
  const Int top = pow2(static_cast<unsigned long>(n) + 1);
  const Rat c = make_rat(top, z.at(n));  // >= 2 because z_n <= 2^n

  std::vector<Int> entries;
  entries.reserve(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) entries.push_back(ceil_rat(c * Rat(z.at(i))));
  IntegralSpectrum y(std::move(entries));

  if (y.at(n) != top) fail(ErrorCode::BoundViolation, "band top is not exactly 2^(n+1)");
  for (int i = 1; i <= n; ++i) {
    if (y.at(i) < pow2(static_cast<unsigned long>(i)) || y.at(i) > top)
      fail(ErrorCode::BoundViolation, "band entry " + std::to_string(i) + " escapes [2^i, 2^(n+1)]");
  }
  if (profile(y.to_spectrum()) != prof)
    fail(ErrorCode::EquivalenceViolation, "band construction changed the profile");
  return y;
}

}  // namespace

Spectrum rational_representative(const Spectrum& x) {
  Pipeline p = run_vertex_stage(x);
  Spectrum y(p.vertex.point);
  if (profile(y) != p.prof)
    fail(ErrorCode::EquivalenceViolation, "vertex changed the profile");
  return y;
}

IntegralSpectrum integral_representative(const Spectrum& x) {
  Pipeline p = run_vertex_stage(x);
  return lift_vertex(p.prof, p.vertex);
}

IntegralSpectrum conant_band(const Spectrum& x) {
  Pipeline p = run_vertex_stage(x);
  return band_of(p.prof, lift_vertex(p.prof, p.vertex));
}

CanonReport canonicalize(const Spectrum& x) {
  Pipeline p = run_vertex_stage(x);
  IntegralSpectrum lifted = lift_vertex(p.prof, p.vertex);
  IntegralSpectrum band = band_of(p.prof, lifted);
  // lift_vertex and band_of throw on any failed check, so reaching this point
  // certifies all three flags.
  return CanonReport{x, std::move(p.vertex), std::move(lifted), std::move(band),
                     BoundsChecked{true, true, true}};
}

}  // namespace spectra
