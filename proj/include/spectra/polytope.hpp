#pragma once

#include <string>
#include <vector>

#include "spectra/spectrum.hpp"

namespace spectra {

using RationalPoint = std::vector<Rat>;
using IntMatrix = std::vector<std::vector<Int>>;

/// One inequality row A_r . x >= b_r of a spectral polyhedron.
struct ConstraintRow {
  enum class Kind { TriplePos, TripleNeg, Gap, Unit };

  Kind kind = Kind::Unit;
  int i = 0, j = 0, k = 0;  // 1-based tag; Gap uses (i,j), Unit uses i
  std::vector<Int> coeffs;  // length n
  int rhs = 0;              // 0 or 1

  std::string label() const;  // "TriplePos(1,1,2)", "Gap(1,2)", "Unit(2)"
  bool operator==(const ConstraintRow&) const = default;
};

/// H-representation of the spectral polyhedron of a profile: one row per
/// triple (positive when the triple is a member, negated otherwise), all gap
/// rows i < j, all unit rows. Row order: triples lexicographic, then gaps
/// lexicographic, then units ascending.
struct ConstraintSystem {
  int n = 0;
  std::vector<ConstraintRow> rows;

  bool operator==(const ConstraintSystem&) const = default;
};

/// Exact vertex plus the n independent active rows certifying it.
struct VertexCertificate {
  RationalPoint point;
  std::vector<int> basis;  // 0-based row indices, ascending, size n
  Int basis_det;           // determinant of the basis rows; nonzero
};

ConstraintSystem build_system(const TriangleProfile& p);

Rat row_dot(const ConstraintRow& row, const RationalPoint& pt);

/// True iff every row inequality holds exactly.
bool contains(const ConstraintSystem& sys, const RationalPoint& pt);

/// A point of the spectral polyhedron of x: alpha * x with alpha large enough
/// to clear every rhs-1 row.
RationalPoint feasible_point(const Spectrum& x);
RationalPoint feasible_point_in(const ConstraintSystem& sys, const Spectrum& x);

/// Moves a feasible point along null-space directions of its active rows until
/// the active rows reach rank n. Deterministic: the direction flips the
/// lexicographically smallest free coordinate, and ties between newly tight
/// rows resolve to the lowest row index.
VertexCertificate purify_to_vertex(const ConstraintSystem& sys, const RationalPoint& start);

/// Independent re-check of a certificate: exact activity of the basis rows,
/// nonzero basis determinant, full containment.
bool verify_certificate(const ConstraintSystem& sys, const VertexCertificate& cert);

/// Exact determinant by fraction-free (Bareiss) elimination, pivoting on the
/// first nonzero entry of each column.
Int det_exact(const IntMatrix& m);

/// Exact solution of B y = rhs with components det(B_i)/det(B); the result is
/// back-substituted before returning.
RationalPoint cramer_solve(const IntMatrix& b, const std::vector<Int>& rhs);

/// Debug dump, one row per line: kind, coefficients, rhs.
std::string to_csv(const ConstraintSystem& sys);

}  // namespace spectra
