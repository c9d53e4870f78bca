#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spectra/polytope.hpp"

namespace spectra {

using SignedVector = std::vector<Rat>;

/// Element of the family F: difference vectors p(i,j) (-1 at i, +1 at j) for
/// all i != j, plus the positive and negative unit vectors.
struct FElement {
  enum class Tag { PlusUnit, MinusUnit, P };

  Tag tag = Tag::PlusUnit;
  int i = 0, j = 0;     // 1-based; P uses both, units use i
  std::vector<Int> vec; // realized vector, length n

  std::string label() const;  // "+e1", "-e3", "p(1,2)"
  bool operator==(const FElement&) const = default;
};

FElement f_plus_unit(int n, int i);
FElement f_minus_unit(int n, int i);
FElement f_p(int n, int i, int j);

/// Canonical enumeration order: +e1..+en, -e1..-en, then p(i,j) lexicographic.
std::vector<FElement> f_family(int n);

SignedVector to_signed(const std::vector<Int>& v);
SignedVector add(const SignedVector& a, const SignedVector& b);

/// x is covered by y: for all i, x_i * y_i >= 0 and |x_i| <= |y_i|.
bool is_covered_by(const SignedVector& x, const SignedVector& y);

/// First family element covering x, in canonical order.
std::optional<FElement> f_cover_witness(const SignedVector& x);

/// First ordered pair (f1, f2) of family elements with x covered by f1 + f2.
std::optional<std::pair<FElement, FElement>> f_pair_cover_witness(const SignedVector& x);

/// Splits x covered by u + v into x_u covered by u and x_v covered by v with
/// x_u + x_v = x, by the three-case coordinate rule.
std::pair<SignedVector, SignedVector> decompose(const SignedVector& x, const SignedVector& u,
                                                const SignedVector& v);

/// A family element with up to two coordinates forced to zero; refinement
/// outputs keep the provenance of which coordinate was dropped.
struct RefinedElement {
  FElement base;
  std::vector<int> zeroed;  // 1-based coordinates set to zero
  std::vector<Int> realized() const;
};

/// Refinement of covers: given x covered by p1 and y covered by p2, produces
/// q1, q2 (family elements, possibly coordinate-zeroed) with q1 <= p1,
/// q2 <= p2 in the cover order and x + y covered by q1 + q2.
std::pair<RefinedElement, RefinedElement> refine(const SignedVector& x, const SignedVector& y,
                                                 const FElement& p1, const FElement& p2);

/// Two family elements whose sum covers x + y, for x and y each covered by
/// some family element. Sums with a zeroed clash coordinate are rewritten as
/// a difference vector plus a unit.
std::pair<FElement, FElement> sum_cover(const SignedVector& x, const SignedVector& y);

/// y - (y_j/x_j) x for j the least index attaining ||x||_inf. Keeps the
/// result inside the family cover.
SignedVector row_reduce_step(const SignedVector& x, const SignedVector& y);

struct DetBoundReport {
  int m = 0;     // rows covered by a single family element
  Int bound;     // 2^(n-m)
  Rat det_abs;   // |det|, exact
  bool holds = false;
};

/// Verifies every row is covered by a sum of two family elements, counts rows
/// covered by a single element, and checks |det| <= 2^(n-m).
DetBoundReport check_det_bound(const std::vector<SignedVector>& rows);

}  // namespace spectra
