#include "spectra/cover.hpp"

#include <algorithm>

namespace spectra {

namespace {

std::vector<Int> unit_vec(int n, int i, int value) {
  std::vector<Int> v(static_cast<size_t>(n), Int(0));
  v[static_cast<size_t>(i - 1)] = value;
  return v;
}

void check_index(int n, int i) {
  if (i < 1 || i > n) fail(ErrorCode::DimensionMismatch, "index out of range");
}

}  // namespace

std::string FElement::label() const {
  switch (tag) {
    case Tag::PlusUnit: return "+e" + std::to_string(i);
    case Tag::MinusUnit: return "-e" + std::to_string(i);
    case Tag::P: return "p(" + std::to_string(i) + "," + std::to_string(j) + ")";
  }
  return "?";
}

FElement f_plus_unit(int n, int i) {
  check_index(n, i);
  return FElement{FElement::Tag::PlusUnit, i, 0, unit_vec(n, i, 1)};
}

FElement f_minus_unit(int n, int i) {
  check_index(n, i);
  return FElement{FElement::Tag::MinusUnit, i, 0, unit_vec(n, i, -1)};
}

FElement f_p(int n, int i, int j) {
  check_index(n, i);
  check_index(n, j);
  if (i == j) fail(ErrorCode::DimensionMismatch, "p(i,j) needs i != j");
  auto v = unit_vec(n, i, -1);
  v[static_cast<size_t>(j - 1)] = 1;
  return FElement{FElement::Tag::P, i, j, std::move(v)};
}

std::vector<FElement> f_family(int n) {
  std::vector<FElement> out;
  out.reserve(static_cast<size_t>(n) * (n + 1));
  for (int i = 1; i <= n; ++i) out.push_back(f_plus_unit(n, i));
  for (int i = 1; i <= n; ++i) out.push_back(f_minus_unit(n, i));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) out.push_back(f_p(n, i, j));
  return out;
}

SignedVector to_signed(const std::vector<Int>& v) {
  SignedVector out;
  out.reserve(v.size());
  for (const Int& e : v) out.emplace_back(e);
  return out;
}

SignedVector add(const SignedVector& a, const SignedVector& b) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "vector lengths differ");
  SignedVector out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

bool is_covered_by(const SignedVector& x, const SignedVector& y) {
  if (x.size() != y.size()) fail(ErrorCode::DimensionMismatch, "vector lengths differ");
  for (size_t i = 0; i < x.size(); ++i) {
    int sx = sgn(x[i]);
    if (sx == 0) continue;
    if (sx != sgn(y[i])) return false;
    if (rat_abs(x[i]) > rat_abs(y[i])) return false;
  }
  return true;
}

namespace {

// Integer profile of a rational vector for family coverage: entry
// sgn(x_i) * ceil(|x_i|), or +-3 as an "uncoverable" marker beyond 2.
// For any integer vector s, x is covered by s iff the profile is.
std::vector<int> coverage_need(const SignedVector& x) {
  std::vector<int> need(x.size(), 0);
  for (size_t i = 0; i < x.size(); ++i) {
    int s = sgn(x[i]);
    if (s == 0) continue;
    Rat a = rat_abs(x[i]);
    int mag;
    if (a <= 1)
      mag = 1;
    else if (a <= 2)
      mag = 2;
    else
      mag = 3;
    need[i] = s * mag;
  }
  return need;
}

std::vector<int> small_vec(const std::vector<Int>& v) {
  std::vector<int> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = static_cast<int>(v[i].get_si());
  return out;
}

bool need_covered(const std::vector<int>& need, const std::vector<int>& s) {
  for (size_t i = 0; i < need.size(); ++i) {
    if (need[i] == 0) continue;
    if (need[i] > 0 && s[i] < need[i]) return false;
    if (need[i] < 0 && s[i] > need[i]) return false;
  }
  return true;
}

}  // namespace

std::optional<FElement> f_cover_witness(const SignedVector& x) {
  if (x.empty()) fail(ErrorCode::DimensionMismatch, "empty vector");
  const int n = static_cast<int>(x.size());
  auto need = coverage_need(x);
  for (FElement& f : f_family(n))
    if (need_covered(need, small_vec(f.vec))) return std::move(f);
  return std::nullopt;
}

std::optional<std::pair<FElement, FElement>> f_pair_cover_witness(const SignedVector& x) {
  if (x.empty()) fail(ErrorCode::DimensionMismatch, "empty vector");
  const int n = static_cast<int>(x.size());
  auto need = coverage_need(x);
  for (int v : need)
    if (v > 2 || v < -2) return std::nullopt;

  auto family = f_family(n);
  std::vector<std::vector<int>> small;
  small.reserve(family.size());
  for (const FElement& f : family) small.push_back(small_vec(f.vec));

  std::vector<int> sum(x.size());
  for (size_t a = 0; a < family.size(); ++a)
    for (size_t b = a; b < family.size(); ++b) {
      for (size_t i = 0; i < sum.size(); ++i) sum[i] = small[a][i] + small[b][i];
      if (need_covered(need, sum)) return std::make_pair(family[a], family[b]);
    }
  return std::nullopt;
}

std::pair<SignedVector, SignedVector> decompose(const SignedVector& x, const SignedVector& u,
                                                const SignedVector& v) {
  if (x.size() != u.size() || u.size() != v.size())
    fail(ErrorCode::DimensionMismatch, "vector lengths differ");
  if (!is_covered_by(x, add(u, v)))
    fail(ErrorCode::NotCovered, "x is not covered by u + v");

  const size_t n = x.size();
  SignedVector xu(n, Rat(0)), xv(n, Rat(0));
  for (size_t i = 0; i < n; ++i) {
    const int su = sgn(u[i]);
    const int sv = sgn(v[i]);
    const int sx = sgn(x[i]);
    if (su * sv < 0 && su * sx <= 0) {
      xu[i] = 0;
    } else if (su * sv < 0) {
      xu[i] = x[i];
    } else {
      Rat mag = std::min(rat_abs(u[i]), rat_abs(x[i]));
      xu[i] = su > 0 ? mag : su < 0 ? Rat(-mag) : Rat(0);
    }
    xv[i] = x[i] - xu[i];
  }
  return {std::move(xu), std::move(xv)};
}

std::vector<Int> RefinedElement::realized() const {
  std::vector<Int> v = base.vec;
  for (int c : zeroed) v[static_cast<size_t>(c - 1)] = 0;
  return v;
}

std::pair<RefinedElement, RefinedElement> refine(const SignedVector& x, const SignedVector& y,
                                                 const FElement& p1, const FElement& p2) {
  const size_t n = x.size();
  if (y.size() != n || p1.vec.size() != n || p2.vec.size() != n)
    fail(ErrorCode::DimensionMismatch, "vector lengths differ");
  if (!is_covered_by(x, to_signed(p1.vec))) fail(ErrorCode::NotCovered, "x is not covered by p1");
  if (!is_covered_by(y, to_signed(p2.vec))) fail(ErrorCode::NotCovered, "y is not covered by p2");

  SignedVector z = add(x, y);
  RefinedElement q1{p1, {}};
  RefinedElement q2{p2, {}};
  for (size_t c = 0; c < n; ++c) {
    const int a = sgn(p1.vec[c]);
    const int b = sgn(p2.vec[c]);
    if (a * b >= 0) continue;  // no clash: keep both coordinates
    const int sz = sgn(z[c]);
    if (a * sz >= 0)
      q2.zeroed.push_back(static_cast<int>(c) + 1);
    else
      q1.zeroed.push_back(static_cast<int>(c) + 1);  // then p2 agrees with z in sign
  }
  return {std::move(q1), std::move(q2)};
}

std::pair<FElement, FElement> sum_cover(const SignedVector& x, const SignedVector& y) {
  if (x.size() != y.size()) fail(ErrorCode::DimensionMismatch, "vector lengths differ");
  const int n = static_cast<int>(x.size());

  auto p1 = f_cover_witness(x);
  if (!p1) fail(ErrorCode::NotFCovered, "x is not covered by any family element");
  auto p2 = f_cover_witness(y);
  if (!p2) fail(ErrorCode::NotFCovered, "y is not covered by any family element");

  auto [q1, q2] = refine(x, y, *p1, *p2);

  std::pair<FElement, FElement> out{*p1, *p2};
  if (!q1.zeroed.empty() || !q2.zeroed.empty()) {
    // A clash coordinate was dropped; s = q1 + q2 now has at most three
    // nonzero entries, all in {-1, 0, 1} and never of one sign only.
    // Rewrite s as an exact family sum.
    std::vector<Int> s = q1.realized();
    {
      std::vector<Int> s2 = q2.realized();
      for (size_t c = 0; c < s.size(); ++c) s[c] += s2[c];
    }
    std::vector<int> plus, minus;
    for (size_t c = 0; c < s.size(); ++c) {
      if (s[c] > 0) plus.push_back(static_cast<int>(c) + 1);
      if (s[c] < 0) minus.push_back(static_cast<int>(c) + 1);
    }
    auto unit_at = [&](int c) {
      bool pos = std::find(plus.begin(), plus.end(), c) != plus.end();
      return pos ? f_plus_unit(n, c) : f_minus_unit(n, c);
    };
    const size_t nz = plus.size() + minus.size();
    if (plus.size() == 2 && minus.size() == 1) {
      out = {f_p(n, minus[0], plus[0]), f_plus_unit(n, plus[1])};
    } else if (plus.size() == 1 && minus.size() == 2) {
      out = {f_p(n, minus[0], plus[0]), f_minus_unit(n, minus[1])};
    } else if (nz == 2) {
      std::vector<int> both = plus;
      both.insert(both.end(), minus.begin(), minus.end());
      std::sort(both.begin(), both.end());
      out = {unit_at(both[0]), unit_at(both[1])};
    } else if (nz == 1) {
      FElement u = plus.empty() ? f_minus_unit(n, minus[0]) : f_plus_unit(n, plus[0]);
      out = {u, u};
    } else {
      fail(ErrorCode::InternalInfeasibility, "unexpected refined sum shape in sum_cover");
    }
  }

  SignedVector covered = to_signed(out.first.vec);
  {
    SignedVector second = to_signed(out.second.vec);
    for (size_t c = 0; c < covered.size(); ++c) covered[c] += second[c];
  }
  if (!is_covered_by(add(x, y), covered))
    fail(ErrorCode::InternalInfeasibility, "sum_cover output fails to cover x + y");
  return out;
}

SignedVector row_reduce_step(const SignedVector& x, const SignedVector& y) {
  if (x.size() != y.size()) fail(ErrorCode::DimensionMismatch, "vector lengths differ");
  bool nonzero = false;
  for (const Rat& v : x)
    if (sgn(v) != 0) nonzero = true;
  if (!nonzero) fail(ErrorCode::ZeroVector, "x must be nonzero");
  if (!f_cover_witness(x)) fail(ErrorCode::NotFCovered, "x is not covered by any family element");
  if (!f_cover_witness(y)) fail(ErrorCode::NotFCovered, "y is not covered by any family element");

  size_t j = 0;
  Rat best(-1);
  for (size_t c = 0; c < x.size(); ++c) {
    Rat a = rat_abs(x[c]);
    if (a > best) {
      best = a;
      j = c;
    }
  }

  Rat factor = y[j] / x[j];
  SignedVector out(x.size());
  for (size_t c = 0; c < x.size(); ++c) out[c] = y[c] - factor * x[c];

  if (!f_cover_witness(out))
    fail(ErrorCode::NotFCovered, "row operation output escaped the family cover");
  return out;
}

DetBoundReport check_det_bound(const std::vector<SignedVector>& rows) {
  const size_t n = rows.size();
  if (n == 0) fail(ErrorCode::NotSquare, "empty matrix");
  for (const auto& row : rows)
    if (row.size() != n) fail(ErrorCode::NotSquare, "matrix is not square");

  auto family = f_family(static_cast<int>(n));
  std::vector<std::vector<int>> small;
  small.reserve(family.size());
  for (const FElement& f : family) small.push_back(small_vec(f.vec));

  DetBoundReport report;
  std::vector<int> sum(n);
  for (size_t r = 0; r < n; ++r) {
    auto need = coverage_need(rows[r]);
    bool oversize = false;
    for (int v : need)
      if (v > 2 || v < -2) oversize = true;
    if (oversize)
      fail(ErrorCode::HypothesisViolated,
           "row " + std::to_string(r + 1) + " is not covered by a family pair");

    bool single = false;
    for (const auto& f : small)
      if (need_covered(need, f)) {
        single = true;
        break;
      }
    if (single) {
      ++report.m;
      continue;  // single coverage implies pair coverage (f + f)
    }

    bool pair = false;
    for (size_t a = 0; a < small.size() && !pair; ++a)
      for (size_t b = a; b < small.size() && !pair; ++b) {
        for (size_t i = 0; i < n; ++i) sum[i] = small[a][i] + small[b][i];
        pair = need_covered(need, sum);
      }
    if (!pair)
      fail(ErrorCode::HypothesisViolated,
           "row " + std::to_string(r + 1) + " is not covered by a family pair");
  }

  // |det| via a row-wise clearing of denominators.
  IntMatrix im(n, std::vector<Int>(n));
  Int scale(1);
  for (size_t r = 0; r < n; ++r) {
    Int l(1);
    for (const Rat& v : rows[r]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    for (size_t c = 0; c < n; ++c) im[r][c] = Int(rows[r][c] * l);
    scale *= l;
  }
  report.det_abs = rat_abs(make_rat(det_exact(im), scale));
  report.bound = pow2(static_cast<unsigned long>(n) - static_cast<unsigned long>(report.m));
  report.holds = report.det_abs <= Rat(report.bound);
  return report;
}

}  // namespace spectra
