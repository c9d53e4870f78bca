#include "spectra/polytope.hpp"

#include <algorithm>
#include <utility>

namespace spectra {

namespace {

std::string idx3(int i, int j, int k) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

}  // namespace

std::string ConstraintRow::label() const {
  switch (kind) {
    case Kind::TriplePos: return "TriplePos" + idx3(i, j, k);
    case Kind::TripleNeg: return "TripleNeg" + idx3(i, j, k);
    case Kind::Gap: return "Gap(" + std::to_string(i) + "," + std::to_string(j) + ")";
    case Kind::Unit: return "Unit(" + std::to_string(i) + ")";
  }
  return "?";
}

ConstraintSystem build_system(const TriangleProfile& p) {
  if (!monotone_consistent(p))
    fail(ErrorCode::InconsistentProfile, "profile violates the dominance closure rule");

  const int n = p.n();
  ConstraintSystem sys;
  sys.n = n;

  auto triples = all_triples(n);
  for (size_t pos = 0; pos < triples.size(); ++pos) {
    const TripleIndex& t = triples[pos];
    ConstraintRow row;
    row.i = t.i;
    row.j = t.j;
    row.k = t.k;
    row.coeffs.assign(static_cast<size_t>(n), Int(0));
    if (p.members()[pos]) {
      row.kind = ConstraintRow::Kind::TriplePos;
      row.rhs = 0;
      row.coeffs[static_cast<size_t>(t.i - 1)] += 1;
      row.coeffs[static_cast<size_t>(t.j - 1)] += 1;
      row.coeffs[static_cast<size_t>(t.k - 1)] -= 1;
    } else {
      row.kind = ConstraintRow::Kind::TripleNeg;
      row.rhs = 1;
      row.coeffs[static_cast<size_t>(t.i - 1)] -= 1;
      row.coeffs[static_cast<size_t>(t.j - 1)] -= 1;
      row.coeffs[static_cast<size_t>(t.k - 1)] += 1;
    }
    sys.rows.push_back(std::move(row));
  }

  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      ConstraintRow row;
      row.kind = ConstraintRow::Kind::Gap;
      row.i = i;
      row.j = j;
      row.rhs = 1;
      row.coeffs.assign(static_cast<size_t>(n), Int(0));
      row.coeffs[static_cast<size_t>(i - 1)] = -1;
      row.coeffs[static_cast<size_t>(j - 1)] = 1;
      sys.rows.push_back(std::move(row));
    }

  for (int i = 1; i <= n; ++i) {
    ConstraintRow row;
    row.kind = ConstraintRow::Kind::Unit;
    row.i = i;
    row.rhs = 1;
    row.coeffs.assign(static_cast<size_t>(n), Int(0));
    row.coeffs[static_cast<size_t>(i - 1)] = 1;
    sys.rows.push_back(std::move(row));
  }

  return sys;
}

Rat row_dot(const ConstraintRow& row, const RationalPoint& pt) {
  Rat sum(0);
  for (size_t c = 0; c < pt.size(); ++c) {
    int s = sgn(row.coeffs[c]);
    if (s == 0) continue;
    sum += Rat(row.coeffs[c]) * pt[c];
  }
  return sum;
}

bool contains(const ConstraintSystem& sys, const RationalPoint& pt) {
  if (static_cast<int>(pt.size()) != sys.n)
    fail(ErrorCode::DimensionMismatch,
         "point has " + std::to_string(pt.size()) + " coordinates, system expects " +
             std::to_string(sys.n));
  for (const ConstraintRow& row : sys.rows)
    if (row_dot(row, pt) < row.rhs) return false;
  return true;
}

RationalPoint feasible_point_in(const ConstraintSystem& sys, const Spectrum& x) {
  if (x.dim() != sys.n) fail(ErrorCode::DimensionMismatch, "spectrum/system dimensions differ");
  Rat alpha(1);
  for (const ConstraintRow& row : sys.rows) {
    Rat value = row_dot(row, x.entries());
    if (row.rhs == 1) {
      if (sgn(value) <= 0)
        fail(ErrorCode::InternalInfeasibility,
             "row " + row.label() + " has nonpositive value on its own spectrum");
      Rat needed = 1 / value;
      if (needed > alpha) alpha = needed;
    } else if (sgn(value) < 0) {
      fail(ErrorCode::InternalInfeasibility,
           "row " + row.label() + " is negative on its own spectrum");
    }
  }
  RationalPoint out;
  out.reserve(x.entries().size());
  for (const Rat& e : x.entries()) out.push_back(e * alpha);
  if (!contains(sys, out))
    fail(ErrorCode::InternalInfeasibility, "scaled spectrum escaped its own polyhedron");
  return out;
}

RationalPoint feasible_point(const Spectrum& x) {
  return feasible_point_in(build_system(profile(x)), x);
}

namespace {

// Incremental exact Gaussian elimination; keeps a forward-reduced row per pivot.
class OnlineGauss {
 public:
  explicit OnlineGauss(int n) : n_(n) {}

  int rank() const { return static_cast<int>(rows_.size()); }

  // Reduces the row against the stored set; stores it and returns true when
  // it contributes a new pivot.
  bool add(const std::vector<Int>& coeffs) {
    std::vector<Rat> cur(coeffs.size());
    for (size_t c = 0; c < coeffs.size(); ++c) cur[c] = Rat(coeffs[c]);
    for (size_t r = 0; r < rows_.size(); ++r) {
      const int pc = pivot_[r];
      if (sgn(cur[static_cast<size_t>(pc)]) == 0) continue;
      Rat factor = cur[static_cast<size_t>(pc)] / rows_[r][static_cast<size_t>(pc)];
      for (int c = pc; c < n_; ++c)
        cur[static_cast<size_t>(c)] -= factor * rows_[r][static_cast<size_t>(c)];
    }
    for (int c = 0; c < n_; ++c) {
      if (sgn(cur[static_cast<size_t>(c)]) != 0) {
        rows_.push_back(std::move(cur));
        pivot_.push_back(c);
        return true;
      }
    }
    return false;
  }

  // A nonzero integer direction annihilated by every stored row; the
  // lexicographically smallest free coordinate is set to one.
  std::vector<Int> null_direction() const {
    std::vector<bool> is_pivot(static_cast<size_t>(n_), false);
    for (int pc : pivot_) is_pivot[static_cast<size_t>(pc)] = true;
    int free_col = -1;
    for (int c = 0; c < n_; ++c)
      if (!is_pivot[static_cast<size_t>(c)]) {
        free_col = c;
        break;
      }
    if (free_col < 0) fail(ErrorCode::InternalInfeasibility, "no free coordinate at full rank");

    std::vector<Rat> d(static_cast<size_t>(n_), Rat(0));
    d[static_cast<size_t>(free_col)] = 1;

    std::vector<size_t> order(rows_.size());
    for (size_t r = 0; r < rows_.size(); ++r) order[r] = r;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return pivot_[a] < pivot_[b]; });
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const auto& row = rows_[*it];
      const int pc = pivot_[*it];
      Rat sum(0);
      for (int c = pc + 1; c < n_; ++c) sum += row[static_cast<size_t>(c)] * d[static_cast<size_t>(c)];
      d[static_cast<size_t>(pc)] = -sum / row[static_cast<size_t>(pc)];
    }

    Int den(1);
    for (const Rat& v : d) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    std::vector<Int> out(d.size());
    Int g(0);
    for (size_t c = 0; c < d.size(); ++c) {
      out[c] = Int(d[c] * den);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[c].get_mpz_t());
    }
    if (g > 1)
      for (Int& v : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return out;
  }

 private:
  int n_;
  std::vector<std::vector<Rat>> rows_;
  std::vector<int> pivot_;
};

// Point stored as num/den with a single positive denominator; keeps all the
// slack and ray arithmetic in integers.
struct ScaledPoint {
  std::vector<Int> num;
  Int den;

  static ScaledPoint from(const RationalPoint& p) {
    ScaledPoint sp;
    sp.den = 1;
    for (const Rat& v : p) mpz_lcm(sp.den.get_mpz_t(), sp.den.get_mpz_t(), v.get_den_mpz_t());
    sp.num.reserve(p.size());
    for (const Rat& v : p) sp.num.push_back(Int(v * sp.den));
    return sp;
  }

  void normalize() {
    Int g = den;
    for (const Int& v : num) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      if (g == 1) return;
    }
    if (g > 1) {
      mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
      for (Int& v : num) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
  }

  RationalPoint to_rational() const {
    RationalPoint out;
    out.reserve(num.size());
    for (const Int& v : num) out.push_back(make_rat(v, den));
    return out;
  }
};

Int int_dot(const std::vector<Int>& coeffs, const std::vector<Int>& vec) {
  Int sum(0);
  for (size_t c = 0; c < coeffs.size(); ++c) {
    int s = sgn(coeffs[c]);
    if (s == 0) continue;
    if (coeffs[c] == 1)
      sum += vec[c];
    else if (coeffs[c] == -1)
      sum -= vec[c];
    else
      sum += coeffs[c] * vec[c];
  }
  return sum;
}

}  // namespace

VertexCertificate purify_to_vertex(const ConstraintSystem& sys, const RationalPoint& start) {
  if (static_cast<int>(start.size()) != sys.n)
    fail(ErrorCode::DimensionMismatch, "start point has the wrong dimension");
  if (!contains(sys, start)) fail(ErrorCode::NotFeasible, "start point violates a row");

  const int n = sys.n;
  const size_t nrows = sys.rows.size();
  ScaledPoint pt = ScaledPoint::from(start);

  for (int iter = 0; iter <= n + 1; ++iter) {
    std::vector<Int> slack(nrows);
    std::vector<int> active;
    for (size_t r = 0; r < nrows; ++r) {
      slack[r] = int_dot(sys.rows[r].coeffs, pt.num);
      if (sys.rows[r].rhs != 0) slack[r] -= sys.rows[r].rhs * pt.den;
      if (sgn(slack[r]) == 0) active.push_back(static_cast<int>(r));
    }

    OnlineGauss gauss(n);
    for (int r : active) gauss.add(sys.rows[static_cast<size_t>(r)].coeffs);

    if (gauss.rank() == n) {
      OnlineGauss picker(n);
      std::vector<int> basis;
      for (int r : active) {
        if (picker.add(sys.rows[static_cast<size_t>(r)].coeffs)) {
          basis.push_back(r);
          if (static_cast<int>(basis.size()) == n) break;
        }
      }
      IntMatrix bm;
      bm.reserve(basis.size());
      for (int r : basis) bm.push_back(sys.rows[static_cast<size_t>(r)].coeffs);
      Int det = det_exact(bm);
      if (sgn(det) == 0) fail(ErrorCode::InternalInfeasibility, "degenerate basis selection");
      return VertexCertificate{pt.to_rational(), std::move(basis), std::move(det)};
    }

    std::vector<Int> dir = gauss.null_direction();

    // Nearest newly tight row along +d and -d; lowest row index wins ties.
    bool plus_hit = false, minus_hit = false;
    Int plus_s(0), plus_r(0), minus_s(0), minus_r(0);
    for (size_t r = 0; r < nrows; ++r) {
      if (sgn(slack[r]) == 0) continue;
      Int rate = int_dot(sys.rows[r].coeffs, dir);
      int s = sgn(rate);
      if (s < 0) {
        Int blocker = -rate;
        if (!plus_hit || slack[r] * plus_r < plus_s * blocker) {
          plus_hit = true;
          plus_s = slack[r];
          plus_r = blocker;
        }
      } else if (s > 0) {
        if (!minus_hit || slack[r] * minus_r < minus_s * rate) {
          minus_hit = true;
          minus_s = slack[r];
          minus_r = rate;
        }
      }
    }

    if (!plus_hit && !minus_hit)
      fail(ErrorCode::UnboundedDirection, "line through the polyhedron; it should be pointed");

    bool go_plus = plus_hit && (!minus_hit || plus_s * minus_r <= minus_s * plus_r);
    const Int& step_s = go_plus ? plus_s : minus_s;
    const Int& step_r = go_plus ? plus_r : minus_r;
    for (size_t c = 0; c < pt.num.size(); ++c) {
      pt.num[c] *= step_r;
      if (go_plus)
        pt.num[c] += step_s * dir[c];
      else
        pt.num[c] -= step_s * dir[c];
    }
    pt.den *= step_r;
    pt.normalize();
  }

  fail(ErrorCode::InternalInfeasibility, "purification did not terminate in n steps");
}

bool verify_certificate(const ConstraintSystem& sys, const VertexCertificate& cert) {
  if (static_cast<int>(cert.point.size()) != sys.n) return false;
  if (static_cast<int>(cert.basis.size()) != sys.n) return false;
  if (!contains(sys, cert.point)) return false;
  IntMatrix bm;
  for (int r : cert.basis) {
    if (r < 0 || r >= static_cast<int>(sys.rows.size())) return false;
    const ConstraintRow& row = sys.rows[static_cast<size_t>(r)];
    if (row_dot(row, cert.point) != row.rhs) return false;
    bm.push_back(row.coeffs);
  }
  Int det = det_exact(bm);
  return sgn(det) != 0 && det == cert.basis_det;
}

Int det_exact(const IntMatrix& m) {
  const size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) fail(ErrorCode::NotSquare, "matrix is not square");
  if (n == 0) return Int(1);

  IntMatrix a = m;
  Int prev(1);
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    size_t piv = k;
    while (piv < n && sgn(a[piv][k]) == 0) ++piv;
    if (piv == n) return Int(0);
    if (piv != k) {
      std::swap(a[piv], a[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        Int t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : Int(-a[n - 1][n - 1]);
}

RationalPoint cramer_solve(const IntMatrix& b, const std::vector<Int>& rhs) {
  const size_t n = b.size();
  for (const auto& row : b)
    if (row.size() != n) fail(ErrorCode::NotSquare, "matrix is not square");
  if (rhs.size() != n) fail(ErrorCode::DimensionMismatch, "rhs length differs from matrix size");

  Int det = det_exact(b);
  if (sgn(det) == 0) fail(ErrorCode::SingularMatrix, "zero determinant");

  RationalPoint y(n);
  for (size_t col = 0; col < n; ++col) {
    IntMatrix bc = b;
    for (size_t r = 0; r < n; ++r) bc[r][col] = rhs[r];
    y[col] = make_rat(det_exact(bc), det);
  }

  for (size_t r = 0; r < n; ++r) {
    Rat sum(0);
    for (size_t c = 0; c < n; ++c) sum += Rat(b[r][c]) * y[c];
    if (sum != rhs[r])
      fail(ErrorCode::InternalInfeasibility, "back-substitution mismatch in cramer_solve");
  }
  return y;
}

std::string to_csv(const ConstraintSystem& sys) {
  std::string out;
  for (const ConstraintRow& row : sys.rows) {
    out += row.label();
    for (const Int& c : row.coeffs) {
      out += ',';
      out += c.get_str();
    }
    out += ',';
    out += std::to_string(row.rhs);
    out += '\n';
  }
  return out;
}

}  // namespace spectra
