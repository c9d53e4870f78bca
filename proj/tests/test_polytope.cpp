#include "spectra/polytope.hpp"

#include <random>

#include "doctest.h"
#include "support/gen.hpp"

using namespace spectra;

namespace {

template <typename F>
std::optional<ErrorCode> thrown_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

Spectrum spec(std::initializer_list<long> values) {
  std::vector<Rat> v;
  for (long x : values) v.emplace_back(x);
  return Spectrum(std::move(v));
}

std::vector<Int> coeffs(std::initializer_list<long> values) {
  std::vector<Int> v;
  for (long x : values) v.emplace_back(x);
  return v;
}

RationalPoint point(std::initializer_list<long> values) {
  RationalPoint p;
  for (long x : values) p.emplace_back(x);
  return p;
}

IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix m;
  for (auto row : rows) m.push_back(coeffs(row));
  return m;
}

}  // namespace

TEST_CASE("build_system for n=2 with the triple present") {
  ConstraintSystem sys = build_system(TriangleProfile::from_triples(2, {{1, 1, 2}}));
  REQUIRE(sys.rows.size() == 4);
  CHECK(sys.rows[0].kind == ConstraintRow::Kind::TriplePos);
  CHECK(sys.rows[0].coeffs == coeffs({2, -1}));
  CHECK(sys.rows[0].rhs == 0);
  CHECK(sys.rows[1].kind == ConstraintRow::Kind::Gap);
  CHECK(sys.rows[1].coeffs == coeffs({-1, 1}));
  CHECK(sys.rows[1].rhs == 1);
  CHECK(sys.rows[2].coeffs == coeffs({1, 0}));
  CHECK(sys.rows[2].rhs == 1);
  CHECK(sys.rows[3].coeffs == coeffs({0, 1}));
  CHECK(sys.rows[3].rhs == 1);
}

TEST_CASE("build_system for n=2 with the triple absent negates the row") {
  ConstraintSystem sys = build_system(TriangleProfile::from_triples(2, {}));
  REQUIRE(sys.rows.size() == 4);
  CHECK(sys.rows[0].kind == ConstraintRow::Kind::TripleNeg);
  CHECK(sys.rows[0].coeffs == coeffs({-2, 1}));
  CHECK(sys.rows[0].rhs == 1);
  CHECK(sys.rows[1].coeffs == coeffs({-1, 1}));
}

TEST_CASE("build_system for n=1 is the single unit row") {
  ConstraintSystem sys = build_system(TriangleProfile::from_triples(1, {}));
  REQUIRE(sys.rows.size() == 1);
  CHECK(sys.rows[0].kind == ConstraintRow::Kind::Unit);
  CHECK(sys.rows[0].coeffs == coeffs({1}));
  CHECK(sys.rows[0].rhs == 1);
}

TEST_CASE("build_system rejects inconsistent profiles") {
  CHECK(thrown_code([] { build_system(TriangleProfile::from_triples(3, {{1, 1, 3}})); }) ==
        ErrorCode::InconsistentProfile);
}

TEST_CASE("systems agree exactly when profiles agree") {
  std::mt19937_64 rng(7201);
  for (int it = 0; it < 60; ++it) {
    Spectrum x = testgen::random_spectrum(rng, 1 + static_cast<int>(rng() % 6));
    Spectrum y = scale(x, testgen::random_positive_rat(rng));
    CHECK(build_system(profile(x)) == build_system(profile(y)));
  }
  CHECK_FALSE(build_system(profile(spec({1, 2}))) == build_system(profile(spec({1, 3}))));
}

TEST_CASE("contains checks every row exactly") {
  ConstraintSystem sys = build_system(profile(spec({1, 2})));
  CHECK(contains(sys, point({1, 2})));
  CHECK(!contains(sys, point({1, 3})));  // row (2,-1|0) gives 2-3 < 0
  CHECK(thrown_code([&] { contains(sys, point({1})); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("feasible_point scales by the worst rhs-1 slack") {
  CHECK(feasible_point(spec({1, 2})) == point({1, 2}));
  CHECK(feasible_point(Spectrum({make_rat(1, 2), Rat(1)})) == point({1, 2}));
  CHECK(feasible_point(spec({1, 3})) == point({1, 3}));
  std::mt19937_64 rng(7202);
  for (int it = 0; it < 100; ++it) {
    Spectrum x = testgen::random_spectrum(rng, 1 + static_cast<int>(rng() % 8));
    ConstraintSystem sys = build_system(profile(x));
    CHECK(contains(sys, feasible_point_in(sys, x)));
  }
}

TEST_CASE("purify_to_vertex on a point that is already a vertex") {
  ConstraintSystem sys = build_system(profile(spec({1, 2})));
  VertexCertificate cert = purify_to_vertex(sys, point({1, 2}));
  CHECK(cert.point == point({1, 2}));
  CHECK(cert.basis == std::vector<int>{0, 1});  // TriplePos(1,1,2), Gap(1,2)
  CHECK(cert.basis_det == 1);
  CHECK(verify_certificate(sys, cert));
}

TEST_CASE("purify_to_vertex keeps the negated triple row active for (1,3)") {
  ConstraintSystem sys = build_system(profile(spec({1, 3})));
  VertexCertificate cert = purify_to_vertex(sys, point({1, 3}));
  CHECK(cert.point == point({1, 3}));
  CHECK(cert.basis == std::vector<int>{0, 2});  // TripleNeg(1,1,2), Unit(1)
  CHECK(abs(cert.basis_det) == 1);
  CHECK(verify_certificate(sys, cert));
}

TEST_CASE("purify_to_vertex walks n=1 down to the unit bound") {
  ConstraintSystem sys = build_system(TriangleProfile::from_triples(1, {}));
  VertexCertificate cert = purify_to_vertex(sys, point({5}));
  CHECK(cert.point == point({1}));
  CHECK(cert.basis == std::vector<int>{0});
  CHECK(verify_certificate(sys, cert));
}

TEST_CASE("purify_to_vertex rejects infeasible starts") {
  ConstraintSystem sys = build_system(profile(spec({1, 2})));
  CHECK(thrown_code([&] { purify_to_vertex(sys, point({1, 3})); }) == ErrorCode::NotFeasible);
}

TEST_CASE("random purification certificates verify and preserve the profile") {
  std::mt19937_64 rng(7203);
  for (int it = 0; it < 150; ++it) {
    Spectrum x = testgen::random_spectrum(rng, 1 + static_cast<int>(rng() % 7));
    TriangleProfile prof = profile(x);
    ConstraintSystem sys = build_system(prof);
    VertexCertificate cert = purify_to_vertex(sys, feasible_point_in(sys, x));
    CHECK(verify_certificate(sys, cert));
    CHECK(profile(Spectrum(cert.point)) == prof);

    // Cross-check the point against an independent Cramer solve of the basis.
    IntMatrix bm;
    std::vector<Int> rhs;
    for (int r : cert.basis) {
      bm.push_back(sys.rows[static_cast<size_t>(r)].coeffs);
      rhs.emplace_back(sys.rows[static_cast<size_t>(r)].rhs);
    }
    CHECK(cramer_solve(bm, rhs) == cert.point);
  }
}

TEST_CASE("det_exact basics") {
  CHECK(det_exact(mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 1);
  CHECK(det_exact(mat({{2, -1}, {-1, 1}})) == 1);
  CHECK(det_exact(mat({{1, 2}, {1, 2}})) == 0);
  CHECK(det_exact(mat({{3, 1, 4}, {3, 1, 4}, {1, 5, 9}})) == 0);
  CHECK(thrown_code([] { det_exact(mat({{1, 2}})); }) == ErrorCode::NotSquare);
}

TEST_CASE("det_exact agrees with cofactor expansion") {
  std::mt19937_64 rng(7204);
  for (int it = 0; it < 400; ++it) {
    int n = 1 + static_cast<int>(rng() % 5);
    IntMatrix m = testgen::random_int_matrix(rng, n);
    CHECK(det_exact(m) == testgen::det_cofactor(m));
  }
}

TEST_CASE("cramer_solve") {
  CHECK(cramer_solve(mat({{1, 0}, {0, 1}}), coeffs({1, 2})) == point({1, 2}));
  CHECK(cramer_solve(mat({{1, 0}, {-1, 1}}), coeffs({1, 1})) == point({1, 2}));
  CHECK(cramer_solve(mat({{2, -1}, {-1, 1}}), coeffs({0, 1})) == point({1, 2}));
  CHECK(thrown_code([] { cramer_solve(mat({{1, 2}, {2, 4}}), coeffs({1, 1})); }) ==
        ErrorCode::SingularMatrix);
}

TEST_CASE("cramer_solve back-substitutes on random nonsingular systems") {
  std::mt19937_64 rng(7205);
  int done = 0;
  while (done < 200) {
    int n = 1 + static_cast<int>(rng() % 6);
    IntMatrix m = testgen::random_int_matrix(rng, n);
    if (sgn(det_exact(m)) == 0) continue;
    std::vector<Int> rhs(static_cast<size_t>(n));
    for (auto& v : rhs) v = Int(static_cast<long>(rng() % 19) - 9);
    RationalPoint y = cramer_solve(m, rhs);
    for (int r = 0; r < n; ++r) {
      Rat sum(0);
      for (int c = 0; c < n; ++c) sum += Rat(m[static_cast<size_t>(r)][static_cast<size_t>(c)]) *
                                         y[static_cast<size_t>(c)];
      CHECK(sum == rhs[static_cast<size_t>(r)]);
    }
    ++done;
  }
}

TEST_CASE("csv dump is stable") {
  ConstraintSystem sys = build_system(TriangleProfile::from_triples(2, {{1, 1, 2}}));
  CHECK(to_csv(sys) ==
        "TriplePos(1,1,2),2,-1,0\n"
        "Gap(1,2),-1,1,1\n"
        "Unit(1),1,0,1\n"
        "Unit(2),0,1,1\n");
}
