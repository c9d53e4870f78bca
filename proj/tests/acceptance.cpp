// Acceptance suite: every release-gating property in one binary, one PASS or
// FAIL line per criterion. Exact arithmetic everywhere, so every comparison
// is equality or an integer bound; there are no tolerances to tune.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spectra/canon.hpp"
#include "spectra/cover.hpp"
#include "spectra/polytope.hpp"
#include "spectra/search.hpp"
#include "spectra/spectrum.hpp"
#include "support/gen.hpp"

using namespace spectra;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run_criterion(int id, const std::string& name, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome.pass = false;
    outcome.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::ostringstream line;
  line << (outcome.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << name << " ["
       << outcome.detail << "] (" << secs << " s)";
  std::cout << line.str() << std::endl;
  if (!outcome.pass) ++failures;
}

// ---------------------------------------------------------------------------

Outcome criterion_bounded_representative() {
  const double limit_seconds = 120.0;
  auto t0 = Clock::now();
  long long checked = 0, bad = 0;
  for (int n = 1; n <= 8; ++n) {
    std::mt19937_64 rng(90000 + n);
    for (int it = 0; it < 1000; ++it) {
      Spectrum x = testgen::random_spectrum(rng, n);
      IntegralSpectrum y = integral_representative(x);
      bool ok = profile(y.to_spectrum()) == profile(x);
      ok = ok && y.at(n) <= pow2(static_cast<unsigned long>(n));
      for (int i = 1; i < n; ++i)
        ok = ok && pow2(static_cast<unsigned long>(n - i + 1)) * y.at(i) >= y.at(n);
      ++checked;
      if (!ok) ++bad;
    }
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  Outcome out;
  out.pass = bad == 0 && secs < limit_seconds;
  out.detail = std::to_string(checked) + " spectra, " + std::to_string(bad) + " failures, " +
               std::to_string(secs) + " s (limit 120)";
  return out;
}

Outcome criterion_band() {
  long long checked = 0, bad = 0;
  for (int n = 1; n <= 8; ++n) {
    std::mt19937_64 rng(90000 + n);  // same corpus as criterion 1
    const Int top = pow2(static_cast<unsigned long>(n) + 1);
    for (int it = 0; it < 1000; ++it) {
      Spectrum x = testgen::random_spectrum(rng, n);
      IntegralSpectrum y = conant_band(x);
      bool ok = y.at(n) == top && profile(y.to_spectrum()) == profile(x);
      for (int i = 1; i <= n; ++i)
        ok = ok && y.at(i) >= pow2(static_cast<unsigned long>(i)) && y.at(i) <= top;
      ++checked;
      if (!ok) ++bad;
    }
  }
  Outcome out;
  out.pass = bad == 0;
  out.detail = std::to_string(checked) + " spectra, " + std::to_string(bad) + " failures";
  return out;
}

Outcome criterion_verify_conant() {
  const double limit_seconds = 300.0;
  auto t0 = Clock::now();
  std::string detail;
  bool ok = true;
  for (int n = 1; n <= 5; ++n) {
    SearchOptions opts;
    opts.jobs = 8;
    VerificationReport rep = verify_conant(n, opts);
    ok = ok && rep.complete && rep.unsatisfied == 0 &&
         rep.satisfied == static_cast<long long>(rep.atlas.records.size());
    detail += "n=" + std::to_string(n) + ":" + std::to_string(rep.satisfied) + " ";
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  ok = ok && secs < limit_seconds;
  return Outcome{ok, detail + "all satisfied, " + std::to_string(secs) + " s (limit 300)"};
}

Outcome criterion_det_bound() {
  const double limit_seconds = 60.0;
  auto t0 = Clock::now();
  long long checked = 0, bad = 0;
  for (int n = 2; n <= 8; ++n) {
    std::mt19937_64 rng(91000 + n);
    auto fam = f_family(n);
    for (int it = 0; it < 10000; ++it) {
      int forced = static_cast<int>(rng() % (static_cast<unsigned>(n) + 1));
      std::vector<SignedVector> rows;
      rows.reserve(static_cast<size_t>(n));
      for (int r = 0; r < n; ++r) {
        if (r < forced) {
          rows.push_back(to_signed(fam[rng() % fam.size()].vec));
        } else {
          const auto& a = fam[rng() % fam.size()].vec;
          const auto& b = fam[rng() % fam.size()].vec;
          SignedVector row(static_cast<size_t>(n));
          for (size_t c = 0; c < row.size(); ++c) row[c] = Rat(a[c] + b[c]);
          rows.push_back(std::move(row));
        }
      }
      DetBoundReport rep = check_det_bound(rows);
      ++checked;
      if (!rep.holds || rep.m < forced) ++bad;
    }
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  Outcome out;
  out.pass = bad == 0 && secs < limit_seconds;
  out.detail = std::to_string(checked) + " matrices, " + std::to_string(bad) + " failures, " +
               std::to_string(secs) + " s (limit 60)";
  return out;
}

Outcome criterion_decomposition_calculus() {
  long long bad = 0;
  const int rounds = 10000;

  {
    std::mt19937_64 rng(92001);
    for (int it = 0; it < rounds; ++it) {
      int n = 1 + static_cast<int>(rng() % 6);
      SignedVector u = testgen::random_signed_vector(rng, n);
      SignedVector v = testgen::random_signed_vector(rng, n);
      SignedVector x = testgen::random_covered_by(rng, add(u, v));
      auto [xu, xv] = decompose(x, u, v);
      if (!is_covered_by(xu, u) || !is_covered_by(xv, v) || add(xu, xv) != x) ++bad;
    }
  }
  {
    std::mt19937_64 rng(92002);
    for (int it = 0; it < rounds; ++it) {
      int n = 2 + static_cast<int>(rng() % 5);
      auto fam = f_family(n);
      const FElement& p1 = fam[rng() % fam.size()];
      const FElement& p2 = fam[rng() % fam.size()];
      SignedVector x = testgen::random_covered_by(rng, to_signed(p1.vec));
      SignedVector y = testgen::random_covered_by(rng, to_signed(p2.vec));
      auto [q1, q2] = refine(x, y, p1, p2);
      bool ok = is_covered_by(to_signed(q1.realized()), to_signed(p1.vec)) &&
                is_covered_by(to_signed(q2.realized()), to_signed(p2.vec)) &&
                is_covered_by(add(x, y), add(to_signed(q1.realized()), to_signed(q2.realized())));
      if (!ok) ++bad;
    }
  }
  {
    std::mt19937_64 rng(92003);
    for (int it = 0; it < rounds; ++it) {
      int n = 2 + static_cast<int>(rng() % 5);
      auto fam = f_family(n);
      SignedVector x = testgen::random_covered_by(rng, to_signed(fam[rng() % fam.size()].vec));
      SignedVector y = testgen::random_covered_by(rng, to_signed(fam[rng() % fam.size()].vec));
      auto [f1, f2] = sum_cover(x, y);
      if (!is_covered_by(add(x, y), add(to_signed(f1.vec), to_signed(f2.vec)))) ++bad;
    }
  }
  {
    std::mt19937_64 rng(92004);
    int done = 0;
    while (done < rounds) {
      int n = 2 + static_cast<int>(rng() % 5);
      auto fam = f_family(n);
      SignedVector x = testgen::random_covered_by(rng, to_signed(fam[rng() % fam.size()].vec));
      SignedVector y = testgen::random_covered_by(rng, to_signed(fam[rng() % fam.size()].vec));
      bool nonzero = false;
      for (const Rat& e : x)
        if (sgn(e) != 0) nonzero = true;
      if (!nonzero) continue;
      SignedVector out = row_reduce_step(x, y);
      if (!f_cover_witness(out)) ++bad;
      ++done;
    }
  }

  Outcome out;
  out.pass = bad == 0;
  out.detail = "4 x " + std::to_string(rounds) + " instances, " + std::to_string(bad) + " failures";
  return out;
}

Outcome criterion_oracles() {
  long long bad = 0;

  {
    std::mt19937_64 rng(93001);
    for (int it = 0; it < 1000; ++it) {
      int n = 1 + static_cast<int>(rng() % 5);
      IntMatrix m = testgen::random_int_matrix(rng, n);
      if (det_exact(m) != testgen::det_cofactor(m)) ++bad;
    }
  }
  bool atlases_equal = true;
  for (int n = 1; n <= 4; ++n) {
    ClassAtlas a = enumerate_classes(n);
    ClassAtlas b = enumerate_classes_by_profile(n);
    std::ostringstream sa, sb;
    write_atlas(sa, a);
    write_atlas(sb, b);
    if (sa.str() != sb.str()) atlases_equal = false;
  }
  {
    std::mt19937_64 rng(93002);
    int done = 0;
    while (done < 1000) {
      int n = 1 + static_cast<int>(rng() % 6);
      IntMatrix m = testgen::random_int_matrix(rng, n);
      if (sgn(det_exact(m)) == 0) continue;
      std::vector<Int> rhs(static_cast<size_t>(n));
      for (auto& v : rhs) v = Int(static_cast<long>(rng() % 19) - 9);
      RationalPoint y = cramer_solve(m, rhs);
      for (size_t r = 0; r < static_cast<size_t>(n); ++r) {
        Rat sum(0);
        for (size_t c = 0; c < static_cast<size_t>(n); ++c) sum += Rat(m[r][c]) * y[c];
        if (sum != rhs[r]) ++bad;
      }
      ++done;
    }
  }

  Outcome out;
  out.pass = bad == 0 && atlases_equal;
  out.detail = "1000 determinants, atlases n<=4 " +
               std::string(atlases_equal ? "equal" : "DIFFER") + ", 1000 Cramer solves, " +
               std::to_string(bad) + " failures";
  return out;
}

Outcome criterion_cone_invariance() {
  long long bad = 0;
  {
    std::mt19937_64 rng(94001);
    for (int it = 0; it < 1000; ++it) {
      Spectrum x = testgen::random_spectrum(rng, 1 + static_cast<int>(rng() % 8));
      Rat alpha = testgen::random_positive_rat(rng);
      if (profile(scale(x, alpha)) != profile(x)) ++bad;
    }
  }
  {
    std::mt19937_64 rng(94002);
    for (int it = 0; it < 1000; ++it) {
      int n = 1 + static_cast<int>(rng() % 6);
      Spectrum x = testgen::random_spectrum(rng, n);
      Spectrum y = integral_representative(x).to_spectrum();  // equivalent, not collinear
      Rat alpha = testgen::random_positive_rat(rng);
      Rat beta = testgen::random_positive_rat(rng);
      std::vector<Rat> combo(static_cast<size_t>(n));
      for (size_t c = 0; c < combo.size(); ++c)
        combo[c] = alpha * x.entries()[c] + beta * y.entries()[c];
      if (profile(Spectrum(std::move(combo))) != profile(x)) ++bad;
    }
  }
  Outcome out;
  out.pass = bad == 0;
  out.detail = "1000 scalings + 1000 interior combinations, " + std::to_string(bad) + " failures";
  return out;
}

Outcome criterion_determinism_resume() {
  auto atlas_bytes = [](const ClassAtlas& atlas) {
    std::ostringstream out;
    write_atlas(out, atlas);
    return out.str();
  };

  std::string base = atlas_bytes(verify_conant(4, SearchOptions{1, std::nullopt, ""}).atlas);
  bool jobs_identical = true;
  for (int jobs : {4, 8}) {
    VerificationReport rep = verify_conant(4, SearchOptions{jobs, std::nullopt, ""});
    if (atlas_bytes(rep.atlas) != base) jobs_identical = false;
  }

  auto ckpt = (std::filesystem::temp_directory_path() / "spectra_acceptance_resume.ckpt").string();
  std::remove(ckpt.c_str());
  VerificationReport part = verify_conant(4, SearchOptions{4, 16 + 13, ckpt});
  bool interrupted = !part.complete;
  {
    // a kill mid-write leaves a torn trailing line; resume must shrug it off
    std::ofstream out(ckpt, std::ios::app | std::ios::binary);
    out << "{\"kind\":\"class\",\"profi";
  }
  VerificationReport resumed = verify_conant(4, SearchOptions{4, std::nullopt, ckpt});
  bool resume_identical = resumed.complete && atlas_bytes(resumed.atlas) == base;
  std::remove(ckpt.c_str());

  Outcome out;
  out.pass = jobs_identical && interrupted && resume_identical;
  out.detail = std::string("jobs {1,4,8} ") + (jobs_identical ? "identical" : "DIFFER") +
               ", resumed run " + (resume_identical ? "identical" : "DIFFERS");
  return out;
}

}  // namespace

int main() {
  run_criterion(1, "bounded integral representative (y_n <= 2^n, internal bounds)",
                criterion_bounded_representative);
  run_criterion(2, "band construction (2^i <= y_i <= 2^(n+1), top exact)", criterion_band);
  run_criterion(3, "Conant verification for n=1..5 at 8 workers", criterion_verify_conant);
  run_criterion(4, "determinant bound |det| <= 2^(n-m)", criterion_det_bound);
  run_criterion(5, "decomposition calculus postconditions", criterion_decomposition_calculus);
  run_criterion(6, "oracle equivalences (cofactor, strategies, back-substitution)",
                criterion_oracles);
  run_criterion(7, "cone and scale invariance of profiles", criterion_cone_invariance);
  run_criterion(8, "determinism across workers and checkpoint resume", criterion_determinism_resume);

  if (failures == 0)
    std::cout << "all criteria passed" << std::endl;
  else
    std::cout << failures << " criteria FAILED" << std::endl;
  return failures;
}
