#include "spectra/rational.hpp"

#include <cctype>

#include "spectra/errors.hpp"

namespace spectra {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedToken: return "MalformedToken";
    case ErrorCode::NotStrictlyIncreasing: return "NotStrictlyIncreasing";
    case ErrorCode::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonPositiveScalar: return "NonPositiveScalar";
    case ErrorCode::InconsistentProfile: return "InconsistentProfile";
    case ErrorCode::NotFeasible: return "NotFeasible";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotCovered: return "NotCovered";
    case ErrorCode::NotFCovered: return "NotFCovered";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::CheckpointCorrupt: return "CheckpointCorrupt";
    case ErrorCode::InternalInfeasibility: return "InternalInfeasibility";
    case ErrorCode::UnboundedDirection: return "UnboundedDirection";
    case ErrorCode::BoundViolation: return "BoundViolation";
    case ErrorCode::EquivalenceViolation: return "EquivalenceViolation";
  }
  return "UnknownError";
}

int sgn(const Rat& x) { return mpq_sgn(x.get_mpq_t()); }

int sgn(const Int& x) { return mpz_sgn(x.get_mpz_t()); }

Rat rat_abs(const Rat& x) { return sgn(x) < 0 ? Rat(-x) : x; }

Int ceil_rat(const Rat& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Int pow2(unsigned long k) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

Rat make_rat(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rat parse_rational(std::string_view token) {
  std::string_view s = trim(token);
  if (s.empty()) fail(ErrorCode::MalformedToken, "empty token");

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
    if (s.empty()) fail(ErrorCode::MalformedToken, "sign without digits");
  }

  Rat value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      fail(ErrorCode::MalformedToken, "bad fraction '" + std::string(token) + "'");
    Int n{std::string(num), 10};
    Int d{std::string(den), 10};
    if (sgn(d) <= 0) fail(ErrorCode::MalformedToken, "denominator must be positive");
    value = make_rat(n, d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty())
      fail(ErrorCode::MalformedToken, "bare dot");
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
      fail(ErrorCode::MalformedToken, "bad decimal '" + std::string(token) + "'");
    Int scaled(std::string(whole) + std::string(frac), 10);
    Int den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    value = make_rat(scaled, den);
  } else {
    if (!all_digits(s)) fail(ErrorCode::MalformedToken, "bad integer '" + std::string(token) + "'");
    value = Rat(Int(std::string(s), 10));
  }

  if (negative) value = -value;
  return value;
}

std::string format_rational(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string format_int(const Int& x) { return x.get_str(); }

}  // namespace spectra
