#include "spectra/spectrum.hpp"

#include <algorithm>
#include <sstream>

namespace spectra {

Spectrum::Spectrum(std::vector<Rat> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) fail(ErrorCode::EmptyInput, "a spectrum needs at least one entry");
  if (sgn(entries_.front()) <= 0)
    fail(ErrorCode::NonPositiveEntry, "entry 1 = " + format_rational(entries_.front()));
  for (size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i] <= entries_[i - 1])
      fail(ErrorCode::NotStrictlyIncreasing,
           "entry " + std::to_string(i + 1) + " = " + format_rational(entries_[i]) +
               " does not exceed its predecessor");
  }
}

std::string Spectrum::format() const {
  std::string out;
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ',';
    out += format_rational(entries_[i]);
  }
  return out;
}

IntegralSpectrum::IntegralSpectrum(std::vector<Int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) fail(ErrorCode::EmptyInput, "an integral spectrum needs at least one entry");
  if (entries_.front() < 1)
    fail(ErrorCode::NonPositiveEntry, "entry 1 = " + entries_.front().get_str());
  for (size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i] <= entries_[i - 1])
      fail(ErrorCode::NotStrictlyIncreasing,
           "entry " + std::to_string(i + 1) + " = " + entries_[i].get_str() +
               " does not exceed its predecessor");
  }
}

Spectrum IntegralSpectrum::to_spectrum() const {
  std::vector<Rat> rats;
  rats.reserve(entries_.size());
  for (const Int& e : entries_) rats.emplace_back(e);
  return Spectrum(std::move(rats));
}

std::string IntegralSpectrum::format() const {
  std::string out;
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ',';
    out += entries_[i].get_str();
  }
  return out;
}

bool valid_triple(int n, const TripleIndex& t) {
  return 1 <= t.i && t.i <= t.j && t.j < t.k && t.k <= n;
}

long long triple_count(int n) {
  // C(n+1, 3)
  long long m = n;
  return (m + 1) * m * (m - 1) / 6;
}

std::vector<TripleIndex> all_triples(int n) {
  std::vector<TripleIndex> out;
  out.reserve(static_cast<size_t>(triple_count(n)));
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) out.push_back({i, j, k});
  return out;
}

int triple_pos(int n, const TripleIndex& t) {
  if (!valid_triple(n, t))
    fail(ErrorCode::DimensionMismatch,
         "triple (" + std::to_string(t.i) + "," + std::to_string(t.j) + "," + std::to_string(t.k) +
             ") invalid for n=" + std::to_string(n));
  auto tri = [](long long m) { return m * (m + 1) / 2; };
  long long pos = 0;
  for (int ip = 1; ip < t.i; ++ip) pos += tri(n - ip);
  for (int jp = t.i; jp < t.j; ++jp) pos += n - jp;
  pos += t.k - t.j - 1;
  return static_cast<int>(pos);
}

TriangleProfile::TriangleProfile(int n, std::vector<bool> members)
    : n_(n), members_(std::move(members)) {
  if (n_ < 1) fail(ErrorCode::DimensionMismatch, "profile dimension must be >= 1");
  if (static_cast<long long>(members_.size()) != triple_count(n_))
    fail(ErrorCode::DimensionMismatch, "membership vector has wrong length for n=" + std::to_string(n_));
}

TriangleProfile TriangleProfile::from_triples(int n, const std::vector<TripleIndex>& members) {
  std::vector<bool> bits(static_cast<size_t>(triple_count(n)), false);
  for (const TripleIndex& t : members) bits[static_cast<size_t>(triple_pos(n, t))] = true;
  return TriangleProfile(n, std::move(bits));
}

bool TriangleProfile::contains(const TripleIndex& t) const {
  return members_[static_cast<size_t>(triple_pos(n_, t))];
}

std::vector<TripleIndex> TriangleProfile::member_triples() const {
  std::vector<TripleIndex> out;
  auto triples = all_triples(n_);
  for (size_t p = 0; p < triples.size(); ++p)
    if (members_[p]) out.push_back(triples[p]);
  return out;
}

std::string TriangleProfile::key() const {
  std::string s(members_.size(), '0');
  for (size_t p = 0; p < members_.size(); ++p)
    if (members_[p]) s[p] = '1';
  return s;
}

Spectrum parse_spectrum(std::string_view text) {
  size_t nonspace = 0;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) ++nonspace;
  if (nonspace == 0) fail(ErrorCode::EmptyInput, "no entries");

  std::vector<Rat> entries;
  size_t start = 0;
  while (true) {
    size_t comma = text.find(',', start);
    std::string_view token =
        comma == std::string_view::npos ? text.substr(start) : text.substr(start, comma - start);
    entries.push_back(parse_rational(token));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Spectrum(std::move(entries));
}

bool is_metric_triple(const Rat& a, const Rat& b, const Rat& c) {
  if (sgn(a) <= 0 || sgn(b) <= 0 || sgn(c) <= 0)
    fail(ErrorCode::NonPositiveInput, "metric triples are over positive values");
  return c <= a + b && b <= a + c && a <= b + c;
}

TriangleProfile profile(const Spectrum& x) {
  const int n = x.dim();
  auto triples = all_triples(n);
  std::vector<bool> bits(triples.size(), false);
  for (size_t p = 0; p < triples.size(); ++p) {
    const TripleIndex& t = triples[p];
    bits[p] = x.at(t.i) + x.at(t.j) >= x.at(t.k);
  }
  return TriangleProfile(n, std::move(bits));
}

bool equivalent(const Spectrum& x, const Spectrum& y) {
  if (x.dim() != y.dim())
    fail(ErrorCode::DimensionMismatch,
         std::to_string(x.dim()) + " vs " + std::to_string(y.dim()) + " entries");
  return profile(x) == profile(y);
}

Spectrum scale(const Spectrum& x, const Rat& alpha) {
  if (sgn(alpha) <= 0) fail(ErrorCode::NonPositiveScalar, "alpha = " + format_rational(alpha));
  std::vector<Rat> out;
  out.reserve(static_cast<size_t>(x.dim()));
  for (const Rat& e : x.entries()) out.push_back(e * alpha);
  return Spectrum(std::move(out));
}

bool monotone_consistent(const TriangleProfile& p) {
  // One-step dominance implications generate the full closure: a member
  // (i,j,k) forces (i+1,j,k), (i,j+1,k), (i,j,k-1) whenever those are valid.
  const int n = p.n();
  auto triples = all_triples(n);
  for (size_t pos = 0; pos < triples.size(); ++pos) {
    if (!p.members()[pos]) continue;
    const TripleIndex& t = triples[pos];
    TripleIndex up_i{t.i + 1, t.j, t.k};
    TripleIndex up_j{t.i, t.j + 1, t.k};
    TripleIndex down_k{t.i, t.j, t.k - 1};
    if (valid_triple(n, up_i) && !p.contains(up_i)) return false;
    if (valid_triple(n, up_j) && !p.contains(up_j)) return false;
    if (valid_triple(n, down_k) && !p.contains(down_k)) return false;
  }
  return true;
}

std::optional<FourValueCounterexample> four_value_check(const Spectrum& x) {
  const int n = x.dim();
  auto metric = [&](int p, int q, int r) {
    const Rat& a = x.at(p);
    const Rat& b = x.at(q);
    const Rat& c = x.at(r);
    return c <= a + b && b <= a + c && a <= b + c;
  };
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      for (int e = 1; e <= n; ++e) {
        if (!metric(a, b, e)) continue;
        for (int c = 1; c <= n; ++c)
          for (int d = 1; d <= n; ++d) {
            if (!metric(c, d, e)) continue;
            bool found = false;
            for (int f = 1; f <= n && !found; ++f)
              found = metric(b, c, f) && metric(a, d, f);
            if (!found) return FourValueCounterexample{{a, b, e}, {c, d, e}};
          }
      }
  return std::nullopt;
}

}  // namespace spectra
