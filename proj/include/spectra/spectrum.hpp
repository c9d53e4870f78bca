#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spectra/errors.hpp"
#include "spectra/rational.hpp"

namespace spectra {

/// Strictly increasing vector of positive exact rationals.
class Spectrum {
 public:
  explicit Spectrum(std::vector<Rat> entries);

  int dim() const { return static_cast<int>(entries_.size()); }
  const Rat& at(int i) const { return entries_[static_cast<size_t>(i - 1)]; }  // 1-based
  const std::vector<Rat>& entries() const { return entries_; }

  std::string format() const;  // comma-separated, parse_spectrum round-trips it

  bool operator==(const Spectrum&) const = default;

 private:
  std::vector<Rat> entries_;
};

/// Strictly increasing vector of integers, all >= 1.
class IntegralSpectrum {
 public:
  explicit IntegralSpectrum(std::vector<Int> entries);

  int dim() const { return static_cast<int>(entries_.size()); }
  const Int& at(int i) const { return entries_[static_cast<size_t>(i - 1)]; }  // 1-based
  const std::vector<Int>& entries() const { return entries_; }

  Spectrum to_spectrum() const;
  std::string format() const;

  bool operator==(const IntegralSpectrum&) const = default;

 private:
  std::vector<Int> entries_;
};

/// 1-based index triple with i <= j < k.
struct TripleIndex {
  int i = 0, j = 0, k = 0;
  auto operator<=>(const TripleIndex&) const = default;
};

bool valid_triple(int n, const TripleIndex& t);

/// Number of triples (i,j,k) with 1 <= i <= j < k <= n.
long long triple_count(int n);

/// All triples of dimension n in lexicographic (i,j,k) order.
std::vector<TripleIndex> all_triples(int n);

/// 0-based position of t in the lexicographic enumeration.
int triple_pos(int n, const TripleIndex& t);

/// Membership vector over all triples of a dimension, lexicographic order.
/// The profile is the complete invariant of spectrum equivalence.
class TriangleProfile {
 public:
  TriangleProfile(int n, std::vector<bool> members);
  static TriangleProfile from_triples(int n, const std::vector<TripleIndex>& members);

  int n() const { return n_; }
  const std::vector<bool>& members() const { return members_; }
  bool contains(const TripleIndex& t) const;
  std::vector<TripleIndex> member_triples() const;

  /// Bitstring over the lexicographic triple order ("1011..."); stable map key.
  std::string key() const;

  bool operator==(const TriangleProfile&) const = default;

 private:
  int n_;
  std::vector<bool> members_;
};

/// Comma-separated tokens, each "p/q" or a finite decimal.
Spectrum parse_spectrum(std::string_view text);

/// True iff (a,b,c) satisfies all three triangle inequalities. Inputs must be positive.
bool is_metric_triple(const Rat& a, const Rat& b, const Rat& c);

/// (i,j,k) is a member iff x_i + x_j >= x_k.
TriangleProfile profile(const Spectrum& x);

/// Profile equality; dimensions must match.
bool equivalent(const Spectrum& x, const Spectrum& y);

/// Entrywise multiplication by alpha > 0. Never changes the profile.
Spectrum scale(const Spectrum& x, const Rat& alpha);

/// Closure rule: a member (i,j,k) forces membership of every valid (i',j',k')
/// with i' >= i, j' >= j, k' <= k. Necessary for realizability.
bool monotone_consistent(const TriangleProfile& p);

struct FourValueCounterexample {
  std::array<int, 3> first;   // entry indices (a, b, e), 1-based
  std::array<int, 3> second;  // entry indices (c, d, e); e shared
};

/// Checks the 4-value condition on the entry set: for every two metric triples
/// (a,b,e), (c,d,e) there must be an entry f with (b,c,f) and (a,d,f) metric.
/// Returns the first failing pair in lexicographic order of entry indices, or
/// nullopt when the condition holds.
std::optional<FourValueCounterexample> four_value_check(const Spectrum& x);

}  // namespace spectra
