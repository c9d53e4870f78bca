#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spectra/spectrum.hpp"

namespace spectra {

/// One equivalence class of dimension n: its profile, the lexicographically
/// least integral witness in [1, 2^n]^n, and (after verification) the least
/// witness inside the Conant box, when one exists.
struct ClassRecord {
  TriangleProfile profile;
  IntegralSpectrum canonical_witness;
  std::optional<IntegralSpectrum> conant_witness;
  bool conant_searched = false;

  enum class Status { Satisfied, NoWitnessFound };
  Status status() const {
    return conant_witness ? Status::Satisfied : Status::NoWitnessFound;
  }
};

/// Resumable position of an interrupted enumeration.
struct EnumCursor {
  std::string strategy;  // "box" or "profile"
  int total_units = 0;
  std::vector<int> completed_units;  // ascending unit ids
};

struct ClassAtlas {
  int n = 0;
  std::vector<ClassRecord> records;  // sorted by profile key
  bool complete = false;
  EnumCursor cursor;
};

struct SearchOptions {
  int jobs = 1;
  /// Max work items (enumeration units, then classes) completed in this call;
  /// on exhaustion the result carries complete = false and a cursor.
  std::optional<long long> budget;
  /// Append-only checkpoint file; empty disables checkpointing.
  std::string checkpoint_path;
};

/// DFS over strictly increasing integer tuples in [1, 2^n]^n. Every class has
/// a representative in that box, so the atlas is exhaustive when complete.
ClassAtlas enumerate_classes(int n, const SearchOptions& opts = {});

/// DFS over monotone-consistent profiles, one triple at a time, pruning any
/// partial profile with no integral witness in the box. Produces the same
/// atlas as enumerate_classes.
ClassAtlas enumerate_classes_by_profile(int n, const SearchOptions& opts = {});

/// Lexicographically least strictly increasing integral witness of p inside
/// [lower, upper], or nullopt. Members force t_k <= t_i + t_j, non-members
/// force t_k >= t_i + t_j + 1.
std::optional<IntegralSpectrum> find_in_box(const TriangleProfile& p,
                                            const std::vector<Int>& lower,
                                            const std::vector<Int>& upper);

std::vector<Int> conant_lower(int n);  // 2^i - 1
std::vector<Int> conant_upper(int n);  // 2^n - 1

struct VerificationReport {
  int n = 0;
  ClassAtlas atlas;
  long long satisfied = 0;
  long long unsatisfied = 0;
  double wall_seconds = 0.0;
  bool complete = false;
};

/// Enumerates every class of dimension n (box strategy for n <= 5, profile
/// strategy above) and searches the Conant box for each. Witnesses are
/// re-verified independently of the search state before they are recorded.
VerificationReport verify_conant(int n, const SearchOptions& opts = {});

/// External atlas line: {"n":…, "triples":[[i,j,k],…], "witness":[…],
/// "conant_witness":[…]|null}
std::string atlas_record_line(const ClassRecord& r);
void write_atlas(std::ostream& out, const ClassAtlas& atlas);

}  // namespace spectra
