#include "spectra/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <climits>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>
#include <utility>

#include "json.hpp"
#include "spectra/version.hpp"

namespace spectra {

namespace {

using nlohmann::ordered_json;
using Tuple = std::vector<long long>;

long long box_top(int n) { return 1LL << n; }

void check_dim(int n, int max_n, const char* who) {
  if (n < 1 || n > max_n)
    fail(ErrorCode::UnsupportedDimension,
         std::string(who) + " supports 1 <= n <= " + std::to_string(max_n));
}

long long to_ll(const Int& v) {
  if (!v.fits_slong_p()) fail(ErrorCode::UnsupportedDimension, "box bound exceeds 64 bits");
  return v.get_si();
}

// ---------------------------------------------------------------------------
// Witness search: lexicographically least strictly increasing tuple in a box,
// subject to decided triple constraints. state: +1 member, -1 non-member,
// 0 undecided.
// ---------------------------------------------------------------------------

class WitnessSearch {
 public:
  WitnessSearch(int n, Tuple lower, Tuple upper)
      : n_(n), lower_(std::move(lower)), upper_(std::move(upper)), by_k_(static_cast<size_t>(n) + 1) {
    auto triples = all_triples(n);
    for (size_t p = 0; p < triples.size(); ++p)
      by_k_[static_cast<size_t>(triples[p].k)].push_back(
          Ref{triples[p].i, triples[p].j, static_cast<int>(p)});
  }

  std::optional<Tuple> solve(const std::vector<int8_t>& state) const {
    Tuple t(static_cast<size_t>(n_) + 1, 0);
    if (dfs(1, t, state)) return Tuple(t.begin() + 1, t.end());
    return std::nullopt;
  }

 private:
  struct Ref {
    int i, j, pos;
  };

  bool dfs(int k, Tuple& t, const std::vector<int8_t>& state) const {
    if (k > n_) return true;
    long long lo = lower_[static_cast<size_t>(k - 1)];
    long long hi = upper_[static_cast<size_t>(k - 1)];
    if (k > 1) lo = std::max(lo, t[static_cast<size_t>(k - 1)] + 1);
    for (const Ref& r : by_k_[static_cast<size_t>(k)]) {
      long long s = t[static_cast<size_t>(r.i)] + t[static_cast<size_t>(r.j)];
      int8_t st = state[static_cast<size_t>(r.pos)];
      if (st > 0)
        hi = std::min(hi, s);
      else if (st < 0)
        lo = std::max(lo, s + 1);
    }
    for (long long v = lo; v <= hi; ++v) {
      t[static_cast<size_t>(k)] = v;
      if (future_feasible(k, t, state) && dfs(k + 1, t, state)) return true;
    }
    t[static_cast<size_t>(k)] = 0;
    return false;
  }

  // One-step interval propagation over the unassigned positions.
  bool future_feasible(int k, const Tuple& t, const std::vector<int8_t>& state) const {
    for (int k2 = k + 1; k2 <= n_; ++k2) {
      long long lo = std::max(lower_[static_cast<size_t>(k2 - 1)],
                              t[static_cast<size_t>(k)] + (k2 - k));
      long long hi = upper_[static_cast<size_t>(k2 - 1)];
      for (const Ref& r : by_k_[static_cast<size_t>(k2)]) {
        if (r.j > k) continue;  // involves an unassigned value
        long long s = t[static_cast<size_t>(r.i)] + t[static_cast<size_t>(r.j)];
        int8_t st = state[static_cast<size_t>(r.pos)];
        if (st > 0)
          hi = std::min(hi, s);
        else if (st < 0)
          lo = std::max(lo, s + 1);
      }
      if (lo > hi) return false;
    }
    return true;
  }

  int n_;
  Tuple lower_, upper_;
  std::vector<std::vector<Ref>> by_k_;
};

// ---------------------------------------------------------------------------
// Work units. Box strategy: one unit per first coordinate. Profile strategy:
// one unit per membership assignment of the first k_prefix triples.
// ---------------------------------------------------------------------------

struct UnitClasses {
  std::map<std::vector<bool>, Tuple> classes;  // profile bits -> lex-least witness
};

struct TripleRef {
  int i, j, pos;
};

void box_dfs(int n, int level, Tuple& t, std::vector<bool>& bits,
             const std::vector<std::vector<TripleRef>>& by_k, UnitClasses& out) {
  const long long top = box_top(n);
  if (level == n) {
    // The profile over a completed prefix changes only when t_n passes a sum
    // t_i + t_j, so it is enough to visit the least value of each interval.
    Tuple cands;
    cands.push_back(t[static_cast<size_t>(n - 1)] + 1);
    for (const TripleRef& r : by_k[static_cast<size_t>(n)]) {
      long long s = t[static_cast<size_t>(r.i)] + t[static_cast<size_t>(r.j)];
      if (s + 1 > cands.front() && s + 1 <= top) cands.push_back(s + 1);
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (long long v : cands) {
      if (v > top) continue;
      t[static_cast<size_t>(n)] = v;
      for (const TripleRef& r : by_k[static_cast<size_t>(n)])
        bits[static_cast<size_t>(r.pos)] =
            t[static_cast<size_t>(r.i)] + t[static_cast<size_t>(r.j)] >= v;
      auto it = out.classes.find(bits);
      if (it == out.classes.end()) out.classes.emplace(bits, Tuple(t.begin() + 1, t.end()));
    }
    t[static_cast<size_t>(n)] = 0;
    return;
  }
  for (long long v = t[static_cast<size_t>(level - 1)] + 1; v <= top; ++v) {
    t[static_cast<size_t>(level)] = v;
    for (const TripleRef& r : by_k[static_cast<size_t>(level)])
      bits[static_cast<size_t>(r.pos)] =
          t[static_cast<size_t>(r.i)] + t[static_cast<size_t>(r.j)] >= v;
    box_dfs(n, level + 1, t, bits, by_k, out);
  }
  t[static_cast<size_t>(level)] = 0;
}

UnitClasses run_box_unit(int n, int unit_id) {
  UnitClasses out;
  const long long t1 = unit_id + 1;
  if (t1 + n - 1 > box_top(n)) return out;  // no strictly increasing completion
  auto triples = all_triples(n);
  std::vector<std::vector<TripleRef>> by_k(static_cast<size_t>(n) + 1);
  for (size_t p = 0; p < triples.size(); ++p)
    by_k[static_cast<size_t>(triples[p].k)].push_back(
        TripleRef{triples[p].i, triples[p].j, static_cast<int>(p)});

  Tuple t(static_cast<size_t>(n) + 1, 0);
  t[1] = t1;
  std::vector<bool> bits(triples.size(), false);
  if (n == 1) {
    out.classes.emplace(bits, Tuple{t1});
    return out;
  }
  box_dfs(n, 2, t, bits, by_k, out);
  return out;
}

int profile_prefix_len(int n) {
  return static_cast<int>(std::min<long long>(triple_count(n), 10));
}

// DFS over the undecided triples; carries the lexicographically least witness
// of the current partial profile, which stays optimal along branches that
// agree with its own profile.
void profile_dfs(int n, size_t depth, std::vector<int8_t>& state, const Tuple& witness,
                 const std::vector<TripleIndex>& triples, const WitnessSearch& search,
                 UnitClasses& out) {
  if (depth == triples.size()) {
    std::vector<bool> bits(triples.size());
    for (size_t p = 0; p < triples.size(); ++p) bits[p] = state[p] > 0;
    out.classes.emplace(std::move(bits), witness);
    return;
  }
  const TripleIndex& tr = triples[depth];
  bool member = witness[static_cast<size_t>(tr.i - 1)] + witness[static_cast<size_t>(tr.j - 1)] >=
                witness[static_cast<size_t>(tr.k - 1)];

  state[depth] = member ? 1 : -1;
  profile_dfs(n, depth + 1, state, witness, triples, search, out);

  state[depth] = member ? -1 : 1;
  if (auto other = search.solve(state))
    profile_dfs(n, depth + 1, state, *other, triples, search, out);
  state[depth] = 0;
}

UnitClasses run_profile_unit(int n, int unit_id) {
  UnitClasses out;
  auto triples = all_triples(n);
  const int k_prefix = profile_prefix_len(n);
  std::vector<int8_t> state(triples.size(), 0);
  for (int b = 0; b < k_prefix; ++b)
    state[static_cast<size_t>(b)] = (unit_id >> b) & 1 ? 1 : -1;

  WitnessSearch search(n, Tuple(static_cast<size_t>(n), 1),
                       Tuple(static_cast<size_t>(n), box_top(n)));
  auto witness = search.solve(state);
  if (!witness) return out;  // unrealizable prefix
  profile_dfs(n, static_cast<size_t>(k_prefix), state, *witness, triples, search, out);
  return out;
}

// ---------------------------------------------------------------------------
// Checkpoint file: line-delimited JSON, append-only. A corrupt trailing line
// is truncated with a warning; corruption anywhere else is an error.
// ---------------------------------------------------------------------------

struct CheckpointData {
  std::map<int, UnitClasses> units;
  std::map<std::string, std::optional<Tuple>> classes;  // key -> witness or null
};

ordered_json tuple_json(const Tuple& t) {
  ordered_json a = ordered_json::array();
  for (long long v : t) a.push_back(v);
  return a;
}

Tuple tuple_from_json(const ordered_json& a) {
  Tuple t;
  for (const auto& v : a) t.push_back(v.get<long long>());
  return t;
}

class Checkpoint {
 public:
  Checkpoint(std::string path, int n, std::string strategy, int units)
      : path_(std::move(path)), n_(n), strategy_(std::move(strategy)), units_(units) {}

  bool enabled() const { return !path_.empty(); }

  CheckpointData load() {
    CheckpointData data;
    if (!enabled()) return data;
    std::ifstream in(path_, std::ios::binary);
    if (!in.is_open()) return data;
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    if (content.empty()) return data;

    std::vector<std::pair<size_t, std::string>> lines;  // offset, text
    size_t pos = 0;
    while (pos < content.size()) {
      size_t nl = content.find('\n', pos);
      std::string line =
          nl == std::string::npos ? content.substr(pos) : content.substr(pos, nl - pos);
      if (!line.empty()) lines.emplace_back(pos, line);
      if (nl == std::string::npos) break;
      pos = nl + 1;
    }

    for (size_t li = 0; li < lines.size(); ++li) {
      ordered_json j = ordered_json::parse(lines[li].second, nullptr, false);
      bool bad = j.is_discarded() || !j.is_object() || !j.contains("kind");
      if (bad) {
        if (li + 1 == lines.size()) {
          std::cerr << "warning: truncating corrupt trailing checkpoint line in " << path_ << "\n";
          truncate_at(lines[li].first);
          break;
        }
        fail(ErrorCode::CheckpointCorrupt, "unreadable line " + std::to_string(li + 1));
      }
      const std::string kind = j["kind"].get<std::string>();
      if (li == 0) {
        if (kind != "header")
          fail(ErrorCode::CheckpointCorrupt, "first line is not a header");
        if (j["n"].get<int>() != n_ || j["strategy"].get<std::string>() != strategy_ ||
            j["units"].get<int>() != units_)
          fail(ErrorCode::CheckpointCorrupt, "checkpoint belongs to a different run");
        has_header_ = true;
        continue;
      }
      if (kind == "unit") {
        UnitClasses uc;
        for (const auto& rec : j["classes"]) {
          std::string key = rec["profile"].get<std::string>();
          std::vector<bool> bits(key.size());
          for (size_t c = 0; c < key.size(); ++c) bits[c] = key[c] == '1';
          uc.classes.emplace(std::move(bits), tuple_from_json(rec["witness"]));
        }
        data.units[j["unit"].get<int>()] = std::move(uc);
      } else if (kind == "class") {
        std::optional<Tuple> w;
        if (!j["conant_witness"].is_null()) w = tuple_from_json(j["conant_witness"]);
        data.classes[j["profile"].get<std::string>()] = std::move(w);
      } else if (kind != "header") {
        fail(ErrorCode::CheckpointCorrupt, "unknown record kind '" + kind + "'");
      }
    }
    return data;
  }

  void append_unit(int unit, const UnitClasses& uc) {
    if (!enabled()) return;
    ordered_json j;
    j["kind"] = "unit";
    j["unit"] = unit;
    ordered_json arr = ordered_json::array();
    for (const auto& [bits, witness] : uc.classes) {
      ordered_json rec;
      std::string key(bits.size(), '0');
      for (size_t c = 0; c < bits.size(); ++c)
        if (bits[c]) key[c] = '1';
      rec["profile"] = key;
      rec["witness"] = tuple_json(witness);
      arr.push_back(std::move(rec));
    }
    j["classes"] = std::move(arr);
    append_line(j.dump());
  }

  void append_class(const std::string& key, const std::optional<Tuple>& witness) {
    if (!enabled()) return;
    ordered_json j;
    j["kind"] = "class";
    j["profile"] = key;
    j["conant_witness"] = witness ? tuple_json(*witness) : ordered_json(nullptr);
    append_line(j.dump());
  }

 private:
  void truncate_at(size_t offset) {
    std::filesystem::resize_file(path_, offset);
  }

  void append_line(const std::string& line) {
    std::lock_guard<std::mutex> lock(mutex_);
    std::ofstream out(path_, std::ios::app | std::ios::binary);
    if (!has_header_) {
      ordered_json h;
      h["kind"] = "header";
      h["n"] = n_;
      h["strategy"] = strategy_;
      h["units"] = units_;
      h["version"] = std::string(kVersion);
      out << h.dump() << '\n';
      has_header_ = true;
    }
    out << line << '\n';
  }

  std::string path_;
  int n_;
  std::string strategy_;
  int units_;
  bool has_header_ = false;
  std::mutex mutex_;
};

// ---------------------------------------------------------------------------
// Shared enumeration driver.
// ---------------------------------------------------------------------------

struct EnumSetup {
  int n = 0;
  std::string strategy;
  int total_units = 0;
};

EnumSetup make_setup(int n, const std::string& strategy) {
  EnumSetup s;
  s.n = n;
  s.strategy = strategy;
  s.total_units = strategy == "box" ? static_cast<int>(box_top(n))
                                    : 1 << profile_prefix_len(n);
  return s;
}

UnitClasses run_unit(const EnumSetup& setup, int unit_id) {
  return setup.strategy == "box" ? run_box_unit(setup.n, unit_id)
                                 : run_profile_unit(setup.n, unit_id);
}

IntegralSpectrum tuple_to_spectrum(const Tuple& t) {
  std::vector<Int> e;
  e.reserve(t.size());
  for (long long v : t) e.emplace_back(static_cast<long>(v));
  return IntegralSpectrum(std::move(e));
}

// Runs the missing units (parallel, budget-limited), merges with checkpointed
// ones, and produces the sorted atlas.
ClassAtlas enumerate_impl(int n, const SearchOptions& opts, const std::string& strategy,
                          Checkpoint* cp, CheckpointData* data, long long budget) {
  check_dim(n, 8, "class enumeration");
  EnumSetup setup = make_setup(n, strategy);

  std::vector<int> todo;
  for (int u = 0; u < setup.total_units; ++u)
    if (!data->units.count(u)) todo.push_back(u);

  std::atomic<size_t> next{0};
  std::atomic<long long> allowance{budget};
  std::mutex merge_mutex;
  const int jobs = std::max(1, opts.jobs);

  auto worker = [&]() {
    while (true) {
      if (allowance.fetch_sub(1) <= 0) return;
      size_t idx = next.fetch_add(1);
      if (idx >= todo.size()) return;
      int unit = todo[idx];
      UnitClasses uc = run_unit(setup, unit);
      std::lock_guard<std::mutex> lock(merge_mutex);
      cp->append_unit(unit, uc);
      data->units[unit] = std::move(uc);
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(jobs));
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  ClassAtlas atlas;
  atlas.n = n;
  atlas.cursor.strategy = strategy;
  atlas.cursor.total_units = setup.total_units;
  for (const auto& [unit, uc] : data->units) {
    (void)uc;
    atlas.cursor.completed_units.push_back(unit);
  }
  atlas.complete = static_cast<int>(data->units.size()) == setup.total_units;

  std::map<std::vector<bool>, Tuple> merged;
  for (const auto& [unit, uc] : data->units)
    for (const auto& [bits, witness] : uc.classes)
      merged.emplace(bits, witness);  // lower unit id wins; map iteration is ordered

  atlas.records.reserve(merged.size());
  for (const auto& [bits, witness] : merged)
    atlas.records.push_back(
        ClassRecord{TriangleProfile(n, bits), tuple_to_spectrum(witness), std::nullopt, false});
  return atlas;
}

ClassAtlas enumerate_with_strategy(int n, const SearchOptions& opts, const std::string& strategy) {
  check_dim(n, 8, "class enumeration");
  EnumSetup setup = make_setup(n, strategy);
  Checkpoint cp(opts.checkpoint_path, n, strategy, setup.total_units);
  CheckpointData data = cp.load();
  return enumerate_impl(n, opts, strategy, &cp, &data, opts.budget.value_or(LLONG_MAX));
}

}  // namespace

ClassAtlas enumerate_classes(int n, const SearchOptions& opts) {
  return enumerate_with_strategy(n, opts, "box");
}

ClassAtlas enumerate_classes_by_profile(int n, const SearchOptions& opts) {
  return enumerate_with_strategy(n, opts, "profile");
}

std::optional<IntegralSpectrum> find_in_box(const TriangleProfile& p, const std::vector<Int>& lower,
                                            const std::vector<Int>& upper) {
  const int n = p.n();
  if (static_cast<int>(lower.size()) != n || static_cast<int>(upper.size()) != n)
    fail(ErrorCode::DimensionMismatch, "box bounds must have length n");
  Tuple lo(lower.size()), hi(upper.size());
  for (size_t c = 0; c < lower.size(); ++c) {
    lo[c] = to_ll(lower[c]);
    hi[c] = to_ll(upper[c]);
  }
  std::vector<int8_t> state(p.members().size());
  for (size_t b = 0; b < p.members().size(); ++b) state[b] = p.members()[b] ? 1 : -1;
  WitnessSearch search(n, std::move(lo), std::move(hi));
  auto t = search.solve(state);
  if (!t) return std::nullopt;
  return tuple_to_spectrum(*t);
}

std::vector<Int> conant_lower(int n) {
  std::vector<Int> v;
  v.reserve(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) v.push_back(pow2(static_cast<unsigned long>(i)) - 1);
  return v;
}

std::vector<Int> conant_upper(int n) {
  std::vector<Int> v(static_cast<size_t>(n), pow2(static_cast<unsigned long>(n)) - 1);
  return v;
}

VerificationReport verify_conant(int n, const SearchOptions& opts) {
  check_dim(n, 7, "verify_conant");
  const auto start_time = std::chrono::steady_clock::now();

  const std::string strategy = n <= 5 ? "box" : "profile";
  EnumSetup setup = make_setup(n, strategy);
  Checkpoint cp(opts.checkpoint_path, n, strategy, setup.total_units);
  CheckpointData data = cp.load();

  const long long total_budget = opts.budget.value_or(LLONG_MAX);
  const long long units_before = static_cast<long long>(data.units.size());
  ClassAtlas atlas = enumerate_impl(n, opts, strategy, &cp, &data, total_budget);
  const long long units_done_now = static_cast<long long>(data.units.size()) - units_before;
  const long long budget = total_budget == LLONG_MAX ? LLONG_MAX : total_budget - units_done_now;

  VerificationReport report;
  report.n = n;

  if (!atlas.complete) {
    report.atlas = std::move(atlas);
    report.complete = false;
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
    return report;
  }

  const std::vector<Int> lo = conant_lower(n);
  const std::vector<Int> hi = conant_upper(n);

  std::vector<size_t> todo;
  for (size_t idx = 0; idx < atlas.records.size(); ++idx) {
    ClassRecord& rec = atlas.records[idx];
    auto it = data.classes.find(rec.profile.key());
    if (it != data.classes.end()) {
      rec.conant_searched = true;
      if (it->second) rec.conant_witness = tuple_to_spectrum(*it->second);
    } else {
      todo.push_back(idx);
    }
  }

  std::atomic<size_t> next{0};
  std::atomic<long long> allowance{budget};
  std::mutex record_mutex;
  std::optional<Error> worker_error;

  auto verify_one = [&](size_t idx) {
    ClassRecord& rec = atlas.records[idx];
    auto witness = find_in_box(rec.profile, lo, hi);
    if (witness) {
      // Independent re-check through the profile machinery, not search state.
      if (profile(witness->to_spectrum()) != rec.profile)
        fail(ErrorCode::InternalInfeasibility, "conant witness fails profile re-verification");
      for (int i = 1; i <= n; ++i)
        if (witness->at(i) < lo[static_cast<size_t>(i - 1)] ||
            witness->at(i) > hi[static_cast<size_t>(i - 1)])
          fail(ErrorCode::InternalInfeasibility, "conant witness escapes the box");
    }
    std::optional<Tuple> as_tuple;
    if (witness) {
      as_tuple.emplace();
      for (const Int& v : witness->entries()) as_tuple->push_back(to_ll(v));
    }
    std::lock_guard<std::mutex> lock(record_mutex);
    rec.conant_searched = true;
    if (witness) rec.conant_witness = std::move(witness);
    cp.append_class(rec.profile.key(), as_tuple);
  };

  auto worker = [&]() {
    while (true) {
      if (allowance.fetch_sub(1) <= 0) return;
      size_t slot = next.fetch_add(1);
      if (slot >= todo.size()) return;
      try {
        verify_one(todo[slot]);
      } catch (const Error& e) {
        std::lock_guard<std::mutex> lock(record_mutex);
        if (!worker_error) worker_error = e;
        return;
      }
    }
  };

  const int jobs = std::max(1, opts.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(jobs));
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (worker_error) throw *worker_error;

  report.complete = true;
  for (const ClassRecord& rec : atlas.records) {
    if (!rec.conant_searched) {
      report.complete = false;
      continue;
    }
    if (rec.conant_witness)
      ++report.satisfied;
    else
      ++report.unsatisfied;
  }
  report.atlas = std::move(atlas);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
  return report;
}

std::string atlas_record_line(const ClassRecord& r) {
  ordered_json j;
  j["n"] = r.profile.n();
  ordered_json triples = ordered_json::array();
  for (const TripleIndex& t : r.profile.member_triples())
    triples.push_back(ordered_json::array({t.i, t.j, t.k}));
  j["triples"] = std::move(triples);
  ordered_json witness = ordered_json::array();
  for (const Int& v : r.canonical_witness.entries()) witness.push_back(to_ll(v));
  j["witness"] = std::move(witness);
  if (r.conant_witness) {
    ordered_json cw = ordered_json::array();
    for (const Int& v : r.conant_witness->entries()) cw.push_back(to_ll(v));
    j["conant_witness"] = std::move(cw);
  } else {
    j["conant_witness"] = nullptr;
  }
  return j.dump();
}

void write_atlas(std::ostream& out, const ClassAtlas& atlas) {
  for (const ClassRecord& r : atlas.records) out << atlas_record_line(r) << '\n';
}

}  // namespace spectra
