#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "spectra/canon.hpp"
#include "spectra/cover.hpp"
#include "spectra/polytope.hpp"
#include "spectra/search.hpp"
#include "spectra/spectrum.hpp"
#include "spectra/version.hpp"

namespace {

using nlohmann::ordered_json;
using namespace spectra;

enum ExitCode : int {
  kOk = 0,
  kNegative = 1,
  kUsage = 2,
  kInternal = 3,
};

bool stdout_is_tty() { return isatty(fileno(stdout)) != 0; }

ordered_json int_json(const Int& v) {
  if (v.fits_slong_p()) return ordered_json(v.get_si());
  return ordered_json(v.get_str());
}

ordered_json profile_json(const TriangleProfile& p) {
  ordered_json j;
  j["version"] = std::string(kVersion);
  j["n"] = p.n();
  ordered_json triples = ordered_json::array();
  for (const TripleIndex& t : p.member_triples())
    triples.push_back(ordered_json::array({t.i, t.j, t.k}));
  j["triples"] = std::move(triples);
  return j;
}

ordered_json canon_json(const CanonReport& report, bool band_result) {
  ordered_json j;
  j["version"] = std::string(kVersion);
  j["input"] = report.input.format();
  j["n"] = report.input.dim();
  ordered_json vertex;
  ordered_json point = ordered_json::array();
  for (const Rat& v : report.vertex.point) point.push_back(format_rational(v));
  vertex["point"] = std::move(point);
  vertex["basis"] = report.vertex.basis;
  vertex["det"] = int_json(report.vertex.basis_det);
  j["vertex"] = std::move(vertex);
  ordered_json lifted = ordered_json::array();
  for (const Int& v : report.lifted.entries()) lifted.push_back(int_json(v));
  j["lifted"] = std::move(lifted);
  ordered_json band = ordered_json::array();
  for (const Int& v : report.conant_band.entries()) band.push_back(int_json(v));
  j["band"] = std::move(band);
  j["checks"] = ordered_json{{"upper", report.bounds_checked.upper},
                             {"internal", report.bounds_checked.internal},
                             {"band", report.bounds_checked.band}};
  j["result"] = band_result ? j["band"] : j["lifted"];
  return j;
}

struct GlobalFlags {
  std::string format = "auto";  // auto: text on a terminal, json when piped
  int jobs = 0;                 // 0: resolve from SPECTRA_JOBS, else 1

  bool json() const { return format == "json" || (format == "auto" && !stdout_is_tty()); }
  int resolved_jobs() const {
    if (jobs > 0) return jobs;
    if (const char* env = std::getenv("SPECTRA_JOBS")) {
      int v = std::atoi(env);
      if (v >= 1) return v;
    }
    return 1;
  }
};

int cmd_profile(const std::string& text, const GlobalFlags& flags) {
  TriangleProfile p = profile(parse_spectrum(text));
  if (flags.json()) {
    std::cout << profile_json(p).dump() << "\n";
  } else {
    std::cout << "n=" << p.n() << " triples:";
    for (const TripleIndex& t : p.member_triples())
      std::cout << " (" << t.i << "," << t.j << "," << t.k << ")";
    std::cout << "\n";
  }
  return kOk;
}

int cmd_equiv(const std::string& a, const std::string& b, const GlobalFlags& flags) {
  bool eq = equivalent(parse_spectrum(a), parse_spectrum(b));
  if (flags.json()) {
    ordered_json j;
    j["version"] = std::string(kVersion);
    j["equivalent"] = eq;
    j["verdict"] = eq ? "equivalent" : "inequivalent";
    std::cout << j.dump() << "\n";
  } else {
    std::cout << (eq ? "equivalent" : "inequivalent") << "\n";
  }
  return eq ? kOk : kNegative;
}

int cmd_canon(const std::string& text, bool band, const GlobalFlags& flags) {
  CanonReport report = canonicalize(parse_spectrum(text));
  if (flags.json()) {
    std::cout << canon_json(report, band).dump() << "\n";
  } else {
    const IntegralSpectrum& result = band ? report.conant_band : report.lifted;
    std::cout << (band ? "band: " : "lifted: ") << result.format() << "\n";
    std::cout << "vertex: ";
    for (size_t c = 0; c < report.vertex.point.size(); ++c)
      std::cout << (c ? "," : "") << format_rational(report.vertex.point[c]);
    std::cout << "  |det|=" << Int(abs(report.vertex.basis_det)).get_str() << "\n";
    std::cout << "checks: upper=" << report.bounds_checked.upper
              << " internal=" << report.bounds_checked.internal
              << " band=" << report.bounds_checked.band << "\n";
  }
  return kOk;
}

int write_atlas_to(const std::string& out_path, const ClassAtlas& atlas) {
  if (out_path.empty()) {
    write_atlas(std::cout, atlas);
    return kOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out.is_open()) {
    std::cerr << "error: cannot open " << out_path << "\n";
    return kUsage;
  }
  write_atlas(out, atlas);
  return kOk;
}

int cmd_enumerate(int n, const std::string& strategy, const std::string& out_path,
                  const GlobalFlags& flags) {
  SearchOptions opts;
  opts.jobs = flags.resolved_jobs();
  ClassAtlas atlas =
      strategy == "profile" ? enumerate_classes_by_profile(n, opts) : enumerate_classes(n, opts);
  int rc = write_atlas_to(out_path, atlas);
  if (rc != kOk) return rc;
  std::cerr << "enumerated " << atlas.records.size() << " classes for n=" << n << " ("
            << strategy << " strategy)\n";
  return kOk;
}

int cmd_verify_conant(int n, const std::string& checkpoint, const std::string& out_path,
                      bool allow_slow, const GlobalFlags& flags) {
  if (n >= 6 && !allow_slow) {
    std::cerr << "error: n=" << n
              << " runs for hours (or days at n=7); pass --allow-slow, ideally with "
                 "--checkpoint\n";
    return kUsage;
  }
  SearchOptions opts;
  opts.jobs = flags.resolved_jobs();
  opts.checkpoint_path = checkpoint;
  VerificationReport report = verify_conant(n, opts);

  int rc = write_atlas_to(out_path, report.atlas);
  if (rc != kOk) return rc;

  ordered_json summary;
  summary["version"] = std::string(kVersion);
  summary["n"] = report.n;
  summary["classes"] = report.atlas.records.size();
  summary["satisfied"] = report.satisfied;
  summary["unsatisfied"] = report.unsatisfied;
  summary["complete"] = report.complete;
  if (flags.json() || !out_path.empty()) {
    std::cout << summary.dump() << "\n";
  } else {
    std::cout << report.atlas.records.size() << " classes, " << report.satisfied << " satisfied, "
              << report.unsatisfied << " unsatisfied\n";
  }
  std::cerr << "verify-conant n=" << n << " finished in " << report.wall_seconds << " s\n";

  if (report.unsatisfied > 0) {
    std::cerr << "ALERT: " << report.unsatisfied
              << " class(es) have no witness in the Conant box; this contradicts the published "
                 "computations and deserves a close look\n";
    return kNegative;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact canonicalization and enumeration of finite metric spectra"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  // let --format/--jobs appear after the subcommand too
  app.fallthrough();

  GlobalFlags flags;
  app.add_option("--format", flags.format, "output format")
      ->check(CLI::IsMember({"auto", "text", "json"}))
      ->capture_default_str();
  app.add_option("--jobs", flags.jobs, "worker threads (default: SPECTRA_JOBS or 1)")
      ->check(CLI::Range(1, 1024));

  std::string spectrum_text, other_text, strategy = "box", out_path, checkpoint;
  int n = 0;
  bool band = false, allow_slow = false;

  CLI::App* profile_cmd = app.add_subcommand("profile", "triangle profile of a spectrum");
  profile_cmd->add_option("spectrum", spectrum_text, "comma-separated entries")->required();

  CLI::App* equiv_cmd = app.add_subcommand("equiv", "decide equivalence of two spectra");
  equiv_cmd->add_option("a", spectrum_text, "first spectrum")->required();
  equiv_cmd->add_option("b", other_text, "second spectrum")->required();

  CLI::App* canon_cmd = app.add_subcommand("canon", "bounded integral representative");
  canon_cmd->add_option("spectrum", spectrum_text, "comma-separated entries")->required();
  canon_cmd->add_flag("--band", band, "report the band representative as the result");

  CLI::App* enum_cmd = app.add_subcommand("enumerate", "enumerate all classes of a dimension");
  enum_cmd->add_option("--n", n, "dimension (1..8)")->required()->check(CLI::Range(1, 8));
  enum_cmd->add_option("--strategy", strategy, "box or profile")
      ->check(CLI::IsMember({"box", "profile"}))
      ->capture_default_str();
  enum_cmd->add_option("--out", out_path, "atlas output file (default stdout)");

  CLI::App* verify_cmd =
      app.add_subcommand("verify-conant", "search the Conant box for every class");
  verify_cmd->add_option("--n", n, "dimension (1..7)")->required()->check(CLI::Range(1, 7));
  verify_cmd->add_option("--checkpoint", checkpoint, "append-only checkpoint file");
  verify_cmd->add_option("--out", out_path, "atlas output file (default stdout)");
  verify_cmd->add_flag("--allow-slow", allow_slow, "required for n >= 6");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (profile_cmd->parsed()) return cmd_profile(spectrum_text, flags);
    if (equiv_cmd->parsed()) return cmd_equiv(spectrum_text, other_text, flags);
    if (canon_cmd->parsed()) return cmd_canon(spectrum_text, band, flags);
    if (enum_cmd->parsed()) return cmd_enumerate(n, strategy, out_path, flags);
    if (verify_cmd->parsed()) return cmd_verify_conant(n, checkpoint, out_path, allow_slow, flags);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.internal() ? kInternal : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
