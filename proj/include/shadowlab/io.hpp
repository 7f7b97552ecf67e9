#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shadowlab/bounds.hpp"
#include "shadowlab/polytope.hpp"
#include "shadowlab/shadow.hpp"

namespace shadowlab::io {

inline constexpr const char* kVersion = "0.1.0";

/// Bad user input: unknown names, malformed files, violated preconditions.
/// The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// On-disk polytope: {label, n, vertices, edges?, generators?, base?,
/// facet_normals?}.
struct PolytopeFile {
  std::string label;
  int n = 0;
  std::vector<Vec> vertices;
  std::optional<std::vector<Edge>> edges;
  std::optional<std::vector<Vec>> generators;
  std::optional<Vec> base;
  std::optional<IntMatrix> facet_normals;

  friend bool operator==(const PolytopeFile&, const PolytopeFile&) = default;
};

std::string write_polytope_json(const PolytopeFile& f);
PolytopeFile parse_polytope_json(std::string_view text);
PolytopeFile read_polytope_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Family parameters as given on the command line.
using Params = std::map<std::string, std::string>;

double param_double(const Params& p, const std::string& key, std::optional<double> fallback = std::nullopt);
int param_int(const Params& p, const std::string& key, std::optional<int> fallback = std::nullopt);

/// A polytope under study. Zonotope families keep their generators; the
/// vertex description is enumerated on first use.
class Subject {
 public:
  Subject(std::string family, VPolytope p, std::optional<IntMatrix> facet_normals = std::nullopt);
  Subject(std::string family, Zonotope z, std::optional<IntMatrix> facet_normals = std::nullopt,
          std::optional<VPolytope> vertices = std::nullopt);

  const std::string& family() const { return family_; }
  const std::optional<Zonotope>& zonotope() const { return zonotope_; }
  const VPolytope& polytope() const;
  const std::optional<IntMatrix>& facet_normals() const { return facet_normals_; }
  int dim() const;

 private:
  std::string family_;
  std::optional<Zonotope> zonotope_;
  mutable std::optional<VPolytope> polytope_;
  std::optional<IntMatrix> facet_normals_;
};

const std::vector<std::string>& family_names();

/// Builds a named family; zn_parallel and zn_basis draw their perturbations
/// from `seed`.
Subject build_family(const std::string& family, const Params& params, std::uint64_t seed);
Subject subject_from_file(const PolytopeFile& f);
PolytopeFile to_file(const Subject& s);

// --- Checks and reports ----------------------------------------------------

struct ExperimentConfig {
  std::string family;
  Params params;
  std::int64_t trials = 1000;
  std::uint64_t seed = 1;
  std::vector<std::string> checks;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct CheckResult {
  std::string check;
  std::string status;  // satisfied / violated for bounds, pass / fail / inconclusive for tests
  bool passed = false;
  std::optional<BoundReport> bound;
  std::vector<std::pair<std::string, double>> values;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct ExperimentReport {
  std::string version = kVersion;
  ExperimentConfig config;
  std::vector<CheckResult> results;
  std::optional<double> seconds;

  bool all_passed() const;
  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

const std::vector<std::string>& check_names();

/// Throws InputError listing the valid names if any check is unknown.
void validate_check_names(const std::vector<std::string>& checks);

CheckResult run_check(const std::string& check, const Subject& s, const ExperimentConfig& cfg, int threads);
ExperimentReport run_checks(const ExperimentConfig& cfg, const Subject& s, int threads);

/// Non-finite doubles are written as null and read back as NaN.
std::string report_to_json(const ExperimentReport& r);
ExperimentReport report_from_json(std::string_view text);

std::string estimate_to_json(const ShadowEstimate& e, const std::string& label, std::uint64_t seed);

// --- CSV -------------------------------------------------------------------

/// 17 significant digits, '.' decimal point, independent of the locale.
std::string format_double(double x);

std::string shadow_csv(const std::vector<TrialRecord>& records);

struct SweepRow {
  int param = 0;
  BoundReport report;
  std::optional<double> delta;
  std::optional<double> scaled;  // measured / (n^1.5 / delta)
};

/// One row per value of the swept parameter ("n", or "k" for zn_parallel).
std::vector<SweepRow> run_sweep(const std::string& family, const Params& fixed, int from, int to,
                                const McOptions& opts, bool with_delta);
std::string sweep_csv(const std::string& param_name, const std::vector<SweepRow>& rows);

}  // namespace shadowlab::io
