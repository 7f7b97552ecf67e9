// shadowlab: build polytopes, estimate shadow sizes, run bound checks, sweep
// families. Exit codes: 0 success / all checks pass, 1 a check failed,
// 2 usage or input error.

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shadowlab/io.hpp"

namespace io = shadowlab::io;

namespace {

struct Common {
  std::optional<std::uint64_t> seed;
  int threads = 0;
  std::int64_t trials = 1000;
  std::string in_path;
  std::string family;
  std::string out_path;
  std::map<std::string, std::string> raw;  // option name -> value, set only when given
};

void add_family_params(CLI::App* cmd, Common& c) {
  for (const char* name : {"n", "k", "eps", "dim", "vertex", "ray", "eps-cone", "edge-u", "edge-v", "lattice-k",
                           "alpha", "beta"}) {
    std::string key = name;
    cmd->add_option_function<std::string>(
        "--" + key, [&c, key](const std::string& v) { c.raw[key] = v; }, "family or check parameter");
  }
}

io::Params params_of(const Common& c) {
  io::Params p;
  for (const auto& [k, v] : c.raw) {
    std::string key = k;
    for (auto& ch : key) {
      if (ch == '-') ch = '_';
    }
    p[key] = v;
  }
  return p;
}

std::uint64_t resolve_seed(const Common& c) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("SHADOWLAB_SEED")) {
    std::uint64_t s = 0;
    const std::string_view v(env);
    const auto res = std::from_chars(v.data(), v.data() + v.size(), s);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size()) throw io::InputError("SHADOWLAB_SEED is not an integer");
    return s;
  }
  return 1;
}

io::Subject load_subject(const Common& c, std::uint64_t seed) {
  if (!c.in_path.empty() && !c.family.empty()) throw io::InputError("give either --in or --family, not both");
  if (!c.in_path.empty()) return io::subject_from_file(io::read_polytope_file(c.in_path));
  if (c.family.empty()) throw io::InputError("need --in <file> or --family <name>");
  return io::build_family(c.family, params_of(c), seed);
}

void emit(const Common& c, const std::string& text) {
  if (c.out_path.empty()) {
    std::cout << text;
  } else {
    io::write_text_file(c.out_path, text);
  }
}

std::vector<std::string> split_commas(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::size_t start = 0;
    while (start <= item.size()) {
      const auto end = item.find(',', start);
      const auto part = item.substr(start, end == std::string::npos ? std::string::npos : end - start);
      if (!part.empty()) out.push_back(part);
      if (end == std::string::npos) break;
      start = end + 1;
    }
  }
  return out;
}

void add_run_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "master seed (default: SHADOWLAB_SEED, then 1)");
  cmd->add_option("--threads", c.threads, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
  cmd->add_option("--trials", c.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  cmd->add_option("--out", c.out_path, "write to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shadowlab: random 2D shadows of polytopes"};
  app.set_version_flag("--version", std::string(io::kVersion));
  app.require_subcommand(1);

  Common c;

  auto* build = app.add_subcommand("build", "write a family member as polytope JSON");
  build->add_option("family", c.family, "family name")->required();
  add_family_params(build, c);
  build->add_option("--seed", c.seed, "seed for randomized families");
  build->add_option("--out", c.out_path, "output file (default stdout)");

  bool csv = false, exact = false;
  auto* shadow_cmd = app.add_subcommand("shadow", "estimate the expected shadow size");
  shadow_cmd->add_option("--in", c.in_path, "polytope JSON");
  shadow_cmd->add_option("--family", c.family, "family name");
  add_family_params(shadow_cmd, c);
  add_run_options(shadow_cmd, c);
  shadow_cmd->add_flag("--csv", csv, "one row per trial instead of the summary");
  shadow_cmd->add_flag("--exact", exact, "zonotopes: print the exact shadow size without sampling");

  std::vector<std::string> checks;
  bool timing = false;
  auto* check_cmd = app.add_subcommand("check", "run named checks and print a JSON report");
  check_cmd->add_option("--in", c.in_path, "polytope JSON");
  check_cmd->add_option("--family", c.family, "family name");
  check_cmd->add_option("--checks", checks, "comma-separated check names")->required();
  add_family_params(check_cmd, c);
  add_run_options(check_cmd, c);
  check_cmd->add_flag("--timing", timing, "include wall-clock seconds in the report");

  int from = 0, to = 0;
  bool with_delta = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "theorem bounds across a family, as CSV");
  sweep_cmd->add_option("--family", c.family, "family name")->required();
  sweep_cmd->add_option("--from", from, "first n (k for zn_parallel)")->required();
  sweep_cmd->add_option("--to", to, "last n (k for zn_parallel)")->required();
  sweep_cmd->add_flag("--delta", with_delta, "add delta and measured / (n^1.5 / delta) columns");
  add_family_params(sweep_cmd, c);
  add_run_options(sweep_cmd, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const std::uint64_t seed = resolve_seed(c);

    if (build->parsed()) {
      emit(c, io::write_polytope_json(io::to_file(io::build_family(c.family, params_of(c), seed))));
      return 0;
    }

    if (shadow_cmd->parsed()) {
      const auto s = load_subject(c, seed);
      if (exact) {
        if (!s.zonotope()) throw io::InputError("--exact needs a zonotope input");
        emit(c, std::to_string(shadowlab::zonotope_shadow_size_exact(*s.zonotope())) + "\n");
        return 0;
      }
      const shadowlab::McOptions opts{c.trials, seed, c.threads};
      const auto records = shadowlab::shadow_trials(s.polytope(), opts);
      emit(c, csv ? io::shadow_csv(records)
                  : io::estimate_to_json(shadowlab::summarize(records), s.polytope().label(), seed));
      return 0;
    }

    if (check_cmd->parsed()) {
      io::ExperimentConfig cfg;
      cfg.family = c.in_path.empty() ? c.family : "file:" + c.in_path;
      cfg.params = params_of(c);
      cfg.trials = c.trials;
      cfg.seed = seed;
      cfg.checks = split_commas(checks);
      io::validate_check_names(cfg.checks);
      const auto start = std::chrono::steady_clock::now();
      const auto s = load_subject(c, seed);
      auto report = io::run_checks(cfg, s, c.threads);
      if (timing) report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      emit(c, io::report_to_json(report));
      return report.all_passed() ? 0 : 1;
    }

    if (sweep_cmd->parsed()) {
      const shadowlab::McOptions opts{c.trials, seed, c.threads};
      const auto rows = io::run_sweep(c.family, params_of(c), from, to, opts, with_delta);
      emit(c, io::sweep_csv(c.family == "zn_parallel" ? "k" : "n", rows));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "shadowlab: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
