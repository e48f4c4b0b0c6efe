// Copyright 2026 The cohrel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// cohrel: single-point evaluation, parameter sweeps and the verification suite.

#include <CLI11.hpp>
#include <json.hpp>

#include "cohrel/cohrel.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace fs = std::filesystem;
using namespace cohrel;

namespace {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kIo = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr const char* kOutputDirEnv = "COHREL_OUTPUT_DIR";

fs::path default_output_dir() {
  const char* env = std::getenv(kOutputDirEnv);
  return env && *env ? fs::path(env) : fs::path(".");
}

// JSON config reader. Top-level keys are global options; an object value
// names a subcommand whose keys are its options, e.g.
//   {"threads": 4, "sweep": {"alphas": [0.5, 1], "channel": "damping"}}
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override {
    throw CLI::ConfigError("writing JSON config is not supported");
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json j;
    try {
      input >> j;
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConfigError(std::string("invalid JSON config: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConfigError("JSON config must be an object");
    std::vector<CLI::ConfigItem> items;
    collect(j, {}, items);
    return items;
  }

 private:
  static std::string scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    throw CLI::ConfigError("unsupported JSON value " + v.dump());
  }

  static void collect(const nlohmann::json& obj, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& out) {
    for (const auto& [key, value] : obj.items()) {
      if (value.is_object()) {
        auto next = parents;
        next.push_back(key);
        collect(value, next, out);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      out.push_back(std::move(item));
    }
  }
};

// ---------------------------------------------------------------------------
// Token parsing

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError(what + ": not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw UsageError(what + ": not a finite number: '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string tok; std::getline(in, tok, sep);) out.push_back(tok);
  return out;
}

// Each token is a number or lo:hi:n for n evenly spaced points.
std::vector<double> parse_values(const std::vector<std::string>& tokens, const std::string& what) {
  std::vector<double> out;
  for (const auto& tok : tokens) {
    const auto parts = split(tok, ':');
    if (parts.size() == 1) {
      out.push_back(parse_double(tok, what));
    } else if (parts.size() == 3) {
      const double n = parse_double(parts[2], what);
      if (n < 1 || n != std::floor(n) || n > 100000) throw UsageError(what + ": bad point count in '" + tok + "'");
      const auto pts = linspace(parse_double(parts[0], what), parse_double(parts[1], what), static_cast<int>(n));
      out.insert(out.end(), pts.begin(), pts.end());
    } else {
      throw UsageError(what + ": expected a number or lo:hi:n, got '" + tok + "'");
    }
  }
  return out;
}

double parse_accel(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw UsageError("acceleration must be given as omega,a,c: '" + text + "'");
  return acceleration_parameter({parse_double(parts[0], "omega"), parse_double(parts[1], "a"),
                                 parse_double(parts[2], "c")})
      .value();
}

Subsystem subsystem_of(const std::string& s) {
  if (auto v = parse_subsystem(s)) return *v;
  throw UsageError("unknown subsystem '" + s + "'");
}
std::optional<ChannelKind> channel_of(const std::string& s) {
  if (auto v = parse_channel(s)) return *v;
  throw UsageError("unknown channel '" + s + "'");
}
NoisePolicy policy_of(const std::string& s) {
  if (auto v = parse_policy(s)) return *v;
  throw UsageError("unknown policy '" + s + "'");
}

template <class T, class F>
std::vector<T> map_tokens(const std::vector<std::string>& tokens, F f) {
  std::vector<T> out;
  for (const auto& t : tokens) out.push_back(f(t));
  return out;
}

std::ofstream open_output(const fs::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

fs::path resolve_out(const std::string& given, const char* default_name) {
  return given.empty() ? default_output_dir() / default_name : fs::path(given);
}

// ---------------------------------------------------------------------------
// Subcommands

struct EvalArgs {
  std::string subsystem;
  std::string channel = "none";
  std::string policy = "reduced_qubit";
  double alpha = 1.0;
  double rb = 0.0, rc = 0.0;
  std::string accel_b, accel_c;
  double pb = 0.0, pc = 0.0;
};

int run_eval(const EvalArgs& a, std::uint64_t seed) {
  if (a.subsystem.empty()) throw UsageError("eval: --subsystem is required");
  Scenario s;
  s.subsystem = subsystem_of(a.subsystem);
  s.channel = channel_of(a.channel);
  s.policy = policy_of(a.policy);
  s.alpha = a.alpha;
  s.rb = a.accel_b.empty() ? a.rb : parse_accel(a.accel_b);
  s.rc = a.accel_c.empty() ? a.rc : parse_accel(a.accel_c);
  s.pb = s.channel ? a.pb : 0.0;
  s.pc = s.channel ? a.pc : 0.0;
  s.validate();

  const auto [sim, paper] = evaluate_point(s, seed);
  const auto bounds = simulated_concurrence(simulate(s), seed);
  auto line = [](const char* key, const std::string& value) { std::cout << key << ": " << value << '\n'; };
  line("subsystem", std::string(to_string(s.subsystem)));
  line("channel", std::string(to_string(s.channel)));
  line("policy", std::string(to_string(s.policy)));
  line("alpha", format_g17(s.alpha));
  line("r_b", format_g17(s.rb));
  line("r_c", format_g17(s.rc));
  line("p_b", format_g17(s.pb));
  line("p_c", format_g17(s.pc));
  line("concurrence_sim", format_g17(sim.concurrence));
  line("concurrence_sim_lower", format_g17(bounds.lower));
  line("concurrence_method", std::string(to_string(bounds.method)));
  line("concurrence_paper", format_g17(paper.concurrence));
  line("l1_sim", format_g17(sim.l1));
  line("l1_paper", format_g17(paper.l1));
  line("x_shaped", is_x_shaped(simulate(s)) ? "true" : "false");
  return kOk;
}

struct SweepArgs {
  std::vector<std::string> subsystems{"ab1c1", "ab1c2", "ab2c1", "ab2c2"};
  std::string channel = "none";
  std::string policy = "reduced_qubit";
  std::vector<std::string> alphas{"0.7071067811865476"};
  std::vector<std::string> r;
  std::vector<std::string> rb, rc;
  std::vector<std::string> accel;
  std::vector<std::string> p;
  std::vector<std::string> pb, pc;
  std::string out;
};

SweepSpec build_sweep(const SweepArgs& a, std::uint64_t seed, unsigned threads) {
  SweepSpec spec;
  spec.subsystems = map_tokens<Subsystem>(a.subsystems, subsystem_of);
  spec.channel = channel_of(a.channel);
  spec.policy = policy_of(a.policy);
  spec.alphas = parse_values(a.alphas, "alpha");
  spec.seed = seed;
  spec.threads = threads;

  const bool split_r = !a.rb.empty() || !a.rc.empty();
  if (split_r && (a.rb.empty() || a.rc.empty())) throw UsageError("sweep: --rb and --rc must be given together");
  if (split_r && (!a.r.empty() || !a.accel.empty()))
    throw UsageError("sweep: --rb/--rc cannot be combined with --r or --accel");
  if (split_r) {
    spec.r_points = cartesian(parse_values(a.rb, "r_b"), parse_values(a.rc, "r_c"));
  } else {
    auto rs = parse_values(a.r, "r");
    for (const auto& t : a.accel) rs.push_back(parse_accel(t));
    if (rs.empty()) rs = linspace(0.0, kMaxAcceleration, 51);
    spec.r_points = tied(rs);
  }

  const bool split_p = !a.pb.empty() || !a.pc.empty();
  if (split_p && (a.pb.empty() || a.pc.empty())) throw UsageError("sweep: --pb and --pc must be given together");
  if (split_p && !a.p.empty()) throw UsageError("sweep: --pb/--pc cannot be combined with --p");
  if (split_p)
    spec.p_points = cartesian(parse_values(a.pb, "p_b"), parse_values(a.pc, "p_c"));
  else
    spec.p_points = tied(a.p.empty() ? linspace(0.0, 1.0, 11) : parse_values(a.p, "p"));
  return spec;
}

void write_sweep(const SweepSpec& spec, const fs::path& path) {
  const auto rows = run_sweep(spec);
  if (path == "-") {
    write_csv(std::cout, rows);
    return;
  }
  auto out = open_output(path);
  write_csv(out, rows);
  finish(out, path);
}

int run_sweep_cmd(const SweepArgs& a, std::uint64_t seed, unsigned threads) {
  const auto spec = build_sweep(a, seed, threads);
  sweep_scenarios(spec);  // surface domain errors before touching the output file
  write_sweep(spec, resolve_out(a.out, "sweep.csv"));
  return kOk;
}

struct VerifyArgs {
  std::vector<std::string> subsystems;
  std::vector<std::string> channels;
  std::vector<std::string> policies;
  std::vector<std::string> alphas, rbs, rcs, pbs, pcs;
  std::string out;
  bool fail_on_known = false;
};

int run_verify(const VerifyArgs& a, std::uint64_t seed, unsigned threads) {
  GridSpec grid;
  if (!a.subsystems.empty()) grid.subsystems = map_tokens<Subsystem>(a.subsystems, subsystem_of);
  if (!a.channels.empty()) grid.channels = map_tokens<std::optional<ChannelKind>>(a.channels, channel_of);
  if (!a.policies.empty()) grid.policies = map_tokens<NoisePolicy>(a.policies, policy_of);
  if (!a.alphas.empty()) grid.alphas = parse_values(a.alphas, "alpha");
  if (!a.rbs.empty()) grid.rbs = parse_values(a.rbs, "r_b");
  if (!a.rcs.empty()) grid.rcs = parse_values(a.rcs, "r_c");
  if (!a.pbs.empty()) grid.pbs = parse_values(a.pbs, "p_b");
  if (!a.pcs.empty()) grid.pcs = parse_values(a.pcs, "p_c");
  for (const auto& s : grid.scenarios()) s.validate();

  const auto path = resolve_out(a.out, "verify_report.json");
  const auto report = run_suite(grid, seed, threads);
  const auto text = to_json(report).dump(2) + "\n";
  if (path == "-") {
    std::cout << text;
  } else {
    auto out = open_output(path);
    out << text;
    finish(out, path);
  }
  std::cerr << "records: " << report.records.size() << "  match: " << report.count(Classification::match)
            << "  known_discrepancy: " << report.count(Classification::known_discrepancy)
            << "  unexpected: " << report.count(Classification::unexpected) << '\n';
  return report.passed(a.fail_on_known) ? kOk : kVerificationFailed;
}

int run_figures(const std::string& dir_arg, std::uint64_t seed, unsigned threads) {
  const fs::path dir = dir_arg.empty() ? default_output_dir() : fs::path(dir_arg);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory '" + dir.string() + "'");
  for (const auto& fig : figure_datasets(seed, threads)) {
    const auto path = dir / (fig.name + ".csv");
    write_sweep(fig.spec, path);
    std::cerr << "wrote " << path.string() << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence concurrence of tripartite GHZ-class states under Unruh acceleration and noise"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();  // --seed, --threads and --config also work after the subcommand
  app.footer(std::string("Outputs without an explicit path go to $") + kOutputDirEnv +
             " (default: current directory).\nExit codes: 0 success, 1 verification failure, 2 usage, 3 I/O.");
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file with option values; command-line flags take precedence");

  std::uint64_t seed = kDefaultRoofSeed;
  unsigned threads = 0;
  app.add_option("--seed", seed, "Seed for the convex-roof search")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Evaluate one scenario");
  eval->add_option("--subsystem", ev.subsystem, "ab1c1, ab2c1, ab1c2, ab2c2, ab1b2 or ac1c2");
  eval->add_option("--channel", ev.channel, "none, damping, phase-flip or bit-flip")->capture_default_str();
  eval->add_option("--policy", ev.policy, "reduced_qubit or rindler_mode")->capture_default_str();
  eval->add_option("--alpha", ev.alpha, "GHZ weight in [0, 1]")->capture_default_str();
  eval->add_option("--rb", ev.rb, "Bob's acceleration parameter in [0, pi/4]")->capture_default_str();
  eval->add_option("--rc", ev.rc, "Charlie's acceleration parameter in [0, pi/4]")->capture_default_str();
  eval->add_option("--accel-b", ev.accel_b, "Bob's omega,a,c (overrides --rb)");
  eval->add_option("--accel-c", ev.accel_c, "Charlie's omega,a,c (overrides --rc)");
  eval->add_option("--pb", ev.pb, "Decay probability on Bob's side")->capture_default_str();
  eval->add_option("--pc", ev.pc, "Decay probability on Charlie's side")->capture_default_str();

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Write a CSV sweep (values accept lo:hi:n ranges)");
  sweep->add_option("--subsystems", sw.subsystems, "Comma-separated subsystems")->delimiter(',')->capture_default_str();
  sweep->add_option("--channel", sw.channel, "none, damping, phase-flip or bit-flip")->capture_default_str();
  sweep->add_option("--policy", sw.policy, "reduced_qubit or rindler_mode")->capture_default_str();
  sweep->add_option("--alphas", sw.alphas, "GHZ weights")->delimiter(',')->capture_default_str();
  sweep->add_option("--r", sw.r, "r_b = r_c values (default 0:pi/4:51)")->delimiter(',');
  sweep->add_option("--rb", sw.rb, "r_b values, crossed with --rc")->delimiter(',');
  sweep->add_option("--rc", sw.rc, "r_c values, crossed with --rb")->delimiter(',');
  sweep->add_option("--accel", sw.accel, "omega,a,c triple added to the tied r values (repeatable)");
  sweep->add_option("--p", sw.p, "P_b = P_c values (default 0:1:11)")->delimiter(',');
  sweep->add_option("--pb", sw.pb, "P_b values, crossed with --pc")->delimiter(',');
  sweep->add_option("--pc", sw.pc, "P_c values, crossed with --pb")->delimiter(',');
  sweep->add_option("--out", sw.out, "CSV path, '-' for stdout (default sweep.csv in the output directory)");

  VerifyArgs vf;
  auto* verify = app.add_subcommand("verify", "Compare simulation with the closed forms over a grid");
  verify->add_option("--subsystems", vf.subsystems, "Subsystems (default all six)")->delimiter(',');
  verify->add_option("--channels", vf.channels, "Channels (default none,damping,phase-flip,bit-flip)")->delimiter(',');
  verify->add_option("--policies", vf.policies, "Noise policies (default reduced_qubit)")->delimiter(',');
  verify->add_option("--alphas", vf.alphas, "Alpha values (default 0,0.25,0.5,0.75,1)")->delimiter(',');
  verify->add_option("--rbs", vf.rbs, "r_b values (default 0:pi/4:5)")->delimiter(',');
  verify->add_option("--rcs", vf.rcs, "r_c values (default 0:pi/4:5)")->delimiter(',');
  verify->add_option("--pbs", vf.pbs, "P_b values (default 0.25)")->delimiter(',');
  verify->add_option("--pcs", vf.pcs, "P_c values (default 0.6)")->delimiter(',');
  verify->add_option("--out", vf.out, "Report path, '-' for stdout (default verify_report.json in the output directory)");
  verify->add_flag("--fail-on-known", vf.fail_on_known, "Treat known discrepancies as failures");

  std::string fig_dir;
  auto* figures = app.add_subcommand("figures", "Write the six canonical figure datasets");
  figures->add_option("--dir", fig_dir, "Target directory (default: the output directory)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*eval) return run_eval(ev, seed);
    if (*sweep) return run_sweep_cmd(sw, seed, threads);
    if (*verify) return run_verify(vf, seed, threads);
    if (*figures) return run_figures(fig_dir, seed, threads);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kUsage;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerificationFailed;
  }
  return kUsage;
}
