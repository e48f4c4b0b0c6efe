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

#pragma once

/// @file sweep.hpp
/// Parameter sweeps emitted as CSV, one row per grid point and method.

#include "cohrel/closed_form.hpp"
#include "cohrel/verification.hpp"

#include <algorithm>
#include <cstdio>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace cohrel {

inline constexpr const char* kSweepHeader = "subsystem,channel,policy,alpha,r_b,r_c,p_b,p_c,method,concurrence,l1";

struct SweepSpec {
  std::vector<Subsystem> subsystems;
  std::optional<ChannelKind> channel;
  NoisePolicy policy = NoisePolicy::reduced_qubit;
  std::vector<double> alphas;
  /// (r_b, r_c) grid points.
  std::vector<std::pair<double, double>> r_points;
  /// (P_b, P_c) grid points; ignored when channel is none.
  std::vector<std::pair<double, double>> p_points{{0.0, 0.0}};
  std::uint64_t seed = kDefaultRoofSeed;
  unsigned threads = 1;

  void validate() const {
    if (subsystems.empty() || alphas.empty() || r_points.empty() || (channel && p_points.empty()))
      throw ArgumentError("sweep: every axis needs at least one value");
  }
};

/// r_b = r_c = r for each r.
inline std::vector<std::pair<double, double>> tied(const std::vector<double>& values) {
  std::vector<std::pair<double, double>> out;
  for (double v : values) out.emplace_back(v, v);
  return out;
}

inline std::vector<std::pair<double, double>> cartesian(const std::vector<double>& xs, const std::vector<double>& ys) {
  std::vector<std::pair<double, double>> out;
  for (double x : xs)
    for (double y : ys) out.emplace_back(x, y);
  return out;
}

/// n evenly spaced points from lo to hi inclusive, computed as lo + i*(hi-lo)/(n-1).
inline std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw ArgumentError("linspace: need at least one point");
  if (n == 1) return {lo};
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(i == n - 1 ? hi : lo + i * (hi - lo) / (n - 1));
  return out;
}

struct SweepRow {
  Scenario scenario;
  bool paper = false;
  double concurrence = 0.0;
  double l1 = 0.0;

  auto key() const {
    return std::tuple(to_string(scenario.subsystem), to_string(scenario.channel), to_string(scenario.policy),
                      scenario.alpha, scenario.rb, scenario.rc, scenario.pb, scenario.pc,
                      std::string_view(paper ? "paper" : "sim"));
  }
};

inline std::vector<Scenario> sweep_scenarios(const SweepSpec& spec) {
  spec.validate();
  const std::vector<std::pair<double, double>> no_noise{{0.0, 0.0}};
  const auto& p_axis = spec.channel ? spec.p_points : no_noise;
  std::vector<Scenario> out;
  for (auto sub : spec.subsystems)
    for (double a : spec.alphas)
      for (auto [rb, rc] : spec.r_points)
        for (auto [pb, pc] : p_axis) {
          Scenario s;
          s.subsystem = sub;
          s.channel = spec.channel;
          s.policy = spec.policy;
          s.alpha = a;
          s.rb = rb;
          s.rc = rc;
          s.pb = pb;
          s.pc = pc;
          s.validate();
          out.push_back(s);
        }
  return out;
}

/// Simulated and closed-form rows for one scenario.
inline std::pair<SweepRow, SweepRow> evaluate_point(const Scenario& s, std::uint64_t seed) {
  const auto sim = simulate(s);
  const auto ref = closed_form::evolved_matrix(s.subsystem, s.alpha, s.rb, s.rc, s.channel, s.pb, s.pc);
  SweepRow sim_row{s, false, simulated_concurrence(sim, seed).upper, l1_coherence(sim)};
  SweepRow ref_row{s, true, closed_form::concurrence(s.subsystem, s.alpha, s.rb, s.rc, s.channel, s.pb, s.pc),
                   l1_coherence(ref)};
  return {sim_row, ref_row};
}

/// All rows of a sweep, sorted by (subsystem, channel, policy, alpha, r_b,
/// r_c, p_b, p_c, method); numeric columns compare numerically.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  const auto scenarios = sweep_scenarios(spec);
  const auto pairs = parallel_map(scenarios.size(), [&](std::size_t i) { return evaluate_point(scenarios[i], spec.seed); },
                                  spec.threads);
  std::vector<SweepRow> rows;
  rows.reserve(2 * pairs.size());
  for (const auto& [a, b] : pairs) {
    rows.push_back(a);
    rows.push_back(b);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& x, const SweepRow& y) { return x.key() < y.key(); });
  return rows;
}

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const auto& r : rows) {
    const auto& s = r.scenario;
    out << to_string(s.subsystem) << ',' << to_string(s.channel) << ',' << to_string(s.policy) << ','
        << format_g17(s.alpha) << ',' << format_g17(s.rb) << ',' << format_g17(s.rc) << ',' << format_g17(s.pb)
        << ',' << format_g17(s.pc) << ',' << (r.paper ? "paper" : "sim") << ',' << format_g17(r.concurrence)
        << ',' << format_g17(r.l1) << '\n';
  }
}

/// A canonical dataset for one of six plot families.
struct FigureDataset {
  std::string name;
  SweepSpec spec;
};

/// Six datasets: for each channel (damping, phase flip, bit flip) a line-plot
/// family over r at several alpha and P, and a surface family. The grids are
/// supersets of what any single plot panel needs.
inline std::vector<FigureDataset> figure_datasets(std::uint64_t seed = kDefaultRoofSeed, unsigned threads = 1) {
  const auto r_grid = linspace(0.0, kMaxAcceleration, 51);
  const auto p_grid = linspace(0.0, 1.0, 51);
  const std::vector<double> line_alphas{0.0, 0.25, 0.5, 1.0 / std::numbers::sqrt2, 0.75, 1.0};
  const auto line_ps = linspace(0.0, 1.0, 11);
  const double surface_alpha = 1.0 / std::numbers::sqrt2;

  auto line = [&](std::string name, ChannelKind kind) {
    SweepSpec s;
    s.subsystems = {Subsystem::AB1C1, Subsystem::AB2C2};
    s.channel = kind;
    s.alphas = line_alphas;
    s.r_points = tied(r_grid);
    s.p_points = tied(line_ps);
    s.seed = seed;
    s.threads = threads;
    return FigureDataset{std::move(name), s};
  };
  auto surface = [&](std::string name, ChannelKind kind, Subsystem third) {
    SweepSpec s;
    s.subsystems = {Subsystem::AB1C1, Subsystem::AB2C2, third};
    s.channel = kind;
    s.alphas = {surface_alpha};
    s.r_points = tied(r_grid);
    s.p_points = tied(p_grid);
    s.seed = seed;
    s.threads = threads;
    return FigureDataset{std::move(name), s};
  };

  std::vector<FigureDataset> out;
  out.push_back(line("fig1_damping_lines", ChannelKind::phase_damping));
  out.push_back(surface("fig2_damping_surface", ChannelKind::phase_damping, Subsystem::AB2C1));
  out.push_back(line("fig3_phase_flip_lines", ChannelKind::phase_flip));
  out.push_back(surface("fig4_phase_flip_surface", ChannelKind::phase_flip, Subsystem::AB1C2));
  out.push_back(line("fig5_bit_flip_lines", ChannelKind::bit_flip));

  // Bit-flip surface at Pb = Pc = 1/3 over (r, alpha).
  SweepSpec bit;
  bit.subsystems = {Subsystem::AB1C1, Subsystem::AB2C2, Subsystem::AB2C1};
  bit.channel = ChannelKind::bit_flip;
  bit.alphas = linspace(0.0, 1.0, 51);
  bit.r_points = tied(r_grid);
  bit.p_points = {{1.0 / 3.0, 1.0 / 3.0}};
  bit.seed = seed;
  bit.threads = threads;
  out.push_back(FigureDataset{"fig6_bit_flip_surface", bit});
  return out;
}

}  // namespace cohrel
