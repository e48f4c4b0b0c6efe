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

/// @file scenario.hpp
/// Enumerations and the parameter record shared by the simulator, the
/// closed-form reference, and the command-line front end.

#include "cohrel/linalg.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

namespace cohrel {

/// The six tripartite reductions of the five-mode register. Digits name the
/// Rindler region: 1 for region I (accessible), 2 for region II.
enum class Subsystem { AB1C1, AB2C1, AB1C2, AB2C2, AB1B2, AC1C2 };

inline constexpr std::array kAllSubsystems{Subsystem::AB1C1, Subsystem::AB2C1, Subsystem::AB1C2,
                                           Subsystem::AB2C2, Subsystem::AB1B2, Subsystem::AC1C2};

/// The four reductions that keep one mode of each party.
inline constexpr std::array kTripartySubsystems{Subsystem::AB1C1, Subsystem::AB2C1, Subsystem::AB1C2,
                                                Subsystem::AB2C2};

inline bool is_triparty(Subsystem s) {
  return s != Subsystem::AB1B2 && s != Subsystem::AC1C2;
}

enum class ChannelKind { phase_damping, phase_flip, bit_flip };

inline constexpr std::array kAllChannels{ChannelKind::phase_damping, ChannelKind::phase_flip,
                                         ChannelKind::bit_flip};

/// Where Bob's and Charlie's noise acts.
///   reduced_qubit: channel(Pb) on qubit 1 and channel(Pc) on qubit 2 of the
///                  8x8 reduced state.
///   rindler_mode:  channel(Pb) on B_I and B_II, channel(Pc) on C_I and C_II
///                  of the 32x32 global state, before reduction.
enum class NoisePolicy { reduced_qubit, rindler_mode };

inline std::string_view to_string(Subsystem s) {
  switch (s) {
    case Subsystem::AB1C1: return "ab1c1";
    case Subsystem::AB2C1: return "ab2c1";
    case Subsystem::AB1C2: return "ab1c2";
    case Subsystem::AB2C2: return "ab2c2";
    case Subsystem::AB1B2: return "ab1b2";
    case Subsystem::AC1C2: return "ac1c2";
  }
  return "?";
}

inline std::string_view to_string(ChannelKind k) {
  switch (k) {
    case ChannelKind::phase_damping: return "damping";
    case ChannelKind::phase_flip: return "phase-flip";
    case ChannelKind::bit_flip: return "bit-flip";
  }
  return "?";
}

inline std::string_view to_string(std::optional<ChannelKind> k) {
  return k ? to_string(*k) : std::string_view{"none"};
}

inline std::string_view to_string(NoisePolicy p) {
  return p == NoisePolicy::reduced_qubit ? "reduced_qubit" : "rindler_mode";
}

namespace detail {
inline std::string normalize_token(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '_') c = '-';
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}
}  // namespace detail

inline std::optional<Subsystem> parse_subsystem(std::string_view text) {
  const auto t = detail::normalize_token(text);
  for (auto s : kAllSubsystems)
    if (t == to_string(s)) return s;
  return std::nullopt;
}

/// Parses a channel name. The outer optional is empty on a parse failure;
/// the inner one is empty for "none".
inline std::optional<std::optional<ChannelKind>> parse_channel(std::string_view text) {
  const auto t = detail::normalize_token(text);
  if (t == "none") return std::optional<ChannelKind>{};
  if (t == "damping" || t == "phase-damping") return std::optional{ChannelKind::phase_damping};
  if (t == "phase-flip") return std::optional{ChannelKind::phase_flip};
  if (t == "bit-flip") return std::optional{ChannelKind::bit_flip};
  return std::nullopt;
}

inline std::optional<NoisePolicy> parse_policy(std::string_view text) {
  const auto t = detail::normalize_token(text);
  if (t == "reduced-qubit") return NoisePolicy::reduced_qubit;
  if (t == "rindler-mode") return NoisePolicy::rindler_mode;
  return std::nullopt;
}

inline constexpr double kMaxAcceleration = std::numbers::pi / 4.0;

/// Acceleration parameter r in radians, restricted to [0, pi/4].
class AccelerationParameter {
 public:
  constexpr AccelerationParameter() = default;
  explicit AccelerationParameter(double r) : r_(r) {
    // Allow a few ulps above pi/4 so values resolved from physical
    // accelerations and the exact endpoint are both accepted.
    if (!(r >= 0.0) || r > kMaxAcceleration * (1.0 + 1e-15))
      throw ArgumentError("acceleration parameter r must lie in [0, pi/4]");
  }
  constexpr double value() const noexcept { return r_; }

 private:
  double r_ = 0.0;
};

/// Full parameter record for one evaluation.
struct Scenario {
  Subsystem subsystem = Subsystem::AB1C1;
  double alpha = 1.0;
  double rb = 0.0;
  double rc = 0.0;
  std::optional<ChannelKind> channel{};
  double pb = 0.0;
  double pc = 0.0;
  NoisePolicy policy = NoisePolicy::reduced_qubit;
  Tolerances tolerances{};

  /// Throws ArgumentError if any parameter is outside its domain.
  void validate() const {
    auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!unit(alpha)) throw ArgumentError("alpha must lie in [0, 1]");
    if (!unit(pb) || !unit(pc)) throw ArgumentError("decay probabilities must lie in [0, 1]");
    AccelerationParameter{rb};
    AccelerationParameter{rc};
  }
};

}  // namespace cohrel
