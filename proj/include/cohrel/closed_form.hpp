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

/// @file closed_form.hpp
/// Literal closed-form reduced and evolved matrices with their coherence
/// concurrences, used as the comparison target for the simulator.
///
/// The A-B-C reductions carry one coherence pair on the anti-diagonal, the
/// two-party reductions AB1B2 and AC1C2 carry it in the (0, 7) corner.
/// Under noise only that pair changes; diagonals are kept as tabulated.

#include "cohrel/linalg.hpp"
#include "cohrel/scenario.hpp"

#include <cmath>
#include <optional>
#include <utility>

namespace cohrel::closed_form {

/// Named matrix elements as functions of (alpha, rb, rc, Pb, Pc).
struct Elements {
  double a1, a2, a3, a4;
  double b1, b2, b3, b4, b5, b6;
  double c1, c2, c3;
  double g1, g2, g3;
  double d1, d2, d3, d4;
  double e1, f1;
};

inline Elements elements(double alpha, double rb, double rc, double pb = 0.0, double pc = 0.0) {
  const double cb = std::cos(rb), sb = std::sin(rb);
  const double cc = std::cos(rc), sc = std::sin(rc);
  const double pop = (2.0 - alpha) / 2.0;
  const double coh = alpha / 2.0;
  const double damp = std::sqrt(1.0 - pb) * std::sqrt(1.0 - pc);
  Elements e{};
  e.a1 = pop * cb * cb * cc * cc;
  e.a2 = pop * cb * cb * sc * sc;
  e.a3 = pop * sb * sb * cc * cc;
  e.a4 = pop * sb * sb * sc * sc;
  e.b1 = coh * cb * cc;
  e.b2 = coh * sb * cc;
  e.b3 = coh * cb * sc;
  e.b4 = coh * sb * sc;
  e.b5 = coh * cb * cb;
  e.b6 = coh * cc * cc;
  e.c1 = pop * std::pow(cb, 4);
  e.c2 = pop * cb * cb * sb * sb;
  e.c3 = pop * std::pow(sb, 4);
  e.g1 = pop * std::pow(cc, 4);
  e.g2 = pop * cc * cc * sc * sc;
  e.g3 = pop * std::pow(sc, 4);
  e.d1 = coh * damp * cb * cc;
  e.d2 = coh * damp * sb * cc;
  e.d3 = coh * damp * cb * sc;
  e.d4 = coh * damp * sb * sc;
  e.e1 = alpha * (2.0 * pb - 1.0) * (2.0 * pc - 1.0) / 2.0 * cb * cc;
  e.f1 = alpha * (1.0 - pb) * (1.0 - pc) / 2.0 * cb * cc;
  return e;
}

/// Zero-based (row, col) of the upper coherence element; the lower partner
/// sits at (col, row) and the alpha/2 population at (col, col).
inline std::pair<int, int> coherence_position(Subsystem s) {
  switch (s) {
    case Subsystem::AB1C1: return {0, 7};
    case Subsystem::AB2C1: return {2, 5};
    case Subsystem::AB1C2: return {1, 6};
    case Subsystem::AB2C2: return {3, 4};
    case Subsystem::AB1B2: return {0, 7};
    case Subsystem::AC1C2: return {0, 7};
  }
  return {0, 7};
}

/// cos rb cos rc, sin rb cos rc, cos rb sin rc, sin rb sin rc, cos^2 rb, cos^2 rc.
inline double trig_factor(Subsystem s, double rb, double rc) {
  switch (s) {
    case Subsystem::AB1C1: return std::cos(rb) * std::cos(rc);
    case Subsystem::AB2C1: return std::sin(rb) * std::cos(rc);
    case Subsystem::AB1C2: return std::cos(rb) * std::sin(rc);
    case Subsystem::AB2C2: return std::sin(rb) * std::sin(rc);
    case Subsystem::AB1B2: return std::cos(rb) * std::cos(rb);
    case Subsystem::AC1C2: return std::cos(rc) * std::cos(rc);
  }
  return 0.0;
}

/// Multiplier the channel applies to the coherence pair.
inline double channel_factor(std::optional<ChannelKind> kind, double pb, double pc) {
  if (!kind) return 1.0;
  switch (*kind) {
    case ChannelKind::phase_damping: return std::sqrt(1.0 - pb) * std::sqrt(1.0 - pc);
    case ChannelKind::phase_flip: return (2.0 * pb - 1.0) * (2.0 * pc - 1.0);
    case ChannelKind::bit_flip: return (1.0 - pb) * (1.0 - pc);
  }
  return 1.0;
}

namespace detail {
inline DensityMatrix build(Subsystem s, const Elements& e, double alpha, double coherence) {
  ComplexMatrix m = ComplexMatrix::Zero(8, 8);
  if (s == Subsystem::AB1B2 || s == Subsystem::AC1C2) {
    const bool bob = s == Subsystem::AB1B2;
    m(0, 0) = bob ? e.c1 : e.g1;
    m(1, 1) = bob ? e.c2 : e.g2;
    m(2, 2) = bob ? e.c2 : e.g2;
    m(3, 3) = bob ? e.c3 : e.g3;
  } else {
    m(0, 0) = e.a1;
    m(1, 1) = e.a2;
    m(2, 2) = e.a3;
    m(3, 3) = e.a4;
  }
  const auto [row, col] = coherence_position(s);
  m(col, col) = alpha / 2.0;
  m(row, col) = coherence;
  m(col, row) = coherence;
  return DensityMatrix::unchecked(std::move(m));
}
}  // namespace detail

/// Tabulated reduced state after the Unruh map, before any noise.
inline DensityMatrix reduced_matrix(Subsystem s, double alpha, double rb, double rc) {
  const auto e = elements(alpha, rb, rc);
  double coherence = 0.0;
  switch (s) {
    case Subsystem::AB1C1: coherence = e.b1; break;
    case Subsystem::AB2C1: coherence = e.b2; break;
    case Subsystem::AB1C2: coherence = e.b3; break;
    case Subsystem::AB2C2: coherence = e.b4; break;
    case Subsystem::AB1B2: coherence = e.b5; break;
    case Subsystem::AC1C2: coherence = e.b6; break;
  }
  return detail::build(s, e, alpha, coherence);
}

/// Tabulated evolved state. Damping uses d1..d4 on the A-B-C reductions;
/// phase and bit flip use e1 and f1 on AB1C1 and the same channel factor on
/// the coherence pair elsewhere.
inline DensityMatrix evolved_matrix(Subsystem s, double alpha, double rb, double rc,
                                    std::optional<ChannelKind> kind, double pb, double pc) {
  if (!kind) return reduced_matrix(s, alpha, rb, rc);
  const auto e = elements(alpha, rb, rc, pb, pc);
  double coherence = 0.0;
  if (*kind == ChannelKind::phase_damping && is_triparty(s)) {
    switch (s) {
      case Subsystem::AB1C1: coherence = e.d1; break;
      case Subsystem::AB2C1: coherence = e.d2; break;
      case Subsystem::AB1C2: coherence = e.d3; break;
      case Subsystem::AB2C2: coherence = e.d4; break;
      default: break;
    }
  } else if (s == Subsystem::AB1C1 && *kind == ChannelKind::phase_flip) {
    coherence = e.e1;
  } else if (s == Subsystem::AB1C1 && *kind == ChannelKind::bit_flip) {
    coherence = e.f1;
  } else {
    coherence = alpha / 2.0 * channel_factor(kind, pb, pc) * trig_factor(s, rb, rc);
  }
  return detail::build(s, e, alpha, coherence);
}

/// Scalar concurrence formulas, evaluated directly (not through a matrix).
inline double concurrence(Subsystem s, double alpha, double rb, double rc,
                          std::optional<ChannelKind> kind = std::nullopt, double pb = 0.0, double pc = 0.0) {
  const double trig = trig_factor(s, rb, rc);
  if (!kind) return alpha * trig;
  switch (*kind) {
    case ChannelKind::phase_damping: return alpha * std::sqrt(1.0 - pb) * std::sqrt(1.0 - pc) * trig;
    case ChannelKind::phase_flip: return std::abs(alpha * (2.0 * pb - 1.0) * (2.0 * pc - 1.0)) * trig;
    case ChannelKind::bit_flip: return alpha * (1.0 - pb) * (1.0 - pc) * trig;
  }
  return 0.0;
}

/// Phase-damping concurrence with rb = rc = r and Pb = Pc = P.
inline double equal_parameter_damping(Subsystem s, double alpha, double r, double p) {
  switch (s) {
    case Subsystem::AB1C1:
    case Subsystem::AB1B2:
    case Subsystem::AC1C2: return alpha * (1.0 - p) * std::cos(r) * std::cos(r);
    case Subsystem::AB2C1:
    case Subsystem::AB1C2: return alpha / 2.0 * (1.0 - p) * std::sin(2.0 * r);
    case Subsystem::AB2C2: return alpha * (1.0 - p) * std::sin(r) * std::sin(r);
  }
  return 0.0;
}

struct ComplementarityResiduals {
  /// C^2(AB1C1) + C^2(AB1C2) - alpha^2; vanishes only when rb = 0.
  double accessible_pair;
  /// C^2(AB1C2) + alpha C(AC1C2) - alpha^2; vanishes only when rb = 0.
  double inaccessible_pair;
  /// Sum of C^2 over the four A-B-C reductions minus alpha^2; always zero.
  double total;
};

inline ComplementarityResiduals complementarity_residuals(double alpha, double rb, double rc) {
  auto c = [&](Subsystem s) { return concurrence(s, alpha, rb, rc); };
  const double a2 = alpha * alpha;
  const double c11 = c(Subsystem::AB1C1), c12 = c(Subsystem::AB1C2);
  const double c21 = c(Subsystem::AB2C1), c22 = c(Subsystem::AB2C2);
  return {c11 * c11 + c12 * c12 - a2, c12 * c12 + alpha * c(Subsystem::AC1C2) - a2,
          c11 * c11 + c12 * c12 + c21 * c21 + c22 * c22 - a2};
}

}  // namespace cohrel::closed_form
