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

/// @file dilation.hpp
/// Initial GHZ mixture, the single-mode Unruh map for Bob and Charlie, and
/// the six three-mode reductions of the resulting five-mode state.
///
/// Global mode order is fixed as [A, B_I, B_II, C_I, C_II].

#include "cohrel/linalg.hpp"
#include "cohrel/scenario.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace cohrel {

enum class Mode : std::size_t { A = 0, B_I = 1, B_II = 2, C_I = 3, C_II = 4 };

inline constexpr std::size_t kGlobalModes = 5;

/// Modes kept by each reduction, in subscript order.
inline std::array<Mode, 3> kept_modes(Subsystem s) {
  switch (s) {
    case Subsystem::AB1C1: return {Mode::A, Mode::B_I, Mode::C_I};
    case Subsystem::AB2C1: return {Mode::A, Mode::B_II, Mode::C_I};
    case Subsystem::AB1C2: return {Mode::A, Mode::B_I, Mode::C_II};
    case Subsystem::AB2C2: return {Mode::A, Mode::B_II, Mode::C_II};
    case Subsystem::AB1B2: return {Mode::A, Mode::B_I, Mode::B_II};
    case Subsystem::AC1C2: return {Mode::A, Mode::C_I, Mode::C_II};
  }
  throw ArgumentError("unknown subsystem");
}

/// Dirac particle frequency, proper acceleration and light speed.
struct PhysicalAcceleration {
  double omega = 1.0;
  double a = 1.0;
  double c = 1.0;
};

/// r = arccos((exp(-2 pi omega c / a) + 1)^(-1/2)).
inline AccelerationParameter acceleration_parameter(const PhysicalAcceleration& p) {
  auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!ok(p.omega) || !ok(p.a) || !ok(p.c))
    throw ArgumentError("omega, a and c must be finite and strictly positive");
  const double cos_r = std::pow(std::exp(-2.0 * std::numbers::pi * p.omega * p.c / p.a) + 1.0, -0.5);
  const double r = std::acos(cos_r);
  if (!std::isfinite(r)) throw NumericError("acceleration parameter evaluated to a non-finite value");
  return AccelerationParameter{std::clamp(r, 0.0, kMaxAcceleration)};
}

/// alpha |GHZ><GHZ| + (1 - alpha) |000><000| with |GHZ> = (|000> + |111>)/sqrt(2).
inline DensityMatrix initial_state(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ArgumentError("alpha must lie in [0, 1]");
  ComplexMatrix rho = ComplexMatrix::Zero(8, 8);
  rho(0, 0) = 1.0 - alpha / 2.0;
  rho(7, 7) = alpha / 2.0;
  rho(0, 7) = alpha / 2.0;
  rho(7, 0) = alpha / 2.0;
  return DensityMatrix::unchecked(std::move(rho));
}

/// 4x2 isometry from one Minkowski mode into (region I, region II):
///   |0> -> cos r |00> + sin r |11>,   |1> -> |10>.
inline ComplexMatrix unruh_isometry(AccelerationParameter r) {
  ComplexMatrix v = ComplexMatrix::Zero(4, 2);
  v(0, 0) = std::cos(r.value());
  v(3, 0) = std::sin(r.value());
  v(2, 1) = 1.0;
  return v;
}

/// Applies I_A (x) V(rb) (x) V(rc) to a three-qubit state, producing the
/// 32x32 state on [A, B_I, B_II, C_I, C_II].
inline DensityMatrix dilate(const DensityMatrix& rho_abc, AccelerationParameter rb,
                            AccelerationParameter rc) {
  if (rho_abc.dim() != 8) throw ArgumentError("dilate: expected a three-qubit state");
  const ComplexMatrix k =
      tensor_product(tensor_product(ComplexMatrix::Identity(2, 2), unruh_isometry(rb)), unruh_isometry(rc));
  return DensityMatrix::unchecked(k * rho_abc.matrix() * k.adjoint());
}

inline DensityMatrix reduce_to_subsystem(const DensityMatrix& global, Subsystem s) {
  if (global.dim() != (std::size_t{1} << kGlobalModes))
    throw ArgumentError("reduce_to_subsystem: expected the five-mode global state");
  const auto kept = kept_modes(s);
  std::array<QubitIndex, 2> drop{};
  std::size_t n = 0;
  for (std::size_t m = 0; m < kGlobalModes; ++m)
    if (std::find(kept.begin(), kept.end(), static_cast<Mode>(m)) == kept.end())
      drop[n++] = QubitIndex{m};
  return partial_trace(global, std::span<const QubitIndex>(drop));
}

}  // namespace cohrel
