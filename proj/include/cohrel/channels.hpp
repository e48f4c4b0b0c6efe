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

/// @file channels.hpp
/// Single-qubit Kraus channels and their placement on reduced or global
/// states.

#include "cohrel/dilation.hpp"
#include "cohrel/linalg.hpp"
#include "cohrel/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace cohrel {

using Matrix2c = Eigen::Matrix2cd;

struct KrausChannel {
  ChannelKind kind = ChannelKind::phase_damping;
  double p = 0.0;
  std::vector<Matrix2c> operators;

  /// max |(sum_k E_k^dagger E_k - I)_ij|
  double completeness_residual() const {
    Matrix2c sum = Matrix2c::Zero();
    for (const auto& e : operators) sum += e.adjoint() * e;
    return (sum - Matrix2c::Identity()).cwiseAbs().maxCoeff();
  }
};

/// Kraus pairs:
///   phase damping {diag(1, sqrt(1-P)), diag(0, sqrt(P))}
///   phase flip    {sqrt(1-P) I, sqrt(P) Z}
///   bit flip      {sqrt(1-P) I, sqrt(P) X}
inline KrausChannel make_channel(ChannelKind kind, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("decay probability must lie in [0, 1]");
  const double keep = std::sqrt(1.0 - p);
  const double hit = std::sqrt(p);
  Matrix2c e0 = Matrix2c::Zero(), e1 = Matrix2c::Zero();
  switch (kind) {
    case ChannelKind::phase_damping:
      e0(0, 0) = 1.0;
      e0(1, 1) = keep;
      e1(1, 1) = hit;
      break;
    case ChannelKind::phase_flip:
      e0(0, 0) = keep;
      e0(1, 1) = keep;
      e1(0, 0) = hit;
      e1(1, 1) = -hit;
      break;
    case ChannelKind::bit_flip:
      e0(0, 0) = keep;
      e0(1, 1) = keep;
      e1(0, 1) = hit;
      e1(1, 0) = hit;
      break;
  }
  return KrausChannel{kind, p, {e0, e1}};
}

/// rho -> sum_k E_k rho E_k^dagger with E_k acting on qubit `q` only.
inline DensityMatrix apply_to_qubit(const DensityMatrix& rho, QubitIndex q, const KrausChannel& ch) {
  const std::size_t n = rho.qubits();
  if (q.position >= n) throw ArgumentError("apply_to_qubit: qubit index out of range");
  const std::size_t mask = qubit_mask(q, n);
  const std::size_t dim = rho.dim();
  const ComplexMatrix& m = rho.matrix();

  // Diagonal Kraus sets only rescale the coherences of this qubit by
  // lambda = sum_k E_k(0,0) conj(E_k(1,1)); applying them that way keeps
  // every diagonal entry bit-for-bit unchanged.
  const bool dephasing = std::all_of(ch.operators.begin(), ch.operators.end(), [](const Matrix2c& e) {
    return e(0, 1) == Complex{} && e(1, 0) == Complex{};
  });
  if (dephasing) {
    Complex lambda{0.0, 0.0};
    for (const auto& e : ch.operators) lambda += e(0, 0) * std::conj(e(1, 1));
    ComplexMatrix out = m;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        const bool bi = i & mask, bj = j & mask;
        if (bi == bj) continue;
        auto& x = out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        x *= bi ? std::conj(lambda) : lambda;
      }
    return DensityMatrix::unchecked(std::move(out));
  }

  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  for (std::size_t i = 0; i < dim; ++i) {
    const int bi = (i & mask) ? 1 : 0;
    const std::size_t i_base = i & ~mask;
    for (std::size_t j = 0; j < dim; ++j) {
      const int bj = (j & mask) ? 1 : 0;
      const std::size_t j_base = j & ~mask;
      Complex acc{0.0, 0.0};
      for (const auto& e : ch.operators)
        for (int a = 0; a < 2; ++a) {
          const Complex left = e(bi, a);
          if (left == Complex{}) continue;
          const auto row = static_cast<Eigen::Index>(a ? (i_base | mask) : i_base);
          for (int b = 0; b < 2; ++b) {
            const Complex right = std::conj(e(bj, b));
            if (right == Complex{}) continue;
            const auto col = static_cast<Eigen::Index>(b ? (j_base | mask) : j_base);
            acc += left * m(row, col) * right;
          }
        }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  }
  return DensityMatrix::unchecked(std::move(out));
}

/// Applies Bob's and Charlie's channels according to `s.policy`.
/// reduced_qubit expects the 8x8 reduced state; rindler_mode expects the
/// 32x32 global state (the caller reduces afterwards).
inline DensityMatrix apply_policy(const Scenario& s, const DensityMatrix& rho) {
  switch (s.policy) {
    case NoisePolicy::reduced_qubit:
      if (rho.dim() != 8) throw ArgumentError("reduced_qubit policy needs an 8x8 reduced state");
      break;
    case NoisePolicy::rindler_mode:
      if (rho.dim() != 32) throw ArgumentError("rindler_mode policy needs the 32x32 global state");
      break;
  }
  if (!s.channel) return rho;

  const auto bob = make_channel(*s.channel, s.pb);
  const auto charlie = make_channel(*s.channel, s.pc);
  if (s.policy == NoisePolicy::reduced_qubit)
    return apply_to_qubit(apply_to_qubit(rho, QubitIndex{1}, bob), QubitIndex{2}, charlie);

  auto out = apply_to_qubit(rho, QubitIndex{static_cast<std::size_t>(Mode::B_I)}, bob);
  out = apply_to_qubit(out, QubitIndex{static_cast<std::size_t>(Mode::B_II)}, bob);
  out = apply_to_qubit(out, QubitIndex{static_cast<std::size_t>(Mode::C_I)}, charlie);
  return apply_to_qubit(out, QubitIndex{static_cast<std::size_t>(Mode::C_II)}, charlie);
}

/// First-principles state for a scenario: dilation, noise and reduction in
/// the order the policy prescribes.
inline DensityMatrix simulate(const Scenario& s) {
  s.validate();
  const auto global = dilate(initial_state(s.alpha), AccelerationParameter{s.rb}, AccelerationParameter{s.rc});
  if (s.policy == NoisePolicy::rindler_mode) return reduce_to_subsystem(apply_policy(s, global), s.subsystem);
  return apply_policy(s, reduce_to_subsystem(global, s.subsystem));
}

}  // namespace cohrel
