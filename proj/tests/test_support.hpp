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

// Shared generators and brute-force oracles for the test suites. Nothing
// here calls into the index-twiddling paths of the library it checks.

#ifndef COHREL_NO_CATCH
#include <catch_amalgamated.hpp>
#endif

#include "cohrel/linalg.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace cohrel::testing {

inline ComplexMatrix ket(std::initializer_list<Complex> amps) {
  ComplexMatrix v(static_cast<Eigen::Index>(amps.size()), 1);
  Eigen::Index i = 0;
  for (auto a : amps) v(i++, 0) = a;
  return v;
}

inline ComplexMatrix basis_ket(std::size_t dim, std::size_t index) {
  ComplexMatrix v = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), 1);
  v(static_cast<Eigen::Index>(index), 0) = 1.0;
  return v;
}

/// Kronecker product written directly from the definition with Eigen block
/// expressions; independent of cohrel::tensor_product's size checks.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Lifts a single-qubit operator to qubit `q` of an n-qubit register by
/// explicit Kronecker products.
inline ComplexMatrix lift(const ComplexMatrix& op, std::size_t q, std::size_t n) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (std::size_t k = 0; k < n; ++k) out = kron(out, k == q ? op : ComplexMatrix::Identity(2, 2));
  return out;
}

/// sum_k (E_k on q) rho (E_k on q)^dagger using full-size matrices.
inline ComplexMatrix kraus_oracle(const ComplexMatrix& rho, const std::vector<ComplexMatrix>& ops, std::size_t q) {
  const auto n = static_cast<std::size_t>(std::lround(std::log2(static_cast<double>(rho.rows()))));
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& e : ops) {
    const ComplexMatrix big = lift(e, q, n);
    out += big * rho * big.adjoint();
  }
  return out;
}

/// Partial trace over qubit `q` via sum_t (I (x) <t| (x) I) rho (I (x) |t> (x) I).
inline ComplexMatrix trace_out_oracle(const ComplexMatrix& rho, std::size_t q) {
  const auto n = static_cast<std::size_t>(std::lround(std::log2(static_cast<double>(rho.rows()))));
  ComplexMatrix out;
  for (std::size_t t = 0; t < 2; ++t) {
    ComplexMatrix proj = ComplexMatrix::Identity(1, 1);
    for (std::size_t k = 0; k < n; ++k) proj = kron(proj, k == q ? basis_ket(2, t) : ComplexMatrix::Identity(2, 2));
    const ComplexMatrix term = proj.adjoint() * rho * proj;
    out = (t == 0) ? term : ComplexMatrix(out + term);
  }
  return out;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  Complex gaussian() { return {normal_(gen_), normal_(gen_)}; }

  ComplexVector random_vector(std::size_t dim) {
    ComplexVector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = gaussian();
    return v / v.norm();
  }

  /// Full-rank mixed state G G^dagger / Tr.
  ComplexMatrix random_density(std::size_t dim) {
    ComplexMatrix g(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < g.rows(); ++i)
      for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = gaussian();
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return hermitize(rho);
  }

  /// Random X-shaped density matrix: independent random PSD 2x2 blocks on
  /// (i, n-1-i), exactly Hermitian.
  ComplexMatrix random_x_state(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    ComplexMatrix rho = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n / 2; ++i) {
      const Eigen::Index j = n - 1 - i;
      Eigen::Matrix2cd g;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) g(a, b) = gaussian();
      const Eigen::Matrix2cd block = g * g.adjoint() * uniform(0.05, 1.0);
      rho(i, i) = block(0, 0).real();
      rho(j, j) = block(1, 1).real();
      rho(i, j) = block(0, 1);
      rho(j, i) = std::conj(block(0, 1));
    }
    rho /= rho.trace().real();
    return hermitize(rho);
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  static ComplexMatrix hermitize(ComplexMatrix m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      m(i, i) = m(i, i).real();
      for (Eigen::Index j = i + 1; j < m.cols(); ++j) m(j, i) = std::conj(m(i, j));
    }
    return m;
  }

  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace cohrel::testing
