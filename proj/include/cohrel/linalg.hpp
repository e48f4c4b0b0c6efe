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

/// @file linalg.hpp
/// Dense complex matrix algebra for small multi-qubit registers.
///
/// Basis convention: for an n-qubit register the computational basis index
/// is the integer whose binary digits, most significant first, are the
/// qubit values. Qubit position 0 is therefore the leftmost tensor factor.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace cohrel {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr std::size_t kMaxDimension = 1024;

struct Tolerances {
  double hermiticity = 1e-10;
  double trace = 1e-10;
  double psd_floor = -1e-9;
};

/// Position of a qubit inside a register, counted from the leftmost factor.
struct QubitIndex {
  std::size_t position = 0;

  constexpr QubitIndex() = default;
  constexpr explicit QubitIndex(std::size_t p) : position(p) {}
  friend constexpr auto operator<=>(QubitIndex, QubitIndex) = default;
};

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t log2_exact(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

/// Bit mask selecting `q` inside basis indices of an `n_qubits` register.
inline std::size_t qubit_mask(QubitIndex q, std::size_t n_qubits) {
  return std::size_t{1} << (n_qubits - 1 - q.position);
}

inline bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ArgumentError("max_abs_diff: shape mismatch");
  double worst = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

/// Kronecker product. Entry ((i1*b.rows+i2),(j1*b.cols+j2)) = a(i1,j1)*b(i2,j2).
inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b,
                                    std::size_t max_dimension = kMaxDimension) {
  if (a.size() == 0 || b.size() == 0) throw ArgumentError("tensor_product: empty operand");
  const auto rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
  const auto cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
  if (rows > max_dimension || cols > max_dimension) {
    std::ostringstream msg;
    msg << "tensor_product: result " << rows << "x" << cols << " exceeds maximum dimension "
        << max_dimension;
    throw SizeError(msg.str());
  }
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i1 = 0; i1 < a.rows(); ++i1)
    for (Eigen::Index j1 = 0; j1 < a.cols(); ++j1)
      out.block(i1 * b.rows(), j1 * b.cols(), b.rows(), b.cols()) = a(i1, j1) * b;
  return out;
}

// ---------------------------------------------------------------------------
// Validity checks

enum class Violation { not_square, bad_dimension, non_finite, hermiticity, trace, negative_eigenvalue };

inline const char* to_string(Violation v) {
  switch (v) {
    case Violation::not_square: return "not_square";
    case Violation::bad_dimension: return "bad_dimension";
    case Violation::non_finite: return "non_finite";
    case Violation::hermiticity: return "hermiticity";
    case Violation::trace: return "trace";
    case Violation::negative_eigenvalue: return "negative_eigenvalue";
  }
  return "unknown";
}

struct ViolationEntry {
  Violation kind;
  /// How far outside the tolerance band the matrix sits: the hermiticity
  /// defect, |trace - 1|, or the smallest eigenvalue.
  double magnitude = 0.0;
};

struct ViolationReport {
  std::vector<ViolationEntry> violations;

  bool has(Violation v) const {
    return std::any_of(violations.begin(), violations.end(),
                       [v](const ViolationEntry& e) { return e.kind == v; });
  }
  double magnitude(Violation v) const {
    for (const auto& e : violations)
      if (e.kind == v) return e.magnitude;
    return 0.0;
  }
  std::string describe() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < violations.size(); ++i) {
      if (i) out << "; ";
      out << to_string(violations[i].kind) << " (" << violations[i].magnitude << ")";
    }
    return out.str();
  }
};

inline double hermiticity_defect(const ComplexMatrix& m) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

inline double min_eigenvalue(const ComplexMatrix& m) {
  // Symmetrize so that sub-tolerance hermiticity noise does not leak in.
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

class DensityMatrix;
std::variant<DensityMatrix, ViolationReport> validate_density(const ComplexMatrix& m,
                                                              const Tolerances& tol = {});

/// A certified quantum state: Hermitian, unit trace, positive semidefinite,
/// power-of-two dimension. Immutable after construction.
class DensityMatrix {
 public:
  /// Certifies `m` or throws ArgumentError describing every failed invariant.
  static DensityMatrix certify(ComplexMatrix m, const Tolerances& tol = {}) {
    auto result = validate_density(m, tol);
    if (auto* report = std::get_if<ViolationReport>(&result))
      throw ArgumentError("not a density matrix: " + report->describe());
    return std::get<DensityMatrix>(std::move(result));
  }

  /// Wraps the output of a trace-preserving completely positive map whose
  /// input was already certified. No checks beyond shape.
  static DensityMatrix unchecked(ComplexMatrix m) {
    if (m.rows() != m.cols() || !is_power_of_two(static_cast<std::size_t>(m.rows())))
      throw ArgumentError("density matrix must be square with power-of-two dimension");
    return DensityMatrix(std::move(m));
  }

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  std::size_t qubits() const noexcept { return log2_exact(dim()); }
  Complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  double trace() const { return m_.trace().real(); }
  double purity() const { return (m_ * m_).trace().real(); }

 private:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

inline std::variant<DensityMatrix, ViolationReport> validate_density(const ComplexMatrix& m,
                                                                     const Tolerances& tol) {
  ViolationReport report;
  if (m.rows() != m.cols() || m.rows() == 0) {
    report.violations.push_back({Violation::not_square, 0.0});
    return report;
  }
  if (!all_finite(m)) {
    report.violations.push_back({Violation::non_finite, 0.0});
    return report;
  }
  if (!is_power_of_two(static_cast<std::size_t>(m.rows())))
    report.violations.push_back({Violation::bad_dimension, static_cast<double>(m.rows())});

  const double herm = hermiticity_defect(m);
  if (herm > tol.hermiticity) report.violations.push_back({Violation::hermiticity, herm});

  const double trace_err = std::abs(m.trace().real() - 1.0);
  if (trace_err > tol.trace) report.violations.push_back({Violation::trace, trace_err});

  const double lowest = min_eigenvalue(m);
  if (lowest < tol.psd_floor) report.violations.push_back({Violation::negative_eigenvalue, lowest});

  if (!report.violations.empty()) return report;
  return DensityMatrix::unchecked(m);
}

/// Normalized state vector.
class PureState {
 public:
  static PureState from_amplitudes(ComplexVector amplitudes, double tol = 1e-10) {
    const auto n = static_cast<std::size_t>(amplitudes.size());
    if (!is_power_of_two(n)) throw ArgumentError("pure state dimension must be a power of two");
    if (std::abs(amplitudes.squaredNorm() - 1.0) > tol)
      throw ArgumentError("pure state is not normalized");
    return PureState(std::move(amplitudes));
  }

  /// Rescales `amplitudes` to unit norm.
  static PureState normalized(ComplexVector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw ArgumentError("cannot normalize zero vector");
    amplitudes /= norm;
    return from_amplitudes(std::move(amplitudes));
  }

  const ComplexVector& amplitudes() const noexcept { return v_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(v_.size()); }

  DensityMatrix projector() const { return DensityMatrix::unchecked(v_ * v_.adjoint()); }

 private:
  explicit PureState(ComplexVector v) : v_(std::move(v)) {}
  ComplexVector v_;
};

// ---------------------------------------------------------------------------
// Partial trace and qubit permutation

/// Traces out the qubits in `drop`. The kept qubits retain their relative
/// order.
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const QubitIndex> drop) {
  const std::size_t n = rho.qubits();
  std::vector<bool> dropped(n, false);
  for (auto q : drop) {
    if (q.position >= n) throw ArgumentError("partial_trace: qubit index out of range");
    dropped[q.position] = true;
  }
  std::vector<std::size_t> kept_masks, traced_masks;
  for (std::size_t p = 0; p < n; ++p)
    (dropped[p] ? traced_masks : kept_masks).push_back(qubit_mask(QubitIndex{p}, n));
  if (kept_masks.empty()) throw ArgumentError("partial_trace: cannot trace out every qubit");

  // scatter(k, masks): place the bits of k (MSB first) at the positions in masks.
  auto scatter = [](std::size_t k, const std::vector<std::size_t>& masks) {
    std::size_t out = 0;
    const std::size_t m = masks.size();
    for (std::size_t b = 0; b < m; ++b)
      if (k & (std::size_t{1} << (m - 1 - b))) out |= masks[b];
    return out;
  };

  const std::size_t kept_dim = std::size_t{1} << kept_masks.size();
  const std::size_t traced_dim = std::size_t{1} << traced_masks.size();
  std::vector<std::size_t> kept_full(kept_dim), traced_full(traced_dim);
  for (std::size_t k = 0; k < kept_dim; ++k) kept_full[k] = scatter(k, kept_masks);
  for (std::size_t t = 0; t < traced_dim; ++t) traced_full[t] = scatter(t, traced_masks);

  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(kept_dim),
                                          static_cast<Eigen::Index>(kept_dim));
  for (std::size_t i = 0; i < kept_dim; ++i)
    for (std::size_t j = 0; j < kept_dim; ++j) {
      Complex acc{0.0, 0.0};
      for (std::size_t t = 0; t < traced_dim; ++t)
        acc += m(static_cast<Eigen::Index>(kept_full[i] | traced_full[t]),
                 static_cast<Eigen::Index>(kept_full[j] | traced_full[t]));
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  return DensityMatrix::unchecked(std::move(out));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<QubitIndex> drop) {
  return partial_trace(rho, std::span<const QubitIndex>(drop.begin(), drop.size()));
}

/// Reorders qubits: qubit k of the result is qubit `order[k]` of `rho`.
inline DensityMatrix permute_qubits(const DensityMatrix& rho, std::span<const std::size_t> order) {
  const std::size_t n = rho.qubits();
  if (order.size() != n) throw ArgumentError("permute_qubits: order must name every qubit");
  std::vector<bool> seen(n, false);
  for (auto p : order) {
    if (p >= n || seen[p]) throw ArgumentError("permute_qubits: order is not a permutation");
    seen[p] = true;
  }
  const std::size_t dim = rho.dim();
  std::vector<std::size_t> source(dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    std::size_t src = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (idx & qubit_mask(QubitIndex{k}, n)) src |= qubit_mask(QubitIndex{order[k]}, n);
    source[idx] = src;
  }
  ComplexMatrix out(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rho(source[i], source[j]);
  return DensityMatrix::unchecked(std::move(out));
}

inline DensityMatrix permute_qubits(const DensityMatrix& rho, std::initializer_list<std::size_t> order) {
  return permute_qubits(rho, std::span<const std::size_t>(order.begin(), order.size()));
}

}  // namespace cohrel
