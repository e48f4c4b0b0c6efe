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

/// @file coherence.hpp
/// Coherence quantifiers in the computational basis: l1 norm, pure-state
/// coherence concurrence, the X-state closed form, and a numerical
/// convex-roof search that brackets the mixed-state concurrence.

#include "cohrel/linalg.hpp"
#include "cohrel/parallel.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <sstream>
#include <string_view>
#include <vector>

namespace cohrel {

enum class CoherenceMethod { x_closed_form, pure_exact, convex_roof_search };

inline std::string_view to_string(CoherenceMethod m) {
  switch (m) {
    case CoherenceMethod::x_closed_form: return "x_closed_form";
    case CoherenceMethod::pure_exact: return "pure_exact";
    case CoherenceMethod::convex_roof_search: return "convex_roof_search";
  }
  return "?";
}

/// lower is the l1 coherence, upper the best ensemble average found.
struct CoherenceBounds {
  double lower = 0.0;
  double upper = 0.0;
  CoherenceMethod method = CoherenceMethod::x_closed_form;
  int optimizer_iterations = 0;
};

/// Sum of |rho_ij| over i != j.
///
/// Accumulated pairwise as (|rho_ij| + |rho_ji|) over the upper triangle in
/// row-major order, so that on an exactly Hermitian X state the result is
/// bit-identical to x_concurrence.
inline double l1_coherence(const DensityMatrix& rho) {
  const ComplexMatrix& m = rho.matrix();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) sum += std::abs(m(i, j)) + std::abs(m(j, i));
  return sum;
}

/// sum_{j<k} |<psi| Lambda_jk |psi*>| with Lambda_jk = |j><k| + |k><j|.
inline double pure_concurrence(const PureState& psi) {
  const ComplexVector& v = psi.amplitudes();
  double sum = 0.0;
  for (Eigen::Index j = 0; j < v.size(); ++j)
    for (Eigen::Index k = j + 1; k < v.size(); ++k) {
      const Complex bra_j = std::conj(v(j)), bra_k = std::conj(v(k));
      // <psi| (|j><k| + |k><j|) |psi*> = conj(psi_j) conj(psi_k) + conj(psi_k) conj(psi_j)
      sum += std::abs(bra_j * bra_k + bra_k * bra_j);
    }
  return sum;
}

inline constexpr double kXShapeTolerance = 1e-9;

namespace detail {
struct Offender {
  std::size_t row = 0, col = 0;
  double magnitude = 0.0;
};

inline Offender worst_off_x_entry(const DensityMatrix& rho) {
  Offender worst;
  const std::size_t n = rho.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || i + j == n - 1) continue;
      const double mag = std::abs(rho(i, j));
      if (mag > worst.magnitude) worst = {i, j, mag};
    }
  return worst;
}
}  // namespace detail

/// True iff every entry off both diagonals has magnitude <= tol.
inline bool is_x_shaped(const DensityMatrix& rho, double tol = kXShapeTolerance) {
  return detail::worst_off_x_entry(rho).magnitude <= tol;
}

/// 2 sum_{i < floor(n/2)} |rho_{i, n-1-i}|. Requires an X-shaped input.
inline double x_concurrence(const DensityMatrix& rho) {
  const auto worst = detail::worst_off_x_entry(rho);
  if (worst.magnitude > kXShapeTolerance) {
    std::ostringstream msg;
    msg << "x_concurrence: state is not X-shaped; worst entry (" << worst.row << ", " << worst.col
        << ") has magnitude " << worst.magnitude;
    throw PreconditionError(msg.str());
  }
  const std::size_t n = rho.dim();
  double sum = 0.0;
  for (std::size_t i = 0; i < n / 2; ++i) sum += std::abs(rho(i, n - 1 - i));
  return 2.0 * sum;
}

// ---------------------------------------------------------------------------
// Convex roof

struct ConvexRoofOptions {
  int restarts = 200;
  int refine_steps = 500;
  std::uint64_t seed = 0;
  /// Ensemble size is rank + extra_members.
  int extra_members = 2;
  double eigen_floor = 1e-12;
  /// Worker threads for the restart phase; results do not depend on it.
  unsigned threads = 1;
};

inline constexpr std::uint64_t kDefaultRoofSeed = 0x5eedc0feULL;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline double l1_norm(const ComplexVector& v) {
  double s = 0.0;
  for (Eigen::Index a = 0; a < v.size(); ++a) s += std::abs(v(a));
  return s;
}

/// sum_i p_i C(psi_i) for unnormalized rows psi~_i with p_i = |psi~_i|^2.
/// For a single row this is |psi~|_1^2 - |psi~|_2^2.
inline double ensemble_cost(const ComplexMatrix& rows) {
  double cost = 0.0;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    double l1 = 0.0;
    for (Eigen::Index a = 0; a < rows.cols(); ++a) l1 += std::abs(rows(i, a));
    cost += l1 * l1 - rows.row(i).squaredNorm();
  }
  return cost;
}

/// Haar-like m x k matrix with orthonormal columns.
inline ComplexMatrix random_isometry(Eigen::Index m, Eigen::Index k, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(m, k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < m; ++i) g(i, j) = Complex(normal(gen), normal(gen));
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(m, k);
  // Fix the column phases against R's diagonal so the distribution is Haar.
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < k; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

/// Minimizes |u'|_1^2 + |v'|_1^2 over the complex plane rotation
///   u' = cos t u + e^{i f} sin t v,  v' = -e^{-i f} sin t u + cos t v.
/// Returns the decrease achieved (>= 0) and updates u, v in place.
class PairRotation {
 public:
  PairRotation(Eigen::Ref<ComplexVector> u, Eigen::Ref<ComplexVector> v) : u_(u), v_(v) {}

  double optimize() {
    const double start = eval(0.0, 0.0);
    double best = start, best_t = 0.0, best_f = 0.0;

    constexpr int kThetaSteps = 24;
    constexpr int kPhiSteps = 8;
    const double dt = std::numbers::pi / kThetaSteps;
    const double df = std::numbers::pi / kPhiSteps;
    for (int a = 0; a < kThetaSteps; ++a) {
      const double t = -std::numbers::pi / 2 + a * dt;
      for (int b = 0; b < kPhiSteps; ++b) {
        const double f = b * df;
        const double val = eval(t, f);
        if (val < best) best = val, best_t = t, best_f = f;
      }
    }

    // Alternating golden-section polish around the coarse minimum.
    double span_t = dt, span_f = df;
    for (int round = 0; round < 4; ++round) {
      best_t = golden([&](double t) { return eval(t, best_f); }, best_t - span_t, best_t + span_t, best_t, best);
      best_f = golden([&](double f) { return eval(best_t, f); }, best_f - span_f, best_f + span_f, best_f, best);
      span_t *= 0.5;
      span_f *= 0.5;
    }

    if (best < start - 1e-15) {
      apply(best_t, best_f);
      return start - best;
    }
    return 0.0;
  }

 private:
  double eval(double t, double f) const {
    const double c = std::cos(t), s = std::sin(t);
    const Complex ph = std::polar(1.0, f);
    double nu = 0.0, nv = 0.0;
    for (Eigen::Index a = 0; a < u_.size(); ++a) {
      nu += std::abs(c * u_(a) + ph * s * v_(a));
      nv += std::abs(-std::conj(ph) * s * u_(a) + c * v_(a));
    }
    return nu * nu + nv * nv;
  }

  void apply(double t, double f) {
    const double c = std::cos(t), s = std::sin(t);
    const Complex ph = std::polar(1.0, f);
    const ComplexVector u = u_, v = v_;
    u_ = c * u + ph * s * v;
    v_ = -std::conj(ph) * s * u + c * v;
  }

  /// Golden-section search on [lo, hi]; keeps (x0, best) if nothing beats it.
  template <class F>
  static double golden(F&& fn, double lo, double hi, double x0, double& best) {
    constexpr double kInv = 0.6180339887498949;
    double x1 = hi - kInv * (hi - lo), x2 = lo + kInv * (hi - lo);
    double f1 = fn(x1), f2 = fn(x2);
    for (int it = 0; it < 40; ++it) {
      if (f1 < f2) {
        hi = x2, x2 = x1, f2 = f1;
        x1 = hi - kInv * (hi - lo);
        f1 = fn(x1);
      } else {
        lo = x1, x1 = x2, f1 = f2;
        x2 = lo + kInv * (hi - lo);
        f2 = fn(x2);
      }
    }
    const double x = f1 < f2 ? x1 : x2;
    const double fx = std::min(f1, f2);
    if (fx < best) {
      best = fx;
      return x;
    }
    return x0;
  }

  Eigen::Ref<ComplexVector> u_;
  Eigen::Ref<ComplexVector> v_;
};

/// Sweeps plane rotations over every pair of ensemble members until a sweep
/// gains less than `stop_gain` or `max_sweeps` is reached.
inline int refine_ensemble(ComplexMatrix& rows, int max_sweeps, double stop_gain = 1e-14) {
  const Eigen::Index m = rows.rows();
  ComplexVector u(rows.cols()), v(rows.cols());
  int sweeps = 0;
  while (sweeps < max_sweeps) {
    ++sweeps;
    double gain = 0.0;
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = i + 1; j < m; ++j) {
        u = rows.row(i).transpose();
        v = rows.row(j).transpose();
        PairRotation rot(u, v);
        const double g = rot.optimize();
        if (g > 0.0) {
          rows.row(i) = u.transpose();
          rows.row(j) = v.transpose();
          gain += g;
        }
      }
    if (gain < stop_gain) break;
  }
  return sweeps;
}

}  // namespace detail

inline constexpr double kRoofCertificateGap = 1e-12;

/// Upper bound on the convex-roof coherence concurrence.
///
/// Every ensemble of m >= rank members arises from an m x rank isometry W
/// via psi~_i = sum_j W_ij sqrt(lambda_j) e_j, where (lambda_j, e_j) is the
/// eigendecomposition of rho. The eigen-ensemble W = [I; 0] and
/// `restarts - 1` Haar-random W are scored; the eigen-ensemble and the best
/// random candidate are then refined by sweeps of complex plane rotations
/// between member pairs, each with a grid-plus-golden-section line search.
/// `refine_steps` caps the number of sweeps. The l1 norm bounds the roof
/// from below, so once the refined eigen-ensemble comes within
/// kRoofCertificateGap of it the random candidates are skipped.
/// Deterministic for a fixed seed.
inline CoherenceBounds convex_roof_upper_bound(const DensityMatrix& rho, const ConvexRoofOptions& opt) {
  if (rho.dim() > 32) throw ArgumentError("convex_roof_upper_bound: dimension above 32");
  if (opt.restarts < 1) throw ArgumentError("convex_roof_upper_bound: need at least one restart");

  CoherenceBounds bounds;
  bounds.method = CoherenceMethod::convex_roof_search;
  bounds.lower = l1_coherence(rho);

  const ComplexMatrix h = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
  std::vector<Eigen::Index> support;
  for (Eigen::Index j = eig.eigenvalues().size() - 1; j >= 0; --j)
    if (eig.eigenvalues()(j) > opt.eigen_floor) support.push_back(j);
  if (support.empty()) throw NumericError("convex_roof_upper_bound: no eigenvalue above floor");

  const auto k = static_cast<Eigen::Index>(support.size());
  const Eigen::Index m = k + std::max(0, opt.extra_members);
  const auto d = static_cast<Eigen::Index>(rho.dim());
  // basis rows: sqrt(lambda_j) e_j^T
  ComplexMatrix basis(k, d);
  for (Eigen::Index j = 0; j < k; ++j)
    basis.row(j) = std::sqrt(eig.eigenvalues()(support[j])) * eig.eigenvectors().col(support[j]).transpose();

  ComplexMatrix eigen_rows = ComplexMatrix::Zero(m, d);
  eigen_rows.topRows(k) = basis;

  int sweeps = detail::refine_ensemble(eigen_rows, opt.refine_steps);
  double best = detail::ensemble_cost(eigen_rows);
  if (best - bounds.lower <= kRoofCertificateGap) {
    bounds.upper = std::max(best, 0.0);
    bounds.optimizer_iterations = sweeps;
    return bounds;
  }

  struct Candidate {
    double cost;
    ComplexMatrix rows;
  };
  auto random_candidate = [&](std::size_t idx) {
    const auto w = detail::random_isometry(m, k, detail::splitmix64(opt.seed ^ detail::splitmix64(idx)));
    ComplexMatrix rows = w * basis;
    const double cost = detail::ensemble_cost(rows);
    return Candidate{cost, std::move(rows)};
  };
  const auto randoms = parallel_map(static_cast<std::size_t>(opt.restarts - 1), random_candidate, opt.threads);

  // Lowest cost wins; ties go to the lower restart index.
  const Candidate* best_random = nullptr;
  for (const auto& c : randoms)
    if (!best_random || c.cost < best_random->cost) best_random = &c;

  if (best_random) {
    ComplexMatrix rows = best_random->rows;
    sweeps += detail::refine_ensemble(rows, opt.refine_steps);
    best = std::min(best, detail::ensemble_cost(rows));
  }
  bounds.upper = std::max(best, 0.0);
  bounds.optimizer_iterations = sweeps;
  return bounds;
}

inline CoherenceBounds convex_roof_upper_bound(const DensityMatrix& rho, int restarts, int refine_steps,
                                               std::uint64_t seed) {
  ConvexRoofOptions opt;
  opt.restarts = restarts;
  opt.refine_steps = refine_steps;
  opt.seed = seed;
  return convex_roof_upper_bound(rho, opt);
}

inline constexpr double kPurityThreshold = 1.0 - 1e-10;

/// Dispatches to the cheapest exact route: pure states, then X states, and
/// otherwise the convex-roof search.
inline CoherenceBounds coherence_concurrence(const DensityMatrix& rho, const ConvexRoofOptions& opt) {
  if (rho.purity() >= kPurityThreshold) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (rho.matrix() + rho.matrix().adjoint()));
    const auto top = eig.eigenvalues().size() - 1;
    const auto psi = PureState::normalized(eig.eigenvectors().col(top));
    return CoherenceBounds{l1_coherence(rho), pure_concurrence(psi), CoherenceMethod::pure_exact, 0};
  }
  if (is_x_shaped(rho)) {
    const double c = x_concurrence(rho);
    return CoherenceBounds{c, c, CoherenceMethod::x_closed_form, 0};
  }
  return convex_roof_upper_bound(rho, opt);
}

inline CoherenceBounds coherence_concurrence(const DensityMatrix& rho) {
  ConvexRoofOptions opt;
  opt.seed = kDefaultRoofSeed;
  return coherence_concurrence(rho, opt);
}

}  // namespace cohrel
