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

#include "test_support.hpp"

#include "cohrel/channels.hpp"
#include "cohrel/closed_form.hpp"

#include <numbers>

using namespace cohrel;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<ComplexMatrix> as_dynamic(const KrausChannel& ch) {
  std::vector<ComplexMatrix> out;
  for (const auto& e : ch.operators) out.emplace_back(e);
  return out;
}

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

}  // namespace

TEST_CASE("make_channel builds the listed Kraus pairs", "[channels]") {
  const double p = 0.36;
  SECTION("phase damping") {
    const auto ch = make_channel(ChannelKind::phase_damping, p);
    REQUIRE(ch.operators.size() == 2);
    CHECK((ch.operators[0] - (Matrix2c() << 1.0, 0.0, 0.0, 0.8).finished()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((ch.operators[1] - (Matrix2c() << 0.0, 0.0, 0.0, 0.6).finished()).cwiseAbs().maxCoeff() < 1e-15);
  }
  SECTION("phase flip") {
    const auto ch = make_channel(ChannelKind::phase_flip, p);
    CHECK((ch.operators[0] - (Matrix2c() << 0.8, 0.0, 0.0, 0.8).finished()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((ch.operators[1] - (Matrix2c() << 0.6, 0.0, 0.0, -0.6).finished()).cwiseAbs().maxCoeff() < 1e-15);
  }
  SECTION("bit flip") {
    const auto ch = make_channel(ChannelKind::bit_flip, p);
    CHECK((ch.operators[0] - (Matrix2c() << 0.8, 0.0, 0.0, 0.8).finished()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((ch.operators[1] - (Matrix2c() << 0.0, 0.6, 0.6, 0.0).finished()).cwiseAbs().maxCoeff() < 1e-15);
  }
  SECTION("probability out of range") {
    CHECK_THROWS_AS(make_channel(ChannelKind::bit_flip, -0.1), ArgumentError);
    CHECK_THROWS_AS(make_channel(ChannelKind::phase_flip, 1.5), ArgumentError);
  }
}

TEST_CASE("apply_to_qubit examples", "[channels]") {
  testing::Rng rng(42);
  SECTION("P = 0 is the identity for every kind") {
    const auto rho = DensityMatrix::certify(rng.random_density(8));
    for (auto kind : kAllChannels)
      for (std::size_t q = 0; q < 3; ++q)
        CHECK(max_abs_diff(apply_to_qubit(rho, QubitIndex{q}, make_channel(kind, 0.0)).matrix(), rho.matrix()) == 0.0);
  }
  SECTION("phase damping at P = 1 kills single-qubit coherence") {
    const auto rho = DensityMatrix::certify(rng.random_density(2));
    const auto out = apply_to_qubit(rho, QubitIndex{0}, make_channel(ChannelKind::phase_damping, 1.0));
    CHECK(out(0, 1) == Complex(0.0));
    CHECK(out(1, 0) == Complex(0.0));
    CHECK(out(0, 0) == rho(0, 0));
    CHECK(out(1, 1) == rho(1, 1));
  }
  SECTION("phase flip scales |+><+| coherence by 1 - 2P") {
    const auto plus = DensityMatrix::certify(0.5 * ComplexMatrix::Ones(2, 2));
    for (double p : grid(0.0, 1.0, 11)) {
      const auto out = apply_to_qubit(plus, QubitIndex{0}, make_channel(ChannelKind::phase_flip, p));
      // (1-P) rho + P Z rho Z
      CHECK_THAT(out(0, 1).real(), WithinAbs(0.5 * (1.0 - 2.0 * p), 1e-15));
      CHECK_THAT(out(0, 0).real(), WithinAbs(0.5, 1e-15));
    }
  }
  SECTION("phase damping scales elements differing at q by sqrt(1-P)") {
    const double p = 0.3;
    const auto rho = DensityMatrix::certify(rng.random_density(8));
    for (std::size_t q = 0; q < 3; ++q) {
      const auto out = apply_to_qubit(rho, QubitIndex{q}, make_channel(ChannelKind::phase_damping, p));
      const std::size_t mask = std::size_t{4} >> q;
      for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) {
          const double factor = ((i ^ j) & mask) ? std::sqrt(1.0 - p) : 1.0;
          CHECK(std::abs(out(i, j) - factor * rho(i, j)) < 1e-15);
        }
    }
  }
  SECTION("bit flip on |0><0|") {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 1.0;
    const auto out = apply_to_qubit(DensityMatrix::certify(m), QubitIndex{0}, make_channel(ChannelKind::bit_flip, 0.25));
    CHECK_THAT(out(0, 0).real(), WithinAbs(0.75, 1e-15));
    CHECK_THAT(out(1, 1).real(), WithinAbs(0.25, 1e-15));
  }
  SECTION("qubit out of range") {
    CHECK_THROWS_AS(apply_to_qubit(initial_state(0.5), QubitIndex{3}, make_channel(ChannelKind::bit_flip, 0.1)),
                    ArgumentError);
  }
}

TEST_CASE("apply_to_qubit agrees with the lifted-operator oracle", "[channels][property]") {
  testing::Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const ComplexMatrix m = rng.random_density(trial % 2 ? 8 : 4);
    const auto rho = DensityMatrix::certify(m);
    const auto kind = kAllChannels[static_cast<std::size_t>(trial) % 3];
    const auto ch = make_channel(kind, rng.uniform());
    for (std::size_t q = 0; q < rho.qubits(); ++q)
      CHECK(max_abs_diff(apply_to_qubit(rho, QubitIndex{q}, ch).matrix(), testing::kraus_oracle(m, as_dynamic(ch), q)) <
            1e-15);
  }
}

TEST_CASE("channels are CPTP", "[channels][property]") {
  testing::Rng rng(123);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto kind = kAllChannels[static_cast<std::size_t>(trial) % 3];
    const double p = trial == 0 ? 0.0 : (trial == 1 ? 1.0 : rng.uniform());
    CHECK(make_channel(kind, p).completeness_residual() < 1e-12);
  }
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = DensityMatrix::certify(rng.random_density(8));
    const auto ch = make_channel(kAllChannels[static_cast<std::size_t>(trial) % 3], rng.uniform());
    const auto out = apply_to_qubit(rho, QubitIndex{static_cast<std::size_t>(trial) % 3}, ch);
    CHECK_THAT(out.trace(), WithinAbs(1.0, 1e-12));
    CHECK(min_eigenvalue(out.matrix()) >= -1e-9);
  }
}

TEST_CASE("dephasing channels leave diagonals untouched", "[channels][property]") {
  testing::Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rho = DensityMatrix::certify(rng.random_density(8));
    for (auto kind : {ChannelKind::phase_damping, ChannelKind::phase_flip}) {
      const auto out = apply_to_qubit(rho, QubitIndex{1}, make_channel(kind, rng.uniform()));
      for (std::size_t i = 0; i < 8; ++i) CHECK(out(i, i).real() == rho(i, i).real());
    }
  }
}

TEST_CASE("channels on different qubits commute", "[channels][property]") {
  testing::Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rho = DensityMatrix::certify(rng.random_density(8));
    const auto kind = kAllChannels[static_cast<std::size_t>(trial) % 3];
    const auto b = make_channel(kind, rng.uniform()), c = make_channel(kind, rng.uniform());
    const auto bc = apply_to_qubit(apply_to_qubit(rho, QubitIndex{1}, b), QubitIndex{2}, c);
    const auto cb = apply_to_qubit(apply_to_qubit(rho, QubitIndex{2}, c), QubitIndex{1}, b);
    CHECK(max_abs_diff(bc.matrix(), cb.matrix()) <= 1e-14);
  }
}

TEST_CASE("apply_policy examples", "[channels]") {
  Scenario s;
  s.alpha = 0.8;
  s.rb = 0.3;
  s.rc = 0.6;
  s.pb = 0.2;
  s.pc = 0.45;
  s.channel = ChannelKind::phase_damping;

  SECTION("reduced_qubit damping on AB1C1 gives d1 in the corner") {
    const auto red = reduce_to_subsystem(dilate(initial_state(s.alpha), AccelerationParameter{s.rb}, AccelerationParameter{s.rc}),
                                         Subsystem::AB1C1);
    const auto out = apply_policy(s, red);
    const double d1 = s.alpha / 2 * std::sqrt(1 - s.pb) * std::sqrt(1 - s.pc) * std::cos(s.rb) * std::cos(s.rc);
    CHECK_THAT(out(0, 7).real(), WithinAbs(d1, 1e-15));
  }
  SECTION("rindler_mode damping then reduction to AB2C1 gives d2") {
    s.policy = NoisePolicy::rindler_mode;
    s.subsystem = Subsystem::AB2C1;
    const auto global = dilate(initial_state(s.alpha), AccelerationParameter{s.rb}, AccelerationParameter{s.rc});
    const auto out = reduce_to_subsystem(apply_policy(s, global), Subsystem::AB2C1);
    const double d2 = s.alpha / 2 * std::sqrt(1 - s.pb) * std::sqrt(1 - s.pc) * std::sin(s.rb) * std::cos(s.rc);
    CHECK_THAT(out(2, 5).real(), WithinAbs(d2, 1e-15));
  }
  SECTION("zero probabilities leave the state unchanged") {
    s.pb = s.pc = 0.0;
    for (auto kind : kAllChannels) {
      s.channel = kind;
      s.policy = NoisePolicy::reduced_qubit;
      const auto red = initial_state(s.alpha);
      CHECK(max_abs_diff(apply_policy(s, red).matrix(), red.matrix()) == 0.0);
      s.policy = NoisePolicy::rindler_mode;
      const auto global = dilate(red, AccelerationParameter{s.rb}, AccelerationParameter{s.rc});
      CHECK(max_abs_diff(apply_policy(s, global).matrix(), global.matrix()) == 0.0);
    }
  }
  SECTION("dimension mismatch") {
    s.policy = NoisePolicy::rindler_mode;
    CHECK_THROWS_AS(apply_policy(s, initial_state(0.5)), ArgumentError);
    s.policy = NoisePolicy::reduced_qubit;
    CHECK_THROWS_AS(apply_policy(s, dilate(initial_state(0.5), AccelerationParameter{}, AccelerationParameter{})),
                    ArgumentError);
  }
}

TEST_CASE("dephasing policies agree on the A-B-C reductions", "[channels][property]") {
  const auto rs = grid(0.0, std::numbers::pi / 4, 4);
  const auto ps = grid(0.0, 1.0, 4);
  for (auto kind : {ChannelKind::phase_damping, ChannelKind::phase_flip})
    for (double a : {0.3, 1.0 / std::numbers::sqrt2, 1.0})
      for (double rb : rs)
        for (double rc : rs)
          for (double pb : ps)
            for (double pc : ps)
              for (auto sub : kTripartySubsystems) {
                Scenario s{sub, a, rb, rc, kind, pb, pc, NoisePolicy::reduced_qubit, {}};
                const auto reduced_first = simulate(s);
                s.policy = NoisePolicy::rindler_mode;
                const auto global_first = simulate(s);
                CHECK(max_abs_diff(reduced_first.matrix(), global_first.matrix()) <= 1e-12);
              }
}
