// Copyright 2026 The qgame Authors
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

#include <catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "qgame/constructors.hpp"
#include "qgame/game_core.hpp"
#include "support.hpp"

using namespace qgame;
using qgame::testing::kind_of;
using qgame::testing::Rng;

namespace {

BasisPtr pauli_basis() {
  ComplexMatrix x = ComplexMatrix::Zero(2, 2), y = ComplexMatrix::Zero(2, 2),
                z = ComplexMatrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  y(0, 1) = Complex(0, -1);
  y(1, 0) = Complex(0, 1);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return OperatorBasis::create({ComplexMatrix::Identity(2, 2), x, y, z}, "pauli");
}

// Entry-by-entry tr(R K_a rho K_b^dagger) for a two-player game.
ComplexMatrix two_player_oracle(const StaticQuantumGame& g, const OperatorBasis& b, int k) {
  const int s = b.size();
  ComplexMatrix out(s * s, s * s);
  for (int a1 = 0; a1 < s; ++a1)
    for (int a2 = 0; a2 < s; ++a2)
      for (int b1 = 0; b1 < s; ++b1)
        for (int b2 = 0; b2 < s; ++b2) {
          const ComplexMatrix ka = tensor_product(b.element(a1), b.element(a2));
          const ComplexMatrix kb = tensor_product(b.element(b1), b.element(b2));
          out(a1 * s + a2, b1 * s + b2) = (g.payoff_op(k) * ka * g.rho() * kb.adjoint()).trace();
        }
  return out;
}

std::vector<ChiMatrix> chis(const std::vector<KrausChannel>& chs, const BasisPtr& b) {
  std::vector<ChiMatrix> out;
  for (const auto& c : chs) out.push_back(kraus_to_chi(c, b));
  return out;
}

ComplexMatrix bell_state() {
  ComplexMatrix bell = ComplexMatrix::Zero(4, 4);
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  return bell;
}

}  // namespace

TEST_CASE("payoff operator from a referee POVM", "[game_core]") {
  const POVMPayoffScheme scheme = bell_measurement_scheme();
  CHECK(scheme.completeness_residual() < 1e-15);
  for (int k = 0; k < 2; ++k) {
    const ComplexMatrix r = povm_to_payoff_operator(scheme, k);
    CHECK((r - bell_state()).norm() < 1e-15);
    CHECK(max_eigenvalue(r) == Catch::Approx(1.0));
    CHECK(min_eigenvalue(r) == Catch::Approx(0.0).margin(1e-15));
  }

  // Computational-basis projectors paying 0..3 give diag(0, 1, 2, 3).
  POVMPayoffScheme counting;
  for (int m = 0; m < 4; ++m) counting.measurement_ops.push_back(matrix_unit(4, m, m));
  counting.payoffs = {{0, 1, 2, 3}, {3, 2, 1, 0}};
  const ComplexMatrix r0 = povm_to_payoff_operator(counting, 0);
  for (int m = 0; m < 4; ++m) CHECK(r0(m, m).real() == Catch::Approx(m));
  CHECK((r0 + povm_to_payoff_operator(counting, 1) - 3.0 * ComplexMatrix::Identity(4, 4)).norm() <
        1e-15);

  POVMPayoffScheme broken = counting;
  broken.measurement_ops.pop_back();
  CHECK(kind_of([&] { (void)povm_to_payoff_operator(broken, 0); }) == ErrorKind::IncompletePOVM);
  POVMPayoffScheme short_table = counting;
  short_table.payoffs[0].pop_back();
  CHECK(kind_of([&] { (void)povm_to_payoff_operator(short_table, 0); }) ==
        ErrorKind::DimensionMismatch);
}

TEST_CASE("any payoff lies within the spectrum of R", "[game_core]") {
  Rng rng(31);
  const StaticQuantumGame g = random_game(2, 2, 4);
  const PayoffTensor t = build_payoff_tensor(g, matrix_unit_basis(2));
  for (int draw = 0; draw < 100; ++draw) {
    const std::vector<ChiMatrix> p = chis({rng.channel(2), rng.channel(2)}, t.basis());
    const auto pay = evaluate_payoff_chi(t, p);
    for (int k = 0; k < 2; ++k) {
      CHECK(pay[k] <= max_eigenvalue(g.payoff_op(k)) + 1e-9);
      CHECK(pay[k] >= min_eigenvalue(g.payoff_op(k)) - 1e-9);
    }
  }
}

TEST_CASE("payoff tensor matches the entry-by-entry trace formula", "[game_core]") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const StaticQuantumGame g = random_game(2, 2, seed);
    for (const BasisPtr& b : {matrix_unit_basis(2), pauli_basis()}) {
      const PayoffTensor t = build_payoff_tensor(g, b);
      for (int k = 0; k < 2; ++k) {
        CHECK((t.matrix(k) - two_player_oracle(g, *b, k)).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("closed-form matrix-unit coefficients agree with the generic tensor", "[game_core]") {
  struct Case {
    int players, n;
  };
  for (Case c : {Case{2, 2}, Case{2, 3}, Case{3, 2}}) {
    const StaticQuantumGame g = random_game(c.players, c.n, 40 + c.n + c.players);
    const PayoffTensor t = build_payoff_tensor(g, matrix_unit_basis(c.n));
    for (int k = 0; k < c.players; ++k) {
      CHECK((t.matrix(k) - matrix_unit_payoff_coefficients(g, k)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  const StaticQuantumGame d4 = diagonal_game(4);
  const PayoffTensor t4 = build_payoff_tensor(d4, matrix_unit_basis(4));
  CHECK((t4.matrix(0) - matrix_unit_payoff_coefficients(d4, 0)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("diagonal game tensor entries", "[game_core]") {
  for (int n : {2, 3, 4}) {
    const PayoffTensor t = build_payoff_tensor(diagonal_game(n), matrix_unit_basis(n));
    const int s = n * n;
    int nonzero = 0;
    for (int a = 0; a < s; ++a)
      for (int c = 0; c < s; ++c)
        for (int b = 0; b < s; ++b)
          for (int d = 0; d < s; ++d) {
            const Complex v = t.matrix(0)(a * s + c, b * s + d);
            const double want = (a == c && b == d) ? 1.0 / (n * n) : 0.0;
            REQUIRE(std::abs(v - Complex(want, 0.0)) < 1e-14);
            nonzero += std::abs(v) > 0.0 ? 1 : 0;
          }
    CHECK(nonzero == s * s);
  }
}

TEST_CASE("payoff tensors are conjugate symmetric", "[game_core]") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PayoffTensor t = build_payoff_tensor(random_game(2, 2, seed), pauli_basis());
    CHECK(t.conjugate_symmetry_residual() < 1e-12);
    const std::vector<int> a{1, 2}, b{3, 0};
    CHECK(std::abs(t.at(0, b, a) - std::conj(t.at(0, a, b))) < 1e-12);
  }
  CHECK(build_payoff_tensor(random_game(3, 2, 9), matrix_unit_basis(2)).conjugate_symmetry_residual() <
        1e-12);
}

TEST_CASE("Bell game payoffs", "[game_core]") {
  const StaticQuantumGame bell = bell_example_game();
  const StaticQuantumGame from_povm =
      StaticQuantumGame::from_povm(2, 2, bell_state(), bell_measurement_scheme(), false);
  CHECK((bell.payoff_op(0) - from_povm.payoff_op(0)).norm() < 1e-15);

  const PayoffTensor t = build_payoff_tensor(bell, matrix_unit_basis(2));
  const std::vector<KrausChannel> idle{identity_channel(2), identity_channel(2)};
  const auto both = evaluate_payoff_chi(t, chis(idle, t.basis()));
  CHECK(both[0] == Catch::Approx(1.0));
  CHECK(both[1] == Catch::Approx(1.0));
  const std::vector<KrausChannel> replace{identity_channel(2), replacement_channel(2, 0)};
  CHECK(evaluate_payoff_chi(t, chis(replace, t.basis()))[0] == Catch::Approx(0.25));
  CHECK(evaluate_payoff_direct(bell, replace)[0] == Catch::Approx(0.25));
}

TEST_CASE("chi contraction and direct evaluation agree", "[game_core]") {
  Rng rng(32);
  double worst = 0.0;
  for (int draw = 0; draw < 200; ++draw) {
    const int players = draw % 4 == 3 ? 3 : 2;
    const int n = (players == 2 && draw % 2 == 1) ? 3 : 2;
    const StaticQuantumGame g = random_game(players, n, rng.seed());
    const BasisPtr b = (n == 2 && draw % 5 == 0) ? pauli_basis() : matrix_unit_basis(n);
    const PayoffTensor t = build_payoff_tensor(g, b);
    std::vector<KrausChannel> chs;
    for (int k = 0; k < players; ++k) chs.push_back(rng.channel(n));
    const auto via_chi = evaluate_payoff_chi(t, chis(chs, b));
    const auto direct = evaluate_payoff_direct(g, chs);
    for (int k = 0; k < players; ++k) worst = std::max(worst, std::abs(via_chi[k] - direct[k]));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("raw contractions are real", "[game_core]") {
  Rng rng(33);
  double worst = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    const StaticQuantumGame g = random_game(2, 2, rng.seed());
    const PayoffTensor t = build_payoff_tensor(g, draw % 2 ? pauli_basis() : matrix_unit_basis(2));
    for (const Complex& z : contract_payoff(t, chis({rng.channel(2), rng.channel(2)}, t.basis())))
      worst = std::max(worst, std::abs(z.imag()));
  }
  CHECK(worst <= 1e-9);

  // A coefficient matrix that is not conjugate symmetric gives a complex value.
  const BasisPtr b = matrix_unit_basis(2);
  const ComplexMatrix bad = Complex(0.0, 1.0) * ComplexMatrix::Identity(16, 16);
  const PayoffTensor skew(2, b, {bad, bad});
  const std::vector<ChiMatrix> p{depolarizing_chi(b), depolarizing_chi(b)};
  CHECK(kind_of([&] { (void)evaluate_payoff_chi(skew, p); }) == ErrorKind::NonRealPayoff);
}

TEST_CASE("payoffs are multilinear in the chi matrices", "[game_core]") {
  Rng rng(34);
  const StaticQuantumGame g = random_game(2, 2, 77);
  const PayoffTensor t = build_payoff_tensor(g, matrix_unit_basis(2));
  const BasisPtr b = t.basis();
  for (int draw = 0; draw < 30; ++draw) {
    const ChiMatrix a1 = kraus_to_chi(rng.channel(2), b), a2 = kraus_to_chi(rng.channel(2), b);
    const ChiMatrix other = kraus_to_chi(rng.channel(2), b);
    const double w = rng.uniform();
    const std::vector<ChiMatrix> mixed{mix(w, a1, a2), other};
    const std::vector<ChiMatrix> p1{a1, other}, p2{a2, other};
    const auto m = evaluate_payoff_chi(t, mixed);
    const auto v1 = evaluate_payoff_chi(t, p1);
    const auto v2 = evaluate_payoff_chi(t, p2);
    for (int k = 0; k < 2; ++k) CHECK(std::abs(m[k] - (w * v1[k] + (1 - w) * v2[k])) < 1e-12);

    const std::vector<ChiMatrix> second{other, mix(w, a1, a2)};
    const std::vector<ChiMatrix> s1{other, a1}, s2{other, a2};
    const auto sm = evaluate_payoff_chi(t, second);
    CHECK(std::abs(sm[0] - (w * evaluate_payoff_chi(t, s1)[0] +
                            (1 - w) * evaluate_payoff_chi(t, s2)[0])) < 1e-12);
  }
}

TEST_CASE("payoffs do not depend on the chosen basis", "[game_core]") {
  Rng rng(35);
  const StaticQuantumGame g = random_game(2, 2, 5);
  const PayoffTensor mu = build_payoff_tensor(g, matrix_unit_basis(2));
  const PayoffTensor pa = build_payoff_tensor(g, pauli_basis());
  for (int draw = 0; draw < 30; ++draw) {
    const std::vector<KrausChannel> chs{rng.channel(2), rng.channel(2)};
    const auto a = evaluate_payoff_chi(mu, chis(chs, mu.basis()));
    const auto c = evaluate_payoff_chi(pa, chis(chs, pa.basis()));
    for (int k = 0; k < 2; ++k) CHECK(std::abs(a[k] - c[k]) < 1e-10);
  }
}

TEST_CASE("zero-sum games pay opposite amounts", "[game_core]") {
  Rng rng(36);
  const StaticQuantumGame g = bell_zero_sum_game();
  CHECK(g.zero_sum());
  const PayoffTensor t = build_payoff_tensor(g, matrix_unit_basis(2));
  for (int draw = 0; draw < 50; ++draw) {
    const auto p = evaluate_payoff_chi(t, chis({rng.channel(2), rng.channel(2)}, t.basis()));
    CHECK(std::abs(p[0] + p[1]) < 1e-12);
  }
}

TEST_CASE("game validation names the failing residual", "[game_core]") {
  const ComplexMatrix good = bell_state();
  const ComplexMatrix r = bell_state();

  try {
    StaticQuantumGame(2, 2, 0.9 * good, {r, r}, false);
    FAIL("expected ValidationError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ValidationError);
    CHECK(std::string(e.what()).find("trace residual") != std::string::npos);
    CHECK(e.residual() == Catch::Approx(0.1));
  }

  ComplexMatrix skew = good;
  skew(0, 3) = Complex(0.5, 0.2);
  CHECK(kind_of([&] { StaticQuantumGame(2, 2, skew, {r, r}, false); }) ==
        ErrorKind::ValidationError);

  ComplexMatrix negative = ComplexMatrix::Zero(4, 4);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  try {
    StaticQuantumGame(2, 2, negative, {r, r}, false);
    FAIL("expected ValidationError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("smallest eigenvalue") != std::string::npos);
    CHECK(e.residual() == Catch::Approx(-0.5));
  }

  ComplexMatrix bad_r = r;
  bad_r(0, 1) = 1.0;
  CHECK(kind_of([&] { StaticQuantumGame(2, 2, good, {r, bad_r}, false); }) ==
        ErrorKind::ValidationError);
  try {
    StaticQuantumGame(2, 2, good, {r, r}, true);
    FAIL("expected ValidationError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("zero-sum residual") != std::string::npos);
  }
  CHECK(kind_of([&] { StaticQuantumGame(2, 2, ComplexMatrix::Identity(3, 3) / 3.0, {r, r}, false); }) ==
        ErrorKind::DimensionMismatch);
  CHECK(kind_of([&] { StaticQuantumGame(2, 2, good, {r}, false); }) == ErrorKind::ValidationError);
  CHECK(kind_of([&] { StaticQuantumGame(1, 2, ComplexMatrix::Identity(2, 2) / 2.0, {r}, false); }) ==
        ErrorKind::ValidationError);

  const GameValidation v = bell_zero_sum_game().validation();
  CHECK(v.trace_residual < 1e-15);
  CHECK(v.zero_sum_residual == 0.0);
}

TEST_CASE("profiles must match the tensor", "[game_core]") {
  const StaticQuantumGame g = bell_example_game();
  const PayoffTensor t = build_payoff_tensor(g, matrix_unit_basis(2));
  const std::vector<ChiMatrix> foreign{depolarizing_chi(pauli_basis()),
                                       depolarizing_chi(pauli_basis())};
  CHECK(kind_of([&] { (void)evaluate_payoff_chi(t, foreign); }) == ErrorKind::BasisMismatch);
  const std::vector<ChiMatrix> one{depolarizing_chi(t.basis())};
  CHECK(kind_of([&] { (void)evaluate_payoff_chi(t, one); }) == ErrorKind::DimensionMismatch);
  const std::vector<KrausChannel> wrong{identity_channel(3), identity_channel(3)};
  CHECK(kind_of([&] { (void)evaluate_payoff_direct(g, wrong); }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([&] { (void)build_payoff_tensor(g, matrix_unit_basis(3)); }) ==
        ErrorKind::DimensionMismatch);
}

TEST_CASE("contracting all but one player leaves a linear functional", "[game_core]") {
  Rng rng(37);
  const StaticQuantumGame g = random_game(3, 2, 12);
  const PayoffTensor t = build_payoff_tensor(g, matrix_unit_basis(2));
  for (int draw = 0; draw < 10; ++draw) {
    const std::vector<ChiMatrix> p = chis({rng.channel(2), rng.channel(2), rng.channel(2)}, t.basis());
    const auto full = evaluate_payoff_chi(t, p);
    for (int player = 0; player < 3; ++player) {
      for (int k = 0; k < 3; ++k) {
        const ComplexMatrix c = contract_all_but(t, player, p, k);
        const Complex v = c.cwiseProduct(p[player].matrix()).sum();
        CHECK(std::abs(v.real() - full[k]) < 1e-10);
      }
    }
  }
}
