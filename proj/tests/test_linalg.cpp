// Copyright 2026 The qdarwin Authors
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

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qdarwin/error.hpp"
#include "qdarwin/linalg.hpp"
#include "test_support.hpp"

using namespace qdarwin;
using qdarwin::testing::frobenius_diff;
using qdarwin::testing::max_abs_diff;

namespace {

const Complex kI{0.0, 1.0};
const ComplexMatrix kX{{0, 1}, {1, 0}};
const ComplexMatrix kY{{0, -kI}, {kI, 0}};
const ComplexMatrix kZ{{1, 0}, {0, -1}};
const ComplexMatrix kI2 = ComplexMatrix::identity(2);

ComplexMatrix ket_bra(std::size_t dim, std::size_t row, std::size_t col) {
  ComplexMatrix m(dim);
  m(row, col) = 1.0;
  return m;
}

// rho_K(i, j) = Tr[rho (|j><i|_K (x) I_rest)], operator assembled factor by
// factor in register order.
ComplexMatrix partial_trace_oracle(const ComplexMatrix& rho, const std::vector<std::size_t>& keep, std::size_t n) {
  const std::size_t k = keep.size();
  const std::size_t dk = std::size_t{1} << k;
  ComplexMatrix out(dk);
  for (std::size_t i = 0; i < dk; ++i)
    for (std::size_t j = 0; j < dk; ++j) {
      ComplexMatrix op = ComplexMatrix::identity(1);
      std::size_t slot = 0;
      for (std::size_t q = 0; q < n; ++q) {
        if (slot < k && keep[slot] == q) {
          const std::size_t bi = (i >> (k - 1 - slot)) & 1U;
          const std::size_t bj = (j >> (k - 1 - slot)) & 1U;
          op = tensor_product(op, ket_bra(2, bj, bi));
          ++slot;
        } else {
          op = tensor_product(op, kI2);
        }
      }
      out(i, j) = (rho * op).trace();
    }
  return out;
}

DensityMatrix bell_density() {
  ComplexMatrix m(4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return DensityMatrix::checked_physical(m);
}

DensityMatrix pure_density(std::initializer_list<Complex> amps) {
  std::vector<Complex> v(amps);
  std::size_t n = 0;
  while ((std::size_t{1} << n) < v.size()) ++n;
  return DensityMatrix::pure(StateVector(n, v));
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("tensor_product examples") {
    CHECK(tensor_product(kI2, kI2) == ComplexMatrix::identity(4));
    const double zz[] = {1, -1, -1, 1};
    CHECK(tensor_product(kZ, kZ) == ComplexMatrix::diagonal(zz));
    // X (x) Z = [[0, Z], [Z, 0]]
    const ComplexMatrix xz = tensor_product(kX, kZ);
    const ComplexMatrix expected{{0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, -1, 0, 0}};
    CHECK(xz == expected);
  }

  TEST_CASE("tensor_product is associative") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> small(-3, 3);
    auto integer_matrix = [&](std::size_t d) {
      ComplexMatrix m(d);
      for (auto& z : m.entries()) z = Complex(small(rng), small(rng));
      return m;
    };
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = integer_matrix(2), b = integer_matrix(4), c = integer_matrix(2);
      CHECK(tensor_product(tensor_product(a, b), c) == tensor_product(a, tensor_product(b, c)));
    }
  }

  TEST_CASE("partial_trace examples") {
    const auto zero_zero = pure_density({1, 0, 0, 0});
    const std::size_t keep0[] = {0};
    CHECK(max_abs_diff(partial_trace(zero_zero, keep0, 2).mat(), ket_bra(2, 0, 0)) < 1e-15);

    const auto reduced = partial_trace(bell_density(), keep0, 2);
    const double half[] = {0.5, 0.5};
    CHECK(max_abs_diff(reduced.mat(), ComplexMatrix::diagonal(half)) < 1e-15);
    CHECK(max_abs_diff(partial_trace_oracle(bell_density().mat(), {0}, 2), reduced.mat()) < 1e-15);

    std::mt19937_64 rng(5);
    const auto rho = DensityMatrix::checked_physical(qdarwin::testing::random_density(8, rng));
    const std::size_t all[] = {0, 1, 2};
    CHECK(max_abs_diff(partial_trace(rho, all, 3).mat(), rho.mat()) < 1e-15);
  }

  TEST_CASE("partial_trace errors") {
    const auto rho = bell_density();
    const std::size_t keep0[] = {0};
    const std::size_t bad[] = {2};
    const std::size_t dup[] = {1, 1};
    CHECK_THROWS_AS(partial_trace(rho, keep0, 3), InvalidArgument);
    CHECK_THROWS_AS(partial_trace(rho, std::span<const std::size_t>{}, 2), InvalidArgument);
    CHECK_THROWS_AS(partial_trace(rho, bad, 2), InvalidArgument);
    CHECK_THROWS_AS(partial_trace(rho, dup, 2), InvalidArgument);
  }

  TEST_CASE("partial_trace matches brute-force oracle") {
    std::mt19937_64 rng(17);
    for (std::size_t n = 2; n <= 4; ++n) {
      const auto rho = qdarwin::testing::random_hermitian_unit_trace(std::size_t{1} << n, rng);
      const auto raw = DensityMatrix::raw(rho);
      for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> keep;
        for (std::size_t q = 0; q < n; ++q)
          if (mask & (std::size_t{1} << q)) keep.push_back(q);
        CHECK(max_abs_diff(partial_trace(raw, keep, n).mat(), partial_trace_oracle(rho, keep, n)) < 1e-12);
      }
    }
  }

  TEST_CASE("partial_trace preserves trace and hermiticity (property)") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> width(2, 6);
    for (int trial = 0; trial < 120; ++trial) {
      const std::size_t n = width(rng);
      const auto rho = DensityMatrix::raw(qdarwin::testing::random_hermitian_unit_trace(std::size_t{1} << n, rng));
      std::vector<std::size_t> keep;
      std::bernoulli_distribution coin(0.5);
      for (std::size_t q = 0; q < n; ++q)
        if (coin(rng)) keep.push_back(q);
      if (keep.empty()) keep.push_back(n - 1);
      const auto reduced = partial_trace(rho, keep, n);
      CHECK(std::abs(reduced.mat().trace() - 1.0) < 1e-9);
      CHECK(reduced.mat().hermiticity_defect() < 1e-12);
    }
  }

  TEST_CASE("hermitian_eig examples") {
    const double d312[] = {3, 1, 2};
    auto e = hermitian_eig(ComplexMatrix::diagonal(d312));
    CHECK(e.values == std::vector<double>{1, 2, 3});

    e = hermitian_eig(kX);
    CHECK(e.values[0] == doctest::Approx(-1).epsilon(1e-14));
    CHECK(e.values[1] == doctest::Approx(1).epsilon(1e-14));

    const double a = std::numbers::pi / 5.0;
    const auto proj = pure_density({std::cos(a), std::sin(a)});
    e = hermitian_eig(proj.mat());
    CHECK(std::abs(e.values[0]) < 1e-14);
    CHECK(std::abs(e.values[1] - 1.0) < 1e-14);
  }

  TEST_CASE("hermitian_eig rejects non-Hermitian input") {
    const ComplexMatrix m{{1, 1}, {0, 1}};
    CHECK_THROWS_AS(hermitian_eig(m), InvalidArgument);
  }

  TEST_CASE("hermitian_eig decomposition and cross-check against Eigen") {
    std::mt19937_64 rng(99);
    for (std::size_t dim : {1u, 2u, 3u, 8u, 17u, 64u}) {
      const ComplexMatrix g = qdarwin::testing::random_gaussian(dim, rng);
      const ComplexMatrix h = g + g.adjoint();
      const auto e = hermitian_eig(h);
      const ComplexMatrix& v = e.vectors;
      // h v_k = lambda_k v_k
      const ComplexMatrix hv = h * v;
      double residual = 0.0;
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t k = 0; k < dim; ++k) residual = std::max(residual, std::abs(hv(i, k) - e.values[k] * v(i, k)));
      CHECK(residual < 1e-8);
      CHECK(max_abs_diff(v.adjoint() * v, ComplexMatrix::identity(dim)) < 1e-8);
      CHECK(frobenius_diff(from_spectrum(v, e.values), h) / h.frobenius_norm() < 1e-8);
      CHECK(std::is_sorted(e.values.begin(), e.values.end()));

      Eigen::MatrixXcd em(dim, dim);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) em(i, j) = h(i, j);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(em, Eigen::EigenvaluesOnly);
      for (std::size_t k = 0; k < dim; ++k) CHECK(std::abs(solver.eigenvalues()(k) - e.values[k]) < 1e-10);
    }
  }

  TEST_CASE("matrix_sqrt_psd examples") {
    const double half[] = {0.5, 0.5};
    const auto mixed = DensityMatrix::checked_physical(ComplexMatrix::diagonal(half));
    CHECK(max_abs_diff(matrix_sqrt_psd(mixed), ComplexMatrix::identity(2) * Complex{1.0 / std::sqrt(2.0)}) < 1e-14);

    const double a = 0.3;
    const auto proj = pure_density({std::cos(a), Complex{0.0, std::sin(a)}});
    CHECK(max_abs_diff(matrix_sqrt_psd(proj), proj.mat()) < 1e-12);

    const double diag[] = {0.25, 0.75};
    const double roots[] = {0.5, std::sqrt(0.75)};
    CHECK(max_abs_diff(matrix_sqrt_psd(DensityMatrix::checked_physical(ComplexMatrix::diagonal(diag))),
                       ComplexMatrix::diagonal(roots)) < 1e-14);
  }

  TEST_CASE("matrix_sqrt_psd squared reproduces the input") {
    std::mt19937_64 rng(3);
    for (std::size_t dim : {2u, 4u, 16u, 64u}) {
      const auto rho = DensityMatrix::checked_physical(qdarwin::testing::random_density(dim, rng));
      const ComplexMatrix root = matrix_sqrt_psd(rho);
      CHECK(frobenius_diff(root * root, rho.mat()) / rho.mat().frobenius_norm() < 1e-7);
      CHECK(root.hermiticity_defect() < 1e-12);
      CHECK(hermitian_eigenvalues(root).front() > -1e-12);
    }
  }

  TEST_CASE("matrix_sqrt_psd rejects clearly negative spectra") {
    const double diag[] = {1.1, -0.1};
    CHECK_THROWS_AS(matrix_sqrt_psd(DensityMatrix::raw(ComplexMatrix::diagonal(diag))), NumericalError);
  }

  TEST_CASE("von_neumann_entropy examples") {
    const double a = 1.1;
    CHECK(von_neumann_entropy(pure_density({std::cos(a), std::sin(a)}), EntropyMode::Physical) ==
          doctest::Approx(0.0).epsilon(1e-12));
    const double half[] = {0.5, 0.5};
    CHECK(von_neumann_entropy(DensityMatrix::checked_physical(ComplexMatrix::diagonal(half)), EntropyMode::Physical) ==
          doctest::Approx(1.0).epsilon(1e-14));
    const double quarter[] = {0.25, 0.25, 0.25, 0.25};
    CHECK(von_neumann_entropy(DensityMatrix::checked_physical(ComplexMatrix::diagonal(quarter)),
                              EntropyMode::Physical) == doctest::Approx(2.0).epsilon(1e-14));
  }

  TEST_CASE("von_neumann_entropy modes") {
    const double diag[] = {1.1, -0.1};
    const auto raw = DensityMatrix::raw(ComplexMatrix::diagonal(diag));
    CHECK_THROWS_AS(von_neumann_entropy(raw, EntropyMode::Physical), InvalidArgument);
    CHECK(von_neumann_entropy(raw, EntropyMode::Raw) == doctest::Approx(-1.1 * std::log2(1.1)));
  }

  TEST_CASE("entropy is invariant under unitary conjugation") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t dim = std::size_t{1} << (1 + trial % 5);
      const ComplexMatrix rho = qdarwin::testing::random_density(dim, rng);
      const ComplexMatrix u = qdarwin::testing::random_unitary(dim, rng);
      ComplexMatrix rotated = u * rho * u.adjoint();
      for (std::size_t i = 0; i < dim; ++i) rotated(i, i) = rotated(i, i).real();
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) rotated(j, i) = std::conj(rotated(i, j));
      const double s1 = von_neumann_entropy(DensityMatrix::checked_physical(rho), EntropyMode::Physical);
      const double s2 = von_neumann_entropy(DensityMatrix::checked_physical(rotated), EntropyMode::Physical);
      CHECK(std::abs(s1 - s2) < 1e-8);
    }
  }

  TEST_CASE("purity examples") {
    CHECK(purity(pure_density({0.6, 0.8})) == doctest::Approx(1.0).epsilon(1e-14));
    const double half[] = {0.5, 0.5};
    CHECK(purity(DensityMatrix::checked_physical(ComplexMatrix::diagonal(half))) == doctest::Approx(0.5));
    const double skew[] = {0.9, 0.1};
    CHECK(purity(DensityMatrix::checked_physical(ComplexMatrix::diagonal(skew))) == doctest::Approx(0.82).epsilon(1e-14));
  }

  TEST_CASE("fidelity examples") {
    std::mt19937_64 rng(4);
    const auto rho = DensityMatrix::checked_physical(qdarwin::testing::random_density(8, rng));
    CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-9));

    const auto zero = pure_density({1, 0});
    const auto one = pure_density({0, 1});
    CHECK(fidelity(zero, one) == doctest::Approx(0.0));
    const double half[] = {0.5, 0.5};
    const auto mixed = DensityMatrix::checked_physical(ComplexMatrix::diagonal(half));
    CHECK(std::abs(fidelity(zero, mixed) - 1.0 / std::sqrt(2.0)) < 1e-12);
  }

  TEST_CASE("fidelity of pure states equals overlap magnitude") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 1 + trial % 6;
      const auto psi = qdarwin::testing::random_state(n, rng);
      const auto phi = qdarwin::testing::random_state(n, rng);
      const double f = fidelity(DensityMatrix::pure(psi), DensityMatrix::pure(phi));
      CHECK(std::abs(f - std::abs(psi.inner(phi))) < 1e-7);
    }
  }

  TEST_CASE("fidelity is symmetric") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t dim = std::size_t{1} << (1 + trial % 4);
      const auto a = DensityMatrix::checked_physical(qdarwin::testing::random_density(dim, rng));
      const auto b = DensityMatrix::checked_physical(qdarwin::testing::random_density(dim, rng));
      CHECK(std::abs(fidelity(a, b) - fidelity(b, a)) < 1e-7);
    }
  }

  TEST_CASE("fidelity errors") {
    const auto one_qubit = pure_density({1, 0});
    CHECK_THROWS_AS(fidelity(one_qubit, bell_density()), InvalidArgument);
    const double diag[] = {1.1, -0.1};
    CHECK_THROWS_AS(fidelity(one_qubit, DensityMatrix::raw(ComplexMatrix::diagonal(diag))), InvalidArgument);
  }

  TEST_CASE("density matrix invariants are enforced") {
    const ComplexMatrix not_hermitian{{0.5, 0.1}, {0.0, 0.5}};
    CHECK_THROWS_AS(DensityMatrix::raw(not_hermitian), InvalidArgument);
    const double wrong_trace[] = {0.5, 0.6};
    CHECK_THROWS_AS(DensityMatrix::raw(ComplexMatrix::diagonal(wrong_trace)), InvalidArgument);
    const double negative[] = {1.1, -0.1};
    CHECK_THROWS_AS(DensityMatrix::checked_physical(ComplexMatrix::diagonal(negative)), InvalidArgument);
    CHECK_THROWS_AS(ComplexMatrix(0), InvalidArgument);
  }
}
