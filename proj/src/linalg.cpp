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

#include "qdarwin/linalg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "qdarwin/error.hpp"

namespace qdarwin {
namespace {

constexpr double kEntropyCutoff = 1e-12;
constexpr double kNegativeEigenError = -1e-6;
// Eigenvalues this small (relative to the largest) are rounding noise; their
// square roots would otherwise add ~1e-8 each to traces of matrix roots.
constexpr double kRootFloor = 1e-13;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p, q); accumulates into v.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const Complex phase = std::conj(apq) / r;  // e^{-i arg(apq)}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * r);
  const double t = theta == 0.0 ? 1.0 : std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
  const double c = 1.0 / std::hypot(t, 1.0);
  const double s = t * c;

  const Complex gpp = c;
  const Complex gpq = s;
  const Complex gqp = -s * phase;
  const Complex gqq = c * phase;
  const std::size_t d = a.dim();

  for (std::size_t k = 0; k < d; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * gpp + akq * gqp;
    a(k, q) = akp * gpq + akq * gqq;
  }
  for (std::size_t k = 0; k < d; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * r;
  a(q, q) = aqq + t * r;

  for (std::size_t k = 0; k < d; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * gpp + vkq * gqp;
    v(k, q) = vkp * gpq + vkq * gqq;
  }
}

std::vector<double> clamped_roots(std::span<const double> values, const char* what) {
  const double top = std::max(1.0, values.empty() ? 0.0 : values.back());
  std::vector<double> roots(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] < kNegativeEigenError) {
      throw NumericalError(std::string(what) + ": eigenvalue " + std::to_string(values[k]) +
                           " is too negative; project the state first");
    }
    roots[k] = values[k] > kRootFloor * top ? std::sqrt(values[k]) : 0.0;
  }
  return roots;
}

}  // namespace

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  ComplexMatrix out(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
    }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep, std::size_t n_qubits) {
  if (n_qubits >= 63 || rho.dim() != (std::size_t{1} << n_qubits)) {
    throw InvalidArgument("partial_trace: matrix dimension does not match 2^" + std::to_string(n_qubits));
  }
  if (keep.empty()) throw InvalidArgument("partial_trace: keep set is empty");
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw InvalidArgument("partial_trace: duplicate qubit index in keep set");
  }
  if (kept.back() >= n_qubits) throw InvalidArgument("partial_trace: qubit index out of range");

  std::vector<std::size_t> traced;
  for (std::size_t q = 0, k = 0; q < n_qubits; ++q) {
    if (k < kept.size() && kept[k] == q) {
      ++k;
    } else {
      traced.push_back(q);
    }
  }

  // Scatter a compact index over the listed qubits into a full register index.
  auto scatter = [n_qubits](std::size_t compact, const std::vector<std::size_t>& qubits) {
    std::size_t full = 0;
    const std::size_t m = qubits.size();
    for (std::size_t pos = 0; pos < m; ++pos) {
      if ((compact >> (m - 1 - pos)) & 1U) full |= std::size_t{1} << (n_qubits - 1 - qubits[pos]);
    }
    return full;
  };

  const std::size_t dk = std::size_t{1} << kept.size();
  const std::size_t dt = std::size_t{1} << traced.size();
  std::vector<std::size_t> kept_idx(dk), traced_idx(dt);
  for (std::size_t i = 0; i < dk; ++i) kept_idx[i] = scatter(i, kept);
  for (std::size_t t = 0; t < dt; ++t) traced_idx[t] = scatter(t, traced);

  const ComplexMatrix& m = rho.mat();
  ComplexMatrix out(dk);
  for (std::size_t i = 0; i < dk; ++i)
    for (std::size_t j = 0; j < dk; ++j) {
      Complex s = 0.0;
      for (std::size_t t = 0; t < dt; ++t) s += m(kept_idx[i] | traced_idx[t], kept_idx[j] | traced_idx[t]);
      out(i, j) = s;
    }
  return DensityMatrix::trusted(std::move(out), rho.physical());
}

EigenDecomposition hermitian_eig(const ComplexMatrix& h) {
  if (h.hermiticity_defect() > 1e-9) throw InvalidArgument("hermitian_eig: input is not Hermitian");
  const std::size_t d = h.dim();
  ComplexMatrix a = h;
  for (std::size_t i = 0; i < d; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < d; ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(d);

  const double tol = 1e-14 * std::max(1.0, a.frobenius_norm());
  double off = off_diagonal_norm(a);
  int sweep = 0;
  for (; sweep < kMaxSweeps && off > tol; ++sweep) {
    for (std::size_t p = 0; p + 1 < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) rotate(a, v, p, q);
    off = off_diagonal_norm(a);
  }
  if (off > 1e-12) throw NumericalError("hermitian_eig: Jacobi sweeps did not converge");

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  EigenDecomposition out{std::vector<double>(d), ComplexMatrix(d)};
  for (std::size_t k = 0; k < d; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t row = 0; row < d; ++row) out.vectors(row, k) = v(row, order[k]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) { return hermitian_eig(h).values; }

ComplexMatrix from_spectrum(const ComplexMatrix& vectors, std::span<const double> values) {
  const std::size_t d = vectors.dim();
  if (values.size() != d) throw InvalidArgument("from_spectrum: size mismatch");
  ComplexMatrix scaled = vectors;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) scaled(i, k) *= values[k];
  return scaled * vectors.adjoint();
}

ComplexMatrix matrix_sqrt_psd(const DensityMatrix& rho) {
  const auto eig = hermitian_eig(rho.mat());
  const auto roots = clamped_roots(eig.values, "matrix_sqrt_psd");
  return from_spectrum(eig.vectors, roots);
}

double von_neumann_entropy(const DensityMatrix& rho, EntropyMode mode) {
  if (mode == EntropyMode::Physical && !rho.physical()) {
    throw InvalidArgument("von_neumann_entropy: physical mode requires a projected (physical) state");
  }
  const auto values = hermitian_eigenvalues(rho.mat());
  if (mode == EntropyMode::Physical && values.front() < kNegativeEigenError) {
    throw NumericalError("von_neumann_entropy: negative eigenvalue in physical mode");
  }
  double h = 0.0;
  for (double lambda : values) {
    if (lambda > kEntropyCutoff) h -= lambda * std::log2(lambda);
  }
  return h;
}

double purity(const DensityMatrix& rho) {
  double s = 0.0;
  for (const auto& z : rho.mat().entries()) s += std::norm(z);
  return s;
}

double fidelity(const DensityMatrix& rho_t, const DensityMatrix& rho_e) {
  if (rho_t.dim() != rho_e.dim()) throw InvalidArgument("fidelity: dimension mismatch");
  if (!rho_t.physical() || !rho_e.physical()) throw InvalidArgument("fidelity: both states must be physical");
  const ComplexMatrix root = matrix_sqrt_psd(rho_t);
  ComplexMatrix inner = root * rho_e.mat() * root;
  const std::size_t d = inner.dim();
  for (std::size_t i = 0; i < d; ++i) {
    inner(i, i) = inner(i, i).real();
    for (std::size_t j = i + 1; j < d; ++j) {
      const Complex avg = 0.5 * (inner(i, j) + std::conj(inner(j, i)));
      inner(i, j) = avg;
      inner(j, i) = std::conj(avg);
    }
  }
  const auto values = hermitian_eigenvalues(inner);
  const auto roots = clamped_roots(values, "fidelity");
  const double f = std::accumulate(roots.begin(), roots.end(), 0.0);
  return std::clamp(f, 0.0, 1.0);
}

}  // namespace qdarwin
