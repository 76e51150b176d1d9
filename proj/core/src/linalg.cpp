#include "mgt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "mgt/errors.hpp"

namespace mgt {

namespace {

double norm1(const CMatrix& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); }

CMatrix taylor13(const CMatrix& m) {
  const auto n = m.rows();
  CMatrix sum = CMatrix::Identity(n, n);
  CMatrix term = CMatrix::Identity(n, n);
  for (int k = 1; k <= 13; ++k) {
    term = term * m / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

// Vector x with (m - lambda I) x = 0, from the best-conditioned pair of rows (3x3) or
// the larger row (2x2).
Eigen::VectorXcd null_vector(const CMatrix& shifted) {
  const auto n = shifted.rows();
  if (n == 2) {
    Eigen::Index r = shifted.row(0).norm() >= shifted.row(1).norm() ? 0 : 1;
    Eigen::VectorXcd x(2);
    x << -shifted(r, 1), shifted(r, 0);
    if (x.norm() == 0.0) x << 1.0, 0.0;
    return x.normalized();
  }
  if (n == 3) {
    Eigen::Vector3cd best = Eigen::Vector3cd::Zero();
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        Eigen::Vector3cd a = shifted.row(i).transpose();
        Eigen::Vector3cd b = shifted.row(j).transpose();
        // Bilinear cross product: a^T x = b^T x = 0.
        Eigen::Vector3cd x(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                           a[0] * b[1] - a[1] * b[0]);
        if (x.norm() > best.norm()) best = x;
      }
    }
    if (best.norm() == 0.0) throw std::logic_error("null_vector: rank deficiency below 2");
    return best.normalized();
  }
  throw std::logic_error("null_vector: only 2x2 and 3x3 blocks are supported");
}

}  // namespace

double opnorm(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

std::vector<Complex> dense_eigenvalues(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw NumericalFailure("dense eigen solver did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

CMatrix expm_scaling_squaring(const CMatrix& m) {
  double norm = norm1(m);
  if (!std::isfinite(norm)) throw NumericalFailure("expm: non-finite matrix entries");
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  CMatrix result = taylor13(m / std::ldexp(1.0, squarings));
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

CMatrix expm_eigen(const CMatrix& m, const std::vector<Complex>& eigenvalues) {
  const auto n = m.rows();
  if (static_cast<Eigen::Index>(eigenvalues.size()) != n) {
    throw ShapeError("expm_eigen: need one eigenvalue per row");
  }
  CMatrix vecs(n, n);
  Eigen::VectorXcd exps(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex lambda = eigenvalues[static_cast<std::size_t>(k)];
    vecs.col(k) = null_vector(m - lambda * CMatrix::Identity(n, n));
    exps[k] = std::exp(lambda);
  }
  return vecs * exps.asDiagonal() * vecs.inverse();
}

PhiFunctions phi_functions(const CMatrix& m) {
  const auto n = m.rows();
  PhiFunctions out;
  if (norm1(m) <= 0.1) {
    // phi_k(M) = sum_j M^j / (j + k)!; 0.1^18 / 18! is far below round-off.
    out.phi0 = CMatrix::Identity(n, n);
    out.phi1 = CMatrix::Identity(n, n);
    out.phi2 = CMatrix::Identity(n, n) * 0.5;
    CMatrix power = CMatrix::Identity(n, n);
    double fact0 = 1.0, fact1 = 1.0, fact2 = 2.0;
    for (int j = 1; j <= 18; ++j) {
      power = power * m;
      fact0 *= j;
      fact1 *= (j + 1);
      fact2 *= (j + 2);
      out.phi0 += power / fact0;
      out.phi1 += power / fact1;
      out.phi2 += power / fact2;
    }
    return out;
  }
  CMatrix aug = CMatrix::Zero(3 * n, 3 * n);
  aug.block(0, 0, n, n) = m;
  aug.block(0, n, n, n) = CMatrix::Identity(n, n);
  aug.block(n, 2 * n, n, n) = CMatrix::Identity(n, n);
  CMatrix e = expm_scaling_squaring(aug);
  out.phi0 = e.block(0, 0, n, n);
  out.phi1 = e.block(0, n, n, n);
  out.phi2 = e.block(0, 2 * n, n, n);
  return out;
}

double phi_scalar(int k, double z) {
  if (k < 0 || k > 4) throw InvalidArgument("phi_scalar: k must be in [0, 4]");
  if (k == 0) return std::exp(z);
  if (std::abs(z) < 1.0) {
    double term = 1.0;
    for (int i = 2; i <= k; ++i) term /= i;  // 1/k!
    double sum = term;
    for (int j = 1; j <= 30; ++j) {
      term *= z / (j + k);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  // phi_{j+1}(z) = (phi_j(z) - 1/j!) / z
  double phi = std::exp(z);
  double inv_fact = 1.0;
  for (int j = 0; j < k; ++j) {
    if (j > 0) inv_fact /= j;
    phi = (phi - inv_fact) / z;
  }
  return phi;
}

}  // namespace mgt
