#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

namespace {

Eigen::MatrixXd sine_matrix(Eigen::Index n, double length) {
  Eigen::MatrixXd s(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double x = static_cast<double>(j + 1) * length / static_cast<double>(n + 1);
    for (Eigen::Index k = 0; k < n; ++k) {
      s(j, k) = std::sqrt(2.0 / length) * std::sin(static_cast<double>(k + 1) * std::numbers::pi * x / length);
    }
  }
  return s;
}

}  // namespace

CVector sine_synthesis(const CVector& coeffs, double length) {
  return sine_matrix(coeffs.size(), length).cast<Complex>() * coeffs;
}

CVector sine_analysis(const CVector& samples, double length) {
  const CMatrix s = sine_matrix(samples.size(), length).cast<Complex>();
  return s.fullPivLu().solve(samples);
}

std::vector<Complex> eigenvalues(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> solver(m, true);
  const CVector ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<Complex> eigenvalues_extended(const CMatrix& m) {
  using Wide = boost::multiprecision::cpp_bin_float_50;
  using WMatrix = Eigen::Matrix<Wide, Eigen::Dynamic, Eigen::Dynamic>;
  if (m.imag().cwiseAbs().maxCoeff() != 0.0) throw std::invalid_argument("eigenvalues_extended: real matrices only");
  const WMatrix wm = m.real().cast<Wide>();
  Eigen::EigenSolver<WMatrix> solver(wm, false);
  std::vector<Complex> out;
  for (const auto& z : solver.eigenvalues()) {
    out.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  }
  return out;
}

CMatrix inverse(const CMatrix& m) { return m.fullPivLu().inverse(); }

CMatrix expm(const CMatrix& m) { return m.exp(); }

double spectral_norm(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m.adjoint() * m);
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

double multiset_distance(std::vector<Complex> x, std::vector<Complex> y) {
  if (x.size() != y.size()) return std::numeric_limits<double>::infinity();
  std::vector<std::size_t> perm(y.size());
  for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      worst = std::max(worst, std::abs(x[k] - y[perm[k]]) / std::max(1.0, std::abs(x[k])));
    }
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::pair<Complex, Complex> quadratic_roots(Complex p, Complex q) {
  const Complex disc = std::sqrt(p * p - 4.0 * q);
  return {(-p + disc) / 2.0, (-p - disc) / 2.0};
}

std::vector<Complex> charpoly3(const CMatrix& m) {
  const Complex trace = m.trace();
  const Complex minors = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
                         m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  const Complex det = m.determinant();
  return {1.0, -trace, minors, -det};
}

}  // namespace oracle
