#pragma once

// Small dense complex linear algebra used per mode: operator norms, the matrix
// exponential, phi-functions of exponential integrators.

#include <vector>

#include <Eigen/Core>

#include "mgt/spectral.hpp"

namespace mgt {

using CMatrix = Eigen::MatrixXcd;

/// Largest singular value.
double opnorm(const CMatrix& m);

/// Eigenvalues by dense complex Schur (QR) iteration. Independent of every closed form.
std::vector<Complex> dense_eigenvalues(const CMatrix& m);

/// exp(m) by scaling and squaring of the degree-13 Taylor polynomial, with the squaring
/// count chosen so that ||m / 2^k||_1 <= 0.5.
CMatrix expm_scaling_squaring(const CMatrix& m);

/// exp(m) = V diag(exp(lambda)) V^{-1}, eigenvectors taken from the null space of
/// (m - lambda I) for the supplied, pairwise distinct eigenvalues.
CMatrix expm_eigen(const CMatrix& m, const std::vector<Complex>& eigenvalues);

/// phi_0 = exp, phi_1(M) = M^{-1}(e^M - I), phi_2(M) = M^{-2}(e^M - I - M).
struct PhiFunctions {
  CMatrix phi0;
  CMatrix phi1;
  CMatrix phi2;
};

/// phi_0..phi_2 of m. Power series when ||m||_1 <= 0.1, otherwise the exponential of the
/// block matrix [[m, I, 0], [0, 0, I], [0, 0, 0]].
PhiFunctions phi_functions(const CMatrix& m);

/// Scalar phi_k(z) = sum_{j>=0} z^j / (j + k)!, for k = 0..4.
double phi_scalar(int k, double z);

}  // namespace mgt
