#pragma once

// Diagonal realization of the positive operator A through its eigenvalue sequence:
// fractional powers, fractional-scale norms and the sine transform used to evaluate
// nonlinearities on a physical grid.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace mgt {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;

/// mu^{1/3} rounded to nearest (std::cbrt is off by an ulp for e.g. 27).
double cube_root(double mu);

enum class BasisKind { DirichletLaplacian1D, UserSupplied };

/// Eigenvalues mu_1 < mu_2 < ... of A. All positive and strictly increasing.
class EigenSequence {
 public:
  /// mu_n = (n pi / length)^2, n = 1..n_modes.
  static EigenSequence dirichlet(int n_modes, double length);
  static EigenSequence user_supplied(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t n) const { return values_[n]; }

  /// mu_n^{1/3}; cached because every block operator is expressed through it.
  double cube_root(std::size_t n) const { return cube_roots_[n]; }

  BasisKind source() const noexcept { return source_; }
  bool is_dirichlet() const noexcept { return source_ == BasisKind::DirichletLaplacian1D; }
  /// Interval length for the Dirichlet basis; empty for user-supplied sequences.
  std::optional<double> length() const noexcept { return length_; }

 private:
  EigenSequence(std::vector<double> values, BasisKind source, std::optional<double> length);

  std::vector<double> values_;
  std::vector<double> cube_roots_;
  BasisKind source_;
  std::optional<double> length_;
};

inline EigenSequence dirichlet_eigs(int n_modes, double length) {
  return EigenSequence::dirichlet(n_modes, length);
}

/// Natural: v = u_t, w = v_t. Reduced: v = u_t + A^{1/3} u, w = v_t.
enum class Coords { Natural, Reduced };

/// Coefficients of [u, v, w] in the eigenbasis.
struct SpectralState {
  CVector u;
  CVector v;
  CVector w;
  Coords coords = Coords::Reduced;

  static SpectralState zeros(std::size_t n_modes, Coords coords);

  std::size_t size() const noexcept { return static_cast<std::size_t>(u.size()); }
  /// Throws ShapeError unless u, v, w all have n_modes entries.
  void check_shape(std::size_t n_modes) const;
};

/// Multiplies component n by mu_n^alpha.
CVector frac_apply(double alpha, const CVector& coeffs, const EigenSequence& eigs);

/// (sum_n mu_n^{2 alpha} |c_n|^2)^{1/2}, accumulated in ascending mode order.
double scale_norm(double alpha, const CVector& coeffs, const EigenSequence& eigs);

/// Norm of Z = X^{2/3} x X^{1/3} x X.
double z_norm(const SpectralState& state, const EigenSequence& eigs);

/// Samples of a real field at the interior points x_j = j L / (N + 1), j = 1..N.
struct GridField {
  std::vector<double> samples;
  double length = 0.0;

  double x(std::size_t j) const {
    return static_cast<double>(j + 1) * length / static_cast<double>(samples.size() + 1);
  }
};

/// Evaluates sum_n c_n phi_n(x_j) with phi_n(x) = sqrt(2/L) sin(n pi x / L).
/// Throws DataError if the coefficients produce a field with imaginary part above
/// 1e-10 relative to its magnitude.
GridField synthesize(const CVector& coeffs, const EigenSequence& eigs);

/// Complex-valued variant of synthesize (real and imaginary parts transformed separately).
CVector synthesize_complex(const CVector& coeffs, const EigenSequence& eigs);

/// Exact inverse of synthesize: trapezoid quadrature of f * phi_n with step L / (N + 1).
CVector analyze(const GridField& field, const EigenSequence& eigs);

}  // namespace mgt
