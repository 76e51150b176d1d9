#pragma once

// Pointwise nonlinearities f(u) evaluated through the sine transform, the admissible
// exponent range for the Dirichlet application, and an empirical Lipschitz probe.

#include <cstdint>
#include <string>

#include "mgt/spectral.hpp"

namespace mgt {

enum class NonlinearForm { Zero, Cubic, PowerSign };

std::string to_string(NonlinearForm form);

/// Zero: f = 0. Cubic: f(u) = kappa u^3 (rho = 3). PowerSign: f(u) = kappa u |u|^{rho-1}.
struct Nonlinearity {
  NonlinearForm form = NonlinearForm::Zero;
  double kappa = 0.0;
  double rho = 3.0;

  static Nonlinearity zero() { return {}; }
  static Nonlinearity cubic(double kappa) { return {NonlinearForm::Cubic, kappa, 3.0}; }
  /// Throws InvalidArgument unless rho > 1.
  static Nonlinearity power_sign(double kappa, double rho);

  double operator()(double s) const;
};

/// analyze(f(synthesize(u_hat))). Needs the Dirichlet basis; throws DataError when the
/// synthesized field is not real.
CVector nemytskii(const Nonlinearity& f, const CVector& u_hat, const EigenSequence& eigs);

/// (3N + 4) / (3N - 8). Throws DomainError for N < 3.
double rho_bound(int space_dim);

/// 1 < rho < rho_bound(space_dim).
bool rho_admissible(int space_dim, double rho);

/// Max over random real pairs phi_1, phi_2 with ||phi_i||_{X^{1/3}} <= radius of
///   ||f(phi_1) - f(phi_2)||_X / (||phi_1 - phi_2||_{X^{1/3}} (1 + ||phi_1||^{rho-1} + ||phi_2||^{rho-1}))
/// with the X^{1/3} norm in the powers. Pairs whose denominator falls below 1e-14 are skipped.
/// Same seed and eigen sequence give the same value.
double lipschitz_probe(const Nonlinearity& f, double radius, int samples, const EigenSequence& eigs,
                       std::uint64_t seed = 0);

}  // namespace mgt
