#include "mgt/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mgt/errors.hpp"

namespace mgt {

std::string to_string(NonlinearForm form) {
  switch (form) {
    case NonlinearForm::Zero:
      return "zero";
    case NonlinearForm::Cubic:
      return "cubic";
    case NonlinearForm::PowerSign:
      return "power";
  }
  return "?";
}

Nonlinearity Nonlinearity::power_sign(double kappa, double rho) {
  if (!std::isfinite(rho) || !(rho > 1.0)) throw InvalidArgument("rho must be > 1");
  if (!std::isfinite(kappa)) throw InvalidArgument("kappa must be finite");
  return {NonlinearForm::PowerSign, kappa, rho};
}

double Nonlinearity::operator()(double s) const {
  switch (form) {
    case NonlinearForm::Zero:
      return 0.0;
    case NonlinearForm::Cubic:
      return kappa * s * s * s;
    case NonlinearForm::PowerSign:
      return kappa * s * std::pow(std::abs(s), rho - 1.0);
  }
  return 0.0;
}

CVector nemytskii(const Nonlinearity& f, const CVector& u_hat, const EigenSequence& eigs) {
  if (!eigs.is_dirichlet()) {
    throw UnsupportedBasis("nemytskii: grid evaluation needs the Dirichlet sine basis");
  }
  if (f.form == NonlinearForm::Zero) {
    if (static_cast<std::size_t>(u_hat.size()) != eigs.size()) {
      throw ShapeError("nemytskii: coefficient vector length differs from eigen sequence");
    }
    return CVector::Zero(u_hat.size());
  }
  GridField field = synthesize(u_hat, eigs);
  for (double& s : field.samples) s = f(s);
  return analyze(field, eigs);
}

double rho_bound(int space_dim) {
  if (space_dim < 3) throw DomainError("exponent bound is stated for space dimension N >= 3");
  return (3.0 * space_dim + 4.0) / (3.0 * space_dim - 8.0);
}

bool rho_admissible(int space_dim, double rho) {
  const double bound = rho_bound(space_dim);
  return rho > 1.0 && rho < bound;
}

double lipschitz_probe(const Nonlinearity& f, double radius, int samples, const EigenSequence& eigs,
                       std::uint64_t seed) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("radius must be > 0");
  if (samples < 2) throw InvalidArgument("lipschitz probe needs at least 2 samples");
  if (f.form == NonlinearForm::Zero) return 0.0;

  const double rho = f.rho;
  const auto n = static_cast<Eigen::Index>(eigs.size());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit;

  auto draw = [&]() {
    CVector c(n);
    for (Eigen::Index k = 0; k < n; ++k) c[k] = gauss(rng);
    const double target = radius * unit(rng);
    const double norm = scale_norm(1.0 / 3.0, c, eigs);
    return CVector(c * (norm > 0.0 ? target / norm : 0.0));
  };

  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    const CVector p1 = draw();
    const CVector p2 = draw();
    const double n1 = scale_norm(1.0 / 3.0, p1, eigs);
    const double n2 = scale_norm(1.0 / 3.0, p2, eigs);
    const double denom = scale_norm(1.0 / 3.0, CVector(p1 - p2), eigs) *
                         (1.0 + std::pow(n1, rho - 1.0) + std::pow(n2, rho - 1.0));
    if (denom < 1e-14) continue;
    const CVector diff = nemytskii(f, p1, eigs) - nemytskii(f, p2, eigs);
    best = std::max(best, scale_norm(0.0, diff, eigs) / denom);
  }
  return best;
}

}  // namespace mgt
