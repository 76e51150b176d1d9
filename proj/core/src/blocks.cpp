#include "mgt/blocks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "mgt/errors.hpp"
#include "mgt/parallel.hpp"

namespace mgt {

namespace {

void check_eta(double eta) {
  if (!std::isfinite(eta) || eta < 0.0) throw InvalidArgument("eta must be a finite value >= 0");
}

void check_mu(double mu) {
  if (!std::isfinite(mu) || mu <= 0.0) throw InvalidArgument("mu must be a finite value > 0");
}

std::size_t block_dim(BlockKind kind) { return kind == BlockKind::Lambda2x2 ? 2 : 3; }

}  // namespace

std::string to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::NaturalA:
      return "NaturalA";
    case BlockKind::ReducedB:
      return "ReducedB";
    case BlockKind::Lambda2x2:
      return "Lambda2x2";
  }
  return "?";
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::IllPosed:
      return "IllPosed";
    case Regime::Boundary:
      return "Boundary";
    case Regime::Parabolic:
      return "Parabolic";
  }
  return "?";
}

SpectralMultipliers multipliers(double eta) {
  check_eta(eta);
  const Complex i(0.0, 1.0);
  const Complex root_z = std::sqrt(Complex(3.0 + 2.0 * eta - eta * eta, 0.0));
  const Complex root_c = std::sqrt(Complex(eta * eta - 2.0 * eta - 3.0, 0.0));
  SpectralMultipliers m;
  m.z = 0.5 * ((eta - 1.0) - i * root_z);
  m.z_bar = 0.5 * ((eta - 1.0) + i * root_z);
  m.c = 0.5 * ((eta - 1.0) + root_c);
  m.d = 0.5 * ((eta - 1.0) - root_c);
  return m;
}

CMatrix weighted_unit_block(BlockKind kind, double eta) {
  check_eta(eta);
  CMatrix m;
  switch (kind) {
    case BlockKind::NaturalA:
      m = CMatrix::Zero(3, 3);
      m(0, 1) = -1.0;
      m(1, 2) = -1.0;
      m(2, 0) = 1.0;
      m(2, 1) = eta;
      m(2, 2) = eta;
      break;
    case BlockKind::ReducedB:
      m = CMatrix::Zero(3, 3);
      m(0, 0) = 1.0;
      m(0, 1) = -1.0;
      m(1, 2) = -1.0;
      m(2, 1) = 1.0;
      m(2, 2) = eta - 1.0;
      break;
    case BlockKind::Lambda2x2:
      m = CMatrix::Zero(2, 2);
      m(0, 1) = -1.0;
      m(1, 0) = 1.0;
      m(1, 1) = eta - 1.0;
      break;
  }
  return m;
}

Eigen::VectorXd norm_weights(BlockKind kind, double mu) {
  check_mu(mu);
  const double a = cube_root(mu);
  if (kind == BlockKind::Lambda2x2) return Eigen::Vector2d(a, 1.0);
  return Eigen::Vector3d(a * a, a, 1.0);
}

ModeBlock mode_block(BlockKind kind, double eta, double mu) {
  check_eta(eta);
  check_mu(mu);
  const double a = cube_root(mu);
  ModeBlock b{CMatrix(), mu, a, eta, kind};
  switch (kind) {
    case BlockKind::NaturalA:
      b.matrix = CMatrix::Zero(3, 3);
      b.matrix(0, 1) = -1.0;
      b.matrix(1, 2) = -1.0;
      b.matrix(2, 0) = mu;
      b.matrix(2, 1) = eta * a * a;
      b.matrix(2, 2) = eta * a;
      break;
    case BlockKind::ReducedB:
      b.matrix = CMatrix::Zero(3, 3);
      b.matrix(0, 0) = a;
      b.matrix(0, 1) = -1.0;
      b.matrix(1, 2) = -1.0;
      b.matrix(2, 1) = a * a;
      b.matrix(2, 2) = (eta - 1.0) * a;
      break;
    case BlockKind::Lambda2x2:
      b.matrix = CMatrix::Zero(2, 2);
      b.matrix(0, 1) = -1.0;
      b.matrix(1, 0) = a * a;
      b.matrix(1, 1) = (eta - 1.0) * a;
      break;
  }
  return b;
}

std::vector<Complex> closed_form_spectrum(BlockKind kind, double eta, const EigenSequence& eigs) {
  const SpectralMultipliers m = multipliers(eta);
  std::vector<Complex> out;
  out.reserve(eigs.size() * block_dim(kind));
  for (std::size_t n = 0; n < eigs.size(); ++n) {
    const double lambda = -eigs.cube_root(n);
    switch (kind) {
      case BlockKind::NaturalA:
        out.push_back(lambda);
        out.push_back(m.z * lambda);
        out.push_back(m.z_bar * lambda);
        break;
      case BlockKind::ReducedB:
        out.push_back(lambda);
        out.push_back(m.c * lambda);
        out.push_back(m.d * lambda);
        break;
      case BlockKind::Lambda2x2:
        out.push_back(m.c * lambda);
        out.push_back(m.d * lambda);
        break;
    }
  }
  return out;
}

ModeBlock closed_form_inverse(BlockKind kind, double eta, double mu) {
  check_eta(eta);
  check_mu(mu);
  const double a = cube_root(mu);
  const double a1 = 1.0 / a, a2 = a1 * a1, a3 = 1.0 / mu;
  ModeBlock inv{CMatrix(), mu, a, eta, kind};
  switch (kind) {
    case BlockKind::NaturalA:
      inv.matrix = CMatrix::Zero(3, 3);
      inv.matrix(0, 0) = eta * a1;
      inv.matrix(0, 1) = eta * a2;
      inv.matrix(0, 2) = a3;
      inv.matrix(1, 0) = -1.0;
      inv.matrix(2, 1) = -1.0;
      break;
    case BlockKind::ReducedB:
      inv.matrix = CMatrix::Zero(3, 3);
      inv.matrix(0, 0) = a1;
      inv.matrix(0, 1) = (eta - 1.0) * a2;
      inv.matrix(0, 2) = a3;
      inv.matrix(1, 1) = (eta - 1.0) * a1;
      inv.matrix(1, 2) = a2;
      inv.matrix(2, 1) = -1.0;
      break;
    case BlockKind::Lambda2x2:
      inv.matrix = CMatrix::Zero(2, 2);
      inv.matrix(0, 0) = (eta - 1.0) * a1;
      inv.matrix(0, 1) = a2;
      inv.matrix(1, 0) = -1.0;
      break;
  }
  return inv;
}

CMatrix reduced_inverse_alternative(double eta, double mu) {
  check_eta(eta);
  check_mu(mu);
  const double a1 = 1.0 / cube_root(mu), a2 = a1 * a1;
  CMatrix m = CMatrix::Zero(3, 3);
  m(0, 0) = eta * a1;
  m(0, 1) = (1.0 - eta) * a2;
  m(0, 2) = 1.0 / mu;
  m(1, 1) = (1.0 - eta) * a1;
  m(1, 2) = a2;
  m(2, 1) = -1.0;
  return m;
}

CMatrix resolvent_reduced(Complex lambda, double eta, double mu) {
  check_eta(eta);
  check_mu(mu);
  const double a = cube_root(mu);
  const SpectralMultipliers m = multipliers(eta);
  for (const Complex s : {Complex(a), m.c * a, m.d * a}) {
    if (std::abs(lambda - s) <= 1e-12 * a) {
      throw NearSingular("resolvent requested at a spectral point of the ReducedB block", s);
    }
  }
  // (lambda - c a)(lambda - d a) = lambda^2 - (eta-1) a lambda + a^2
  const Complex la = lambda - a;
  const Complex lb = lambda - (eta - 1.0) * a;
  const Complex quad = lambda * lambda - (eta - 1.0) * a * lambda + a * a;
  const Complex inv_d = 1.0 / (la * quad);

  CMatrix r = CMatrix::Zero(3, 3);
  r(0, 0) = quad;
  r(0, 1) = -lb;
  r(0, 2) = 1.0;
  r(1, 1) = la * lb;
  r(1, 2) = -la;
  r(2, 1) = la * a * a;
  r(2, 2) = lambda * la;
  return r * inv_d;
}

SectorScan sector_scan(double eta, const EigenSequence& eigs, std::span<const double> angles,
                       std::span<const double> radii) {
  check_eta(eta);
  const std::size_t n_modes = eigs.size();
  const std::size_t n_samples = angles.size() * radii.size();

  // per_mode[n * n_samples + s]
  std::vector<double> per_mode(n_modes * n_samples, 0.0);
  parallel_for(
      n_modes,
      [&](std::size_t n) {
        const double mu = eigs[n];
        const Eigen::VectorXd w = norm_weights(BlockKind::ReducedB, mu);
        for (std::size_t ia = 0; ia < angles.size(); ++ia) {
          for (std::size_t ir = 0; ir < radii.size(); ++ir) {
            const Complex lambda = std::polar(radii[ir], angles[ia]);
            CMatrix r = resolvent_reduced(lambda, eta, mu);
            CMatrix weighted = w.asDiagonal() * r * w.cwiseInverse().asDiagonal();
            per_mode[n * n_samples + ia * radii.size() + ir] = radii[ir] * opnorm(weighted);
          }
        }
      },
      8);

  SectorScan scan;
  scan.samples.reserve(n_samples);
  for (std::size_t ia = 0; ia < angles.size(); ++ia) {
    for (std::size_t ir = 0; ir < radii.size(); ++ir) {
      const std::size_t s = ia * radii.size() + ir;
      double local = 0.0;
      for (std::size_t n = 0; n < n_modes; ++n) local = std::max(local, per_mode[n * n_samples + s]);
      scan.samples.push_back({angles[ia], radii[ir], local});
      scan.m_estimate = std::max(scan.m_estimate, local);
    }
  }
  return scan;
}

GrowthAbscissa growth_abscissa(double eta, const EigenSequence& eigs) {
  const std::vector<Complex> spectrum = closed_form_spectrum(BlockKind::NaturalA, eta, eigs);
  const std::size_t n_modes = eigs.size();
  std::vector<double> mode_max(n_modes, -std::numeric_limits<double>::infinity());
  for (std::size_t n = 0; n < n_modes; ++n) {
    for (std::size_t k = 0; k < 3; ++k) mode_max[n] = std::max(mode_max[n], spectrum[3 * n + k].real());
  }

  GrowthAbscissa g;
  g.sup_re = *std::max_element(mode_max.begin(), mode_max.end());
  if (n_modes >= 2) {
    const std::size_t window = std::max<std::size_t>(2, (n_modes + 3) / 4);
    g.unbounded = true;
    for (std::size_t n = n_modes - window + 1; n < n_modes; ++n) {
      if (!(mode_max[n] > mode_max[n - 1])) {
        g.unbounded = false;
        break;
      }
    }
  }
  return g;
}

double dissipativity_witness(double mu, Complex u_coeff) {
  check_mu(mu);
  const ModeBlock b = mode_block(BlockKind::ReducedB, 1.0, mu);
  Eigen::Vector3cd z(u_coeff, 2.0 * b.a * u_coeff, 0.0);
  Eigen::Vector3cd minus_bz = -(b.matrix * z);
  const Eigen::VectorXd w = norm_weights(BlockKind::ReducedB, mu);
  Complex inner = 0.0;
  for (int k = 0; k < 3; ++k) inner += w[k] * w[k] * minus_bz[k] * std::conj(z[k]);
  return inner.real();
}

RegimeReport classify(double eta, int n_modes) {
  check_eta(eta);
  RegimeReport report;
  report.eta = eta;
  if (eta < 1.0) {
    report.regime = Regime::IllPosed;
  } else if (eta == 1.0) {
    report.regime = Regime::Boundary;
  } else {
    report.regime = Regime::Parabolic;
  }
  report.multipliers = multipliers(eta);
  report.growth = growth_abscissa(eta, dirichlet_eigs(n_modes, std::numbers::pi));
  return report;
}

LambdaSpectrumPredictions lambda_spectrum_predictions(double eta, double mu) {
  check_eta(eta);
  check_mu(mu);
  const double a = cube_root(mu);
  const SpectralMultipliers m = multipliers(eta);
  const Complex root = std::sqrt(Complex(eta * eta - 1.0, 0.0));
  return {{m.c * a, m.d * a}, {(eta + root) * a, (eta - root) * a}};
}

}  // namespace mgt
