#pragma once

// Per-mode matrices of the first-order reformulations of
//   u_ttt + A u + eta A^{1/3} u_tt + eta A^{2/3} u_t = f(u)
// and their closed-form spectra, inverses and resolvents. With a = mu^{1/3}:
//
//   NaturalA  (v = u_t, w = v_t)               [[0, -1, 0], [0, 0, -1], [a^3, eta a^2, eta a]]
//   ReducedB  (v = u_t + a u, w = v_t)         [[a, -1, 0], [0, 0, -1], [0, a^2, (eta-1) a]]
//   Lambda2x2 (damped second-order (v, w))     [[0, -1], [a^2, (eta-1) a]]
//
// The state norms weight the components by diag(a^2, a, 1) (Z) and diag(a, 1) (Y).
// Conjugated by that weight every block becomes a times a fixed eta-dependent matrix.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mgt/linalg.hpp"
#include "mgt/spectral.hpp"

namespace mgt {

enum class BlockKind { NaturalA, ReducedB, Lambda2x2 };

std::string to_string(BlockKind kind);

/// Roots of r^2 - (eta - 1) r + 1 = 0 in the two notations used for the two operators.
///
/// z = ((eta-1) - i sqrt(3 + 2 eta - eta^2)) / 2 and z_bar = ((eta-1) + i sqrt(...)) / 2,
/// with the complex principal square root. For eta < 3 these are complex conjugates; for
/// eta > 3 the radicand is negative and both are real (z = c, z_bar = d).
/// c, d = ((eta-1) +- sqrt(eta^2 - 2 eta - 3)) / 2, again with the complex square root.
struct SpectralMultipliers {
  Complex z;
  Complex z_bar;
  Complex c;
  Complex d;
};

SpectralMultipliers multipliers(double eta);

struct ModeBlock {
  CMatrix matrix;
  double mu = 0.0;
  double a = 0.0;  ///< mu^{1/3}
  double eta = 0.0;
  BlockKind kind = BlockKind::ReducedB;
};

/// Throws InvalidArgument for mu <= 0 or eta < 0.
ModeBlock mode_block(BlockKind kind, double eta, double mu);

/// Diagonal of the norm weight: (mu^{2/3}, mu^{1/3}, 1) for 3x3 kinds, (mu^{1/3}, 1) for Lambda2x2.
Eigen::VectorXd norm_weights(BlockKind kind, double mu);

/// W M W^{-1} / a, i.e. the mode-independent shape of the weighted block.
CMatrix weighted_unit_block(BlockKind kind, double eta);

/// Spectrum of the negative operator, mode by mode: {l, m1 l, m2 l} with l = -mu_n^{1/3},
/// (m1, m2) = (z, z_bar) for NaturalA and (c, d) for ReducedB. Lambda2x2 yields {c l, d l}.
std::vector<Complex> closed_form_spectrum(BlockKind kind, double eta, const EigenSequence& eigs);

/// Per-mode inverse from the closed-form entries.
ModeBlock closed_form_inverse(BlockKind kind, double eta, double mu);

/// A second ReducedB inverse candidate with (eta A^{-1/3}, (1-eta) ...) entries. It is not
/// an inverse unless eta == 1; kept only so the discrepancy can be demonstrated.
CMatrix reduced_inverse_alternative(double eta, double mu);

/// (lambda I - B)^{-1} for the ReducedB block, assembled from
/// D(lambda) = (lambda - a)(lambda - c a)(lambda - d a). Throws NearSingular (carrying the
/// spectral point) when lambda lies within 1e-12 a of a, c a or d a.
CMatrix resolvent_reduced(Complex lambda, double eta, double mu);

struct SectorSample {
  double arg = 0.0;
  double radius = 0.0;
  double m_local = 0.0;  ///< sup over modes of |lambda| ||W R(lambda) W^{-1}||
};

struct SectorScan {
  double m_estimate = 0.0;
  std::vector<SectorSample> samples;  ///< angle-major, radius-minor order
};

/// Sup over lambda = r e^{i arg} and all modes of |lambda| times the Z-weighted operator norm
/// of the ReducedB resolvent. Propagates NearSingular when a ray hits the spectrum.
SectorScan sector_scan(double eta, const EigenSequence& eigs, std::span<const double> angles,
                       std::span<const double> radii);

struct GrowthAbscissa {
  double sup_re = 0.0;
  /// Per-mode maximal real part strictly increasing over the last max(2, ceil(N/4)) modes.
  bool unbounded = false;
};

/// Supremum of Re over the NaturalA closed-form spectrum of the truncated sequence.
GrowthAbscissa growth_abscissa(double eta, const EigenSequence& eigs);

/// Re <-B_(1) z, z>_Z for z = (u, 2 mu^{1/3} u, 0) on a single mode; equals mu^{5/3} |u|^2.
double dissipativity_witness(double mu, Complex u_coeff);

enum class Regime { IllPosed, Boundary, Parabolic };

std::string to_string(Regime regime);

struct RegimeReport {
  double eta = 0.0;
  Regime regime = Regime::Parabolic;
  SpectralMultipliers multipliers;
  GrowthAbscissa growth;
};

/// eta < 1 ill-posed, eta == 1 (exact comparison) boundary, eta > 1 parabolic. The growth
/// abscissa is evaluated on dirichlet_eigs(n_modes, pi).
RegimeReport classify(double eta, int n_modes = 64);

/// Two predictions for the eigenvalues of the Lambda block on one mode: the roots of its
/// characteristic polynomial (c a, d a) and the closed form (eta +- sqrt(eta^2 - 1)) a
/// stated for that operator. They differ; only the first matches the matrix.
struct LambdaSpectrumPredictions {
  std::pair<Complex, Complex> characteristic;
  std::pair<Complex, Complex> stated;
};

LambdaSpectrumPredictions lambda_spectrum_predictions(double eta, double mu);

}  // namespace mgt
