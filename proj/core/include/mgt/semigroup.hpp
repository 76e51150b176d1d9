#pragma once

// Per-mode propagators exp(-t M) of the block operators, rate measurements and the
// weighted smoothing estimate.

#include <string>
#include <vector>

#include "mgt/blocks.hpp"
#include "mgt/linalg.hpp"
#include "mgt/spectral.hpp"

namespace mgt {

enum class ExpMethod { EigenDecomposition, ScalingSquaring };

std::string to_string(ExpMethod method);

struct Propagator {
  CMatrix matrix;  ///< exp(-t M) in the unweighted mode coordinates
  double t = 0.0;
  double eta = 0.0;
  double mu = 0.0;
  BlockKind kind = BlockKind::ReducedB;
  ExpMethod method = ExpMethod::EigenDecomposition;
};

/// exp(-t a C) where C is the weighted unit block; this is W exp(-t M) W^{-1} and its
/// spectral norm is the operator norm of the propagator on Z (or Y for Lambda2x2).
/// Eigendecomposition with the closed-form eigenvalues when their minimal pairwise gap
/// exceeds 1e-8 times the spectral radius, scaling and squaring otherwise.
/// Throws InvalidArgument for t < 0.
CMatrix weighted_propagator(BlockKind kind, double eta, double mu, double t,
                            ExpMethod* method_used = nullptr);

Propagator mode_propagator(BlockKind kind, double eta, double mu, double t);

/// Operator norm of exp(-t M) in the weighted norm.
double propagator_norm(BlockKind kind, double eta, double mu, double t);

/// Block kind matching the coordinates of a state: Natural -> NaturalA, Reduced -> ReducedB.
BlockKind kind_for(Coords coords);

/// Applies the mode propagators to every mode of the state.
SpectralState propagate_linear(const SpectralState& state, double eta, double t,
                               const EigenSequence& eigs);

/// Negated least-squares slope of log ||exp(-t M)|| over `samples` equispaced points of
/// [t0, t1]. Positive for decay, negative for growth.
double decay_rate(double eta, double mu, double t0, double t1,
                  BlockKind kind = BlockKind::ReducedB, int samples = 64);

struct RateWindow {
  double t0 = 0.0;
  double t1 = 0.0;
};

/// [2/a, 82/a] with a = mu^{1/3}: starts past the non-normal transient, long enough for the
/// subdominant modes to be negligible.
RateWindow default_rate_window(double mu);

/// Largest real part over the per-mode spectrum of -M.
double spectral_abscissa(BlockKind kind, double eta, double mu);

struct RateRow {
  std::size_t mode_index = 0;  ///< 1-based
  double mu = 0.0;
  double re_rate_predicted = 0.0;  ///< spectral_abscissa
  double re_rate_measured = 0.0;   ///< -decay_rate over default_rate_window
  double abs_error = 0.0;
};

std::vector<RateRow> rate_scan(BlockKind kind, double eta, const EigenSequence& eigs);

/// CSV with header mode_index,mu,re_rate_predicted,re_rate_measured,abs_error.
std::string rate_scan_csv(const std::vector<RateRow>& rows);

/// propagator_norm for every mode of the sequence at a fixed time.
std::vector<double> propagator_norms(BlockKind kind, double eta, double t,
                                     const EigenSequence& eigs);

/// sup_n mu_n^{alpha/3} ||exp(-t B_n)||_Z. Throws RegimeError for eta <= 1 and
/// InvalidArgument for t <= 0 or alpha outside [0, 1].
double smoothing_constant(double eta, double alpha, double t, const EigenSequence& eigs);

}  // namespace mgt
