#include "mgt/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "mgt/errors.hpp"
#include "mgt/parallel.hpp"

namespace mgt {

namespace {

// Eigenvalues of -M on one mode, from the closed forms.
std::vector<Complex> negative_block_spectrum(BlockKind kind, double eta, double a) {
  const SpectralMultipliers m = multipliers(eta);
  switch (kind) {
    case BlockKind::NaturalA:
      return {-a, -m.z * a, -m.z_bar * a};
    case BlockKind::ReducedB:
      return {-a, -m.c * a, -m.d * a};
    case BlockKind::Lambda2x2:
      return {-m.c * a, -m.d * a};
  }
  return {};
}

double min_gap(const std::vector<Complex>& ev) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ev.size(); ++i) {
    for (std::size_t j = i + 1; j < ev.size(); ++j) gap = std::min(gap, std::abs(ev[i] - ev[j]));
  }
  return gap;
}

}  // namespace

std::string to_string(ExpMethod method) {
  return method == ExpMethod::EigenDecomposition ? "EigenDecomposition" : "ScalingSquaring";
}

CMatrix weighted_propagator(BlockKind kind, double eta, double mu, double t,
                            ExpMethod* method_used) {
  if (!std::isfinite(t) || t < 0.0) throw InvalidArgument("propagator time must be >= 0");
  if (!std::isfinite(mu) || mu <= 0.0) throw InvalidArgument("mu must be a finite value > 0");
  const double a = cube_root(mu);
  const CMatrix unit = weighted_unit_block(kind, eta);
  const auto n = unit.rows();
  if (t == 0.0) {
    if (method_used) *method_used = ExpMethod::EigenDecomposition;
    return CMatrix::Identity(n, n);
  }

  const CMatrix generator = -t * a * unit;
  std::vector<Complex> ev = negative_block_spectrum(kind, eta, a);
  double radius = 0.0;
  for (Complex& l : ev) {
    l *= t;
    radius = std::max(radius, std::abs(l));
  }
  if (min_gap(ev) > 1e-8 * radius) {
    if (method_used) *method_used = ExpMethod::EigenDecomposition;
    return expm_eigen(generator, ev);
  }
  if (method_used) *method_used = ExpMethod::ScalingSquaring;
  return expm_scaling_squaring(generator);
}

Propagator mode_propagator(BlockKind kind, double eta, double mu, double t) {
  Propagator p;
  p.t = t;
  p.eta = eta;
  p.mu = mu;
  p.kind = kind;
  const CMatrix weighted = weighted_propagator(kind, eta, mu, t, &p.method);
  const Eigen::VectorXd w = norm_weights(kind, mu);
  p.matrix = w.cwiseInverse().asDiagonal() * weighted * w.asDiagonal();
  return p;
}

double propagator_norm(BlockKind kind, double eta, double mu, double t) {
  return opnorm(weighted_propagator(kind, eta, mu, t));
}

BlockKind kind_for(Coords coords) {
  return coords == Coords::Natural ? BlockKind::NaturalA : BlockKind::ReducedB;
}

SpectralState propagate_linear(const SpectralState& state, double eta, double t,
                               const EigenSequence& eigs) {
  state.check_shape(eigs.size());
  const BlockKind kind = kind_for(state.coords);
  SpectralState out = SpectralState::zeros(eigs.size(), state.coords);
  parallel_for(eigs.size(), [&](std::size_t n) {
    const auto i = static_cast<Eigen::Index>(n);
    const CMatrix p = mode_propagator(kind, eta, eigs[n], t).matrix;
    const Eigen::Vector3cd y(state.u[i], state.v[i], state.w[i]);
    const Eigen::Vector3cd r = p * y;
    out.u[i] = r[0];
    out.v[i] = r[1];
    out.w[i] = r[2];
  });
  return out;
}

double decay_rate(double eta, double mu, double t0, double t1, BlockKind kind, int samples) {
  if (!(t0 > 0.0) || !(t1 > t0) || !std::isfinite(t1)) {
    throw InvalidArgument("rate window must satisfy 0 < t0 < t1");
  }
  if (samples < 2) throw InvalidArgument("rate window needs at least 2 samples");
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double t = t0 + (t1 - t0) * k / (samples - 1);
    const double y = std::log(propagator_norm(kind, eta, mu, t));
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  const double s = samples;
  const double slope = (s * sty - st * sy) / (s * stt - st * st);
  return -slope;
}

RateWindow default_rate_window(double mu) {
  if (!std::isfinite(mu) || mu <= 0.0) throw InvalidArgument("mu must be a finite value > 0");
  const double a = cube_root(mu);
  return {2.0 / a, 82.0 / a};
}

double spectral_abscissa(BlockKind kind, double eta, double mu) {
  if (!std::isfinite(mu) || mu <= 0.0) throw InvalidArgument("mu must be a finite value > 0");
  double sup = -std::numeric_limits<double>::infinity();
  for (const Complex& l : negative_block_spectrum(kind, eta, cube_root(mu))) sup = std::max(sup, l.real());
  return sup;
}

std::vector<RateRow> rate_scan(BlockKind kind, double eta, const EigenSequence& eigs) {
  std::vector<RateRow> rows(eigs.size());
  parallel_for(
      eigs.size(),
      [&](std::size_t n) {
        const double mu = eigs[n];
        const RateWindow win = default_rate_window(mu);
        RateRow& r = rows[n];
        r.mode_index = n + 1;
        r.mu = mu;
        r.re_rate_predicted = spectral_abscissa(kind, eta, mu);
        r.re_rate_measured = -decay_rate(eta, mu, win.t0, win.t1, kind);
        r.abs_error = std::abs(r.re_rate_measured - r.re_rate_predicted);
      },
      4);
  return rows;
}

std::string rate_scan_csv(const std::vector<RateRow>& rows) {
  std::string out = "mode_index,mu,re_rate_predicted,re_rate_measured,abs_error\n";
  char buf[160];
  for (const RateRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g\n", r.mode_index, r.mu,
                  r.re_rate_predicted, r.re_rate_measured, r.abs_error);
    out += buf;
  }
  return out;
}

std::vector<double> propagator_norms(BlockKind kind, double eta, double t,
                                     const EigenSequence& eigs) {
  std::vector<double> out(eigs.size());
  parallel_for(eigs.size(), [&](std::size_t n) { out[n] = propagator_norm(kind, eta, eigs[n], t); });
  return out;
}

double smoothing_constant(double eta, double alpha, double t, const EigenSequence& eigs) {
  if (!(eta > 1.0)) throw RegimeError("smoothing estimate needs eta > 1 (parabolic regime)");
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("smoothing time must be > 0");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in [0, 1]");
  std::vector<double> weighted(eigs.size());
  parallel_for(eigs.size(), [&](std::size_t n) {
    weighted[n] = std::pow(eigs[n], alpha / 3.0) * propagator_norm(BlockKind::ReducedB, eta, eigs[n], t);
  });
  double sup = 0.0;
  for (double v : weighted) sup = std::max(sup, v);
  return sup;
}

}  // namespace mgt
