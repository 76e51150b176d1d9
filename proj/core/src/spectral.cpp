#include "mgt/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include <fftw3.h>

#include "mgt/errors.hpp"

namespace mgt {

double cube_root(double mu) {
  long double r = std::cbrt(static_cast<long double>(mu));
  if (r != 0.0L && std::isfinite(r)) r -= (r * r * r - mu) / (3.0L * r * r);
  return static_cast<double>(r);
}

namespace {

void check_length(const CVector& coeffs, const EigenSequence& eigs, const char* what) {
  if (static_cast<std::size_t>(coeffs.size()) != eigs.size()) {
    throw ShapeError(std::string(what) + ": vector has " + std::to_string(coeffs.size()) +
                     " entries, eigen sequence has " + std::to_string(eigs.size()));
  }
}

void require_dirichlet(const EigenSequence& eigs, const char* what) {
  if (!eigs.is_dirichlet()) {
    throw UnsupportedBasis(std::string(what) +
                           ": grid transform needs the Dirichlet sine basis");
  }
}

// FFTW's planner is not reentrant; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// In-place DST-I: y_k = 2 sum_j x_j sin(pi (j+1)(k+1) / (n+1)).
void dst1(std::vector<double>& data) {
  const int n = static_cast<int>(data.size());
  std::vector<double> out(data.size());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_r2r_1d(n, data.data(), out.data(), FFTW_RODFT00, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  data.swap(out);
}

}  // namespace

EigenSequence::EigenSequence(std::vector<double> values, BasisKind source,
                             std::optional<double> length)
    : values_(std::move(values)), source_(source), length_(length) {
  if (values_.empty()) throw InvalidArgument("eigen sequence must be nonempty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] <= 0.0) {
      throw InvalidArgument("eigenvalue " + std::to_string(i + 1) + " is not positive");
    }
    if (i > 0 && !(values_[i] > values_[i - 1])) {
      throw InvalidArgument("eigenvalues must be strictly increasing (index " +
                            std::to_string(i + 1) + ")");
    }
  }
  cube_roots_.reserve(values_.size());
  for (double mu : values_) cube_roots_.push_back(mgt::cube_root(mu));
}

EigenSequence EigenSequence::dirichlet(int n_modes, double length) {
  if (n_modes < 1) throw InvalidArgument("n_modes must be >= 1");
  if (!(length > 0.0) || !std::isfinite(length)) throw InvalidArgument("length must be > 0");
  std::vector<double> values(static_cast<std::size_t>(n_modes));
  for (int n = 1; n <= n_modes; ++n) {
    double k = n * std::numbers::pi / length;
    values[static_cast<std::size_t>(n - 1)] = k * k;
  }
  return EigenSequence(std::move(values), BasisKind::DirichletLaplacian1D, length);
}

EigenSequence EigenSequence::user_supplied(std::vector<double> values) {
  return EigenSequence(std::move(values), BasisKind::UserSupplied, std::nullopt);
}

SpectralState SpectralState::zeros(std::size_t n_modes, Coords coords) {
  const auto n = static_cast<Eigen::Index>(n_modes);
  return SpectralState{CVector::Zero(n), CVector::Zero(n), CVector::Zero(n), coords};
}

void SpectralState::check_shape(std::size_t n_modes) const {
  const auto n = static_cast<Eigen::Index>(n_modes);
  if (u.size() != n || v.size() != n || w.size() != n) {
    throw ShapeError("spectral state components have lengths " + std::to_string(u.size()) +
                     "/" + std::to_string(v.size()) + "/" + std::to_string(w.size()) +
                     ", expected " + std::to_string(n_modes));
  }
}

CVector frac_apply(double alpha, const CVector& coeffs, const EigenSequence& eigs) {
  check_length(coeffs, eigs, "frac_apply");
  if (!std::isfinite(alpha)) throw InvalidArgument("frac_apply: exponent must be finite");
  CVector out(coeffs.size());
  for (Eigen::Index n = 0; n < coeffs.size(); ++n) {
    out[n] = coeffs[n] * std::pow(eigs[static_cast<std::size_t>(n)], alpha);
  }
  return out;
}

double scale_norm(double alpha, const CVector& coeffs, const EigenSequence& eigs) {
  check_length(coeffs, eigs, "scale_norm");
  if (!std::isfinite(alpha)) throw InvalidArgument("scale_norm: exponent must be finite");
  double sum = 0.0;
  for (Eigen::Index n = 0; n < coeffs.size(); ++n) {
    double weighted = std::abs(coeffs[n] * std::pow(eigs[static_cast<std::size_t>(n)], alpha));
    sum += weighted * weighted;
  }
  return std::sqrt(sum);
}

double z_norm(const SpectralState& state, const EigenSequence& eigs) {
  state.check_shape(eigs.size());
  double nu = scale_norm(2.0 / 3.0, state.u, eigs);
  double nv = scale_norm(1.0 / 3.0, state.v, eigs);
  double nw = scale_norm(0.0, state.w, eigs);
  return std::sqrt(nu * nu + nv * nv + nw * nw);
}

CVector synthesize_complex(const CVector& coeffs, const EigenSequence& eigs) {
  require_dirichlet(eigs, "synthesize");
  check_length(coeffs, eigs, "synthesize");
  const std::size_t n = eigs.size();
  const double scale = 0.5 * std::sqrt(2.0 / *eigs.length());

  std::vector<double> re(n), im(n);
  for (std::size_t k = 0; k < n; ++k) {
    re[k] = coeffs[static_cast<Eigen::Index>(k)].real();
    im[k] = coeffs[static_cast<Eigen::Index>(k)].imag();
  }
  dst1(re);
  dst1(im);

  CVector out(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) out[static_cast<Eigen::Index>(j)] = scale * Complex(re[j], im[j]);
  return out;
}

GridField synthesize(const CVector& coeffs, const EigenSequence& eigs) {
  CVector field = synthesize_complex(coeffs, eigs);
  double max_abs = 0.0, max_imag = 0.0;
  for (const Complex& s : field) {
    max_abs = std::max(max_abs, std::abs(s));
    max_imag = std::max(max_imag, std::abs(s.imag()));
  }
  if (max_imag > 1e-10 * std::max(1.0, max_abs)) {
    throw DataError("synthesized field has imaginary part " + std::to_string(max_imag) +
                    "; physical fields must be real");
  }
  GridField out;
  out.length = *eigs.length();
  out.samples.resize(eigs.size());
  for (std::size_t j = 0; j < eigs.size(); ++j) out.samples[j] = field[static_cast<Eigen::Index>(j)].real();
  return out;
}

CVector analyze(const GridField& field, const EigenSequence& eigs) {
  require_dirichlet(eigs, "analyze");
  if (field.samples.size() != eigs.size()) {
    throw ShapeError("analyze: grid has " + std::to_string(field.samples.size()) +
                     " samples, eigen sequence has " + std::to_string(eigs.size()));
  }
  const double length = *eigs.length();
  const double step = length / static_cast<double>(eigs.size() + 1);
  const double scale = 0.5 * std::sqrt(2.0 / length) * step;

  std::vector<double> data = field.samples;
  dst1(data);
  CVector out(static_cast<Eigen::Index>(data.size()));
  for (std::size_t k = 0; k < data.size(); ++k) out[static_cast<Eigen::Index>(k)] = scale * data[k];
  return out;
}

}  // namespace mgt
