#pragma once

// Exponential time differencing for  y' + M y = (0, 0, f(u) + s(t)),  mode by mode, and the
// two-stage solver that evolves the damped (v, w) system and recovers u from u' + a u = v.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mgt/nonlinear.hpp"
#include "mgt/spectral.hpp"

namespace mgt {

enum class Scheme { ETD1, ETD2 };

std::string to_string(Scheme scheme);

struct SolverConfig {
  double dt = 1e-2;
  double t_final = 1.0;
  Scheme scheme = Scheme::ETD2;
  double blowup_threshold = 1e8;  ///< in the Z norm
  int record_every = 1;

  /// Throws InvalidArgument when dt, t_final, threshold or record_every are out of range.
  void validate() const;
  /// ceil(t_final / dt); the step actually used is t_final / steps().
  long steps() const;
};

enum class Status { Completed, BlowUp, NearSingular };

std::string to_string(Status status);

struct StateNorms {
  double z = 0.0;
  double x23_u = 0.0;
  double x13_v = 0.0;
  double x0_w = 0.0;
};

StateNorms state_norms(const SpectralState& state, const EigenSequence& eigs);

struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralState> states;
  std::vector<StateNorms> norms;
  Status status = Status::Completed;
  std::optional<double> t_star;  ///< set on BlowUp
};

/// Additional modal forcing added to f(u) in the third component.
using Source = std::function<CVector(double t)>;

/// v = u_t + a u, w = v_t from u_t = v_nat, u_tt = w_nat.
SpectralState natural_to_reduced(const SpectralState& natural, const EigenSequence& eigs);
SpectralState reduced_to_natural(const SpectralState& reduced, const EigenSequence& eigs);

/// ETD1: y+ = E y + h phi1(-hM) F(y, t).
/// ETD2: predictor y* from ETD1, then y+ = y* + h phi2(-hM) (F(y*, t + h) - F(y, t)).
/// Works in either coordinate system (NaturalA or ReducedB block). Records times 0,
/// every record_every steps, and the final step. Stops with BlowUp once the Z norm exceeds
/// the threshold; throws NumericalFailure on NaN/Inf.
Trajectory etd_solve(const SpectralState& initial, double eta, const Nonlinearity& f,
                     const SolverConfig& cfg, const EigenSequence& eigs, const Source& source = {});

/// Natural initial data (u0, v0, w0). Evolves (v, w) of the reduced coordinates with the
/// 2x2 block and forcing f(u) by the same ETD scheme, and recovers u by integrating
/// u' + a u = v exactly against the cubic Hermite interpolant of v on each step. Returns
/// states in Reduced coordinates.
Trajectory reduction_solve(const CVector& u0, const CVector& v0, const CVector& w0, double eta,
                           const Nonlinearity& f, const SolverConfig& cfg,
                           const EigenSequence& eigs, const Source& source = {});

}  // namespace mgt
