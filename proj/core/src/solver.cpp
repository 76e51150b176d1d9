#include "mgt/solver.hpp"

#include <cmath>

#include "mgt/blocks.hpp"
#include "mgt/errors.hpp"
#include "mgt/linalg.hpp"
#include "mgt/parallel.hpp"
#include "mgt/semigroup.hpp"

namespace mgt {

namespace {

// Per-mode ETD weights for a forcing that only enters the last component.
struct ModeWeights {
  CMatrix e;           // exp(-h M)
  Eigen::VectorXcd p1;  // h phi1(-h M) e_last
  Eigen::VectorXcd p2;  // h phi2(-h M) e_last
};

ModeWeights mode_weights(BlockKind kind, double eta, double mu, double h) {
  const double a = cube_root(mu);
  const Eigen::VectorXd w = norm_weights(kind, mu);
  const Eigen::VectorXd w_inv = w.cwiseInverse();
  const CMatrix generator = -h * a * weighted_unit_block(kind, eta);
  const PhiFunctions phi = phi_functions(generator);
  const auto last = generator.cols() - 1;  // weight of the last component is 1

  ModeWeights mw;
  mw.e = w_inv.asDiagonal() * weighted_propagator(kind, eta, mu, h) * w.asDiagonal();
  mw.p1 = h * w_inv.asDiagonal() * phi.phi1.col(last);
  mw.p2 = h * w_inv.asDiagonal() * phi.phi2.col(last);
  return mw;
}

std::vector<ModeWeights> all_weights(BlockKind kind, double eta, double h, const EigenSequence& eigs) {
  std::vector<ModeWeights> out(eigs.size());
  parallel_for(eigs.size(), [&](std::size_t n) { out[n] = mode_weights(kind, eta, eigs[n], h); }, 8);
  return out;
}

class Forcing {
 public:
  Forcing(const Nonlinearity& f, const Source& source, const EigenSequence& eigs)
      : f_(f), source_(source), eigs_(eigs) {}

  bool active() const { return f_.form != NonlinearForm::Zero || static_cast<bool>(source_); }

  CVector operator()(const CVector& u, double t) const {
    CVector g = f_.form == NonlinearForm::Zero ? CVector::Zero(u.size()) : nemytskii(f_, u, eigs_);
    if (source_) {
      const CVector s = source_(t);
      if (s.size() != g.size()) throw ShapeError("source term length differs from mode count");
      g += s;
    }
    return g;
  }

 private:
  const Nonlinearity& f_;
  const Source& source_;
  const EigenSequence& eigs_;
};

bool finite(const SpectralState& s) {
  return s.u.allFinite() && s.v.allFinite() && s.w.allFinite();
}

class Recorder {
 public:
  Recorder(const SolverConfig& cfg, const EigenSequence& eigs) : cfg_(cfg), eigs_(eigs) {}

  // Returns false when integration must stop (blow-up).
  bool after_step(long step, long steps, double t, const SpectralState& y) {
    if (!finite(y)) {
      throw NumericalFailure("non-finite state at t = " + std::to_string(t));
    }
    const StateNorms norms = state_norms(y, eigs_);
    if (!std::isfinite(norms.z)) throw NumericalFailure("non-finite Z norm at t = " + std::to_string(t));
    if (norms.z > cfg_.blowup_threshold) {
      push(t, y, norms);
      traj_.status = Status::BlowUp;
      traj_.t_star = t;
      return false;
    }
    if (step % cfg_.record_every == 0 || step == steps) push(t, y, norms);
    return true;
  }

  void initial(const SpectralState& y) { push(0.0, y, state_norms(y, eigs_)); }

  Trajectory take() { return std::move(traj_); }

 private:
  void push(double t, const SpectralState& y, const StateNorms& norms) {
    traj_.times.push_back(t);
    traj_.states.push_back(y);
    traj_.norms.push_back(norms);
  }

  const SolverConfig& cfg_;
  const EigenSequence& eigs_;
  Trajectory traj_;
};

}  // namespace

std::string to_string(Scheme scheme) { return scheme == Scheme::ETD1 ? "ETD1" : "ETD2"; }

std::string to_string(Status status) {
  switch (status) {
    case Status::Completed:
      return "completed";
    case Status::BlowUp:
      return "blowup";
    case Status::NearSingular:
      return "near_singular";
  }
  return "?";
}

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be > 0");
  if (!(t_final > 0.0) || !std::isfinite(t_final)) throw InvalidArgument("t_final must be > 0");
  if (dt > t_final) throw InvalidArgument("dt must not exceed t_final");
  if (!(blowup_threshold > 0.0)) throw InvalidArgument("blowup_threshold must be > 0");
  if (record_every < 1) throw InvalidArgument("record_every must be >= 1");
}

long SolverConfig::steps() const {
  return static_cast<long>(std::ceil(t_final / dt - 1e-12));
}

StateNorms state_norms(const SpectralState& state, const EigenSequence& eigs) {
  state.check_shape(eigs.size());
  StateNorms n;
  n.x23_u = scale_norm(2.0 / 3.0, state.u, eigs);
  n.x13_v = scale_norm(1.0 / 3.0, state.v, eigs);
  n.x0_w = scale_norm(0.0, state.w, eigs);
  n.z = std::sqrt(n.x23_u * n.x23_u + n.x13_v * n.x13_v + n.x0_w * n.x0_w);
  return n;
}

SpectralState natural_to_reduced(const SpectralState& natural, const EigenSequence& eigs) {
  natural.check_shape(eigs.size());
  if (natural.coords != Coords::Natural) throw InvalidArgument("state is not in Natural coordinates");
  SpectralState out = natural;
  out.coords = Coords::Reduced;
  const CVector au = frac_apply(1.0 / 3.0, natural.u, eigs);
  const CVector av = frac_apply(1.0 / 3.0, natural.v, eigs);
  out.v = natural.v + au;
  out.w = natural.w + av;
  return out;
}

SpectralState reduced_to_natural(const SpectralState& reduced, const EigenSequence& eigs) {
  reduced.check_shape(eigs.size());
  if (reduced.coords != Coords::Reduced) throw InvalidArgument("state is not in Reduced coordinates");
  SpectralState out = reduced;
  out.coords = Coords::Natural;
  out.v = reduced.v - frac_apply(1.0 / 3.0, reduced.u, eigs);
  out.w = reduced.w - frac_apply(1.0 / 3.0, out.v, eigs);
  return out;
}

Trajectory etd_solve(const SpectralState& initial, double eta, const Nonlinearity& f,
                     const SolverConfig& cfg, const EigenSequence& eigs, const Source& source) {
  cfg.validate();
  initial.check_shape(eigs.size());
  const long steps = cfg.steps();
  const double h = cfg.t_final / static_cast<double>(steps);
  const std::vector<ModeWeights> weights = all_weights(kind_for(initial.coords), eta, h, eigs);
  const Forcing forcing(f, source, eigs);
  const std::size_t n_modes = eigs.size();

  // y_out = E y + p1 g (+ p2 dg)
  auto advance = [&](const SpectralState& y, const CVector* g, const CVector* dg, bool propagate,
                     SpectralState& out) {
    parallel_for(n_modes, [&](std::size_t n) {
      const auto i = static_cast<Eigen::Index>(n);
      const ModeWeights& mw = weights[n];
      Eigen::Vector3cd r(y.u[i], y.v[i], y.w[i]);
      if (propagate) r = mw.e * r;
      if (g) r += mw.p1 * (*g)[i];
      if (dg) r += mw.p2 * (*dg)[i];
      out.u[i] = r[0];
      out.v[i] = r[1];
      out.w[i] = r[2];
    });
  };

  Recorder rec(cfg, eigs);
  SpectralState y = initial;
  rec.initial(y);
  SpectralState ya = SpectralState::zeros(n_modes, initial.coords);

  for (long k = 0; k < steps; ++k) {
    const double tk = static_cast<double>(k) * h;
    const double t_next = static_cast<double>(k + 1) * h;
    if (!forcing.active()) {
      advance(y, nullptr, nullptr, true, ya);
      y.u.swap(ya.u);
      y.v.swap(ya.v);
      y.w.swap(ya.w);
    } else {
      const CVector gk = forcing(y.u, tk);
      advance(y, &gk, nullptr, true, ya);
      if (cfg.scheme == Scheme::ETD2) {
        const CVector dg = forcing(ya.u, t_next) - gk;
        advance(ya, nullptr, &dg, false, y);
      } else {
        y.u.swap(ya.u);
        y.v.swap(ya.v);
        y.w.swap(ya.w);
      }
    }
    if (!rec.after_step(k + 1, steps, t_next, y)) break;
  }
  return rec.take();
}

Trajectory reduction_solve(const CVector& u0, const CVector& v0, const CVector& w0, double eta,
                           const Nonlinearity& f, const SolverConfig& cfg,
                           const EigenSequence& eigs, const Source& source) {
  cfg.validate();
  SpectralState natural{u0, v0, w0, Coords::Natural};
  const SpectralState init = natural_to_reduced(natural, eigs);

  const long steps = cfg.steps();
  const double h = cfg.t_final / static_cast<double>(steps);
  const std::size_t n_modes = eigs.size();
  const std::vector<ModeWeights> lam = all_weights(BlockKind::Lambda2x2, eta, h, eigs);

  // u' + a u = p(s) with p cubic: u(h) = e^{-ah} u(0) + sum_j c_j j! h^{j+1} phi_{j+1}(-ah).
  struct Recovery {
    double decay;
    double q[4];
  };
  std::vector<Recovery> rw(n_modes);
  for (std::size_t n = 0; n < n_modes; ++n) {
    const double z = -eigs.cube_root(n) * h;
    rw[n].decay = std::exp(z);
    double fact = 1.0, hp = h;
    for (int j = 0; j < 4; ++j) {
      if (j > 0) fact *= j;
      rw[n].q[j] = fact * hp * phi_scalar(j + 1, z);
      hp *= h;
    }
  }
  const Forcing forcing(f, source, eigs);

  // (v, w) update on every mode; u recovered from the Hermite interpolant of v.
  auto stage = [&](const SpectralState& y, const CVector* g, const CVector* dg, bool propagate,
                   const SpectralState& start, SpectralState& out) {
    parallel_for(n_modes, [&](std::size_t n) {
      const auto i = static_cast<Eigen::Index>(n);
      const ModeWeights& mw = lam[n];
      Eigen::Vector2cd r(y.v[i], y.w[i]);
      if (propagate) r = mw.e * r;
      if (g) r += mw.p1 * (*g)[i];
      if (dg) r += mw.p2 * (*dg)[i];
      out.v[i] = r[0];
      out.w[i] = r[1];

      const Complex v0k = start.v[i], w0k = start.w[i], v1 = r[0], w1 = r[1];
      const Complex c2 = (3.0 * (v1 - v0k) - h * (2.0 * w0k + w1)) / (h * h);
      const Complex c3 = (2.0 * (v0k - v1) + h * (w0k + w1)) / (h * h * h);
      const Recovery& q = rw[n];
      out.u[i] = q.decay * start.u[i] + v0k * q.q[0] + w0k * q.q[1] + c2 * q.q[2] + c3 * q.q[3];
    });
  };

  Recorder rec(cfg, eigs);
  SpectralState y = init;
  rec.initial(y);
  SpectralState ya = SpectralState::zeros(n_modes, Coords::Reduced);
  SpectralState next = SpectralState::zeros(n_modes, Coords::Reduced);

  for (long k = 0; k < steps; ++k) {
    const double tk = static_cast<double>(k) * h;
    const double t_next = static_cast<double>(k + 1) * h;
    if (!forcing.active()) {
      stage(y, nullptr, nullptr, true, y, next);
    } else {
      const CVector gk = forcing(y.u, tk);
      stage(y, &gk, nullptr, true, y, ya);
      if (cfg.scheme == Scheme::ETD2) {
        const CVector dg = forcing(ya.u, t_next) - gk;
        stage(ya, nullptr, &dg, false, y, next);
      } else {
        next = ya;
      }
    }
    std::swap(y, next);
    if (!rec.after_step(k + 1, steps, t_next, y)) break;
  }
  return rec.take();
}

}  // namespace mgt
