#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "mgt/errors.hpp"
#include "mgt/semigroup.hpp"
#include "oracles.hpp"

using namespace mgt;

namespace {

constexpr double kPi = std::numbers::pi;

double max_entry(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// exp(-t M) for the unweighted block, by the oracle exponential.
CMatrix oracle_propagator(BlockKind kind, double eta, double mu, double t) {
  return oracle::expm(-t * mode_block(kind, eta, mu).matrix);
}

}  // namespace

TEST(Propagator, ZeroTimeIsIdentity) {
  for (BlockKind kind : {BlockKind::NaturalA, BlockKind::ReducedB, BlockKind::Lambda2x2}) {
    const Propagator p = mode_propagator(kind, 2.0, 27.0, 0.0);
    EXPECT_LE(max_entry(p.matrix - CMatrix::Identity(p.matrix.rows(), p.matrix.cols())), 1e-14);
  }
}

TEST(Propagator, RejectsNegativeTime) {
  EXPECT_THROW(mode_propagator(BlockKind::ReducedB, 2.0, 1.0, -1e-3), InvalidArgument);
  EXPECT_THROW(mode_propagator(BlockKind::ReducedB, 2.0, 0.0, 1.0), InvalidArgument);
}

TEST(Propagator, MatchesOracleExponential) {
  oracle::Rng rng(2);
  for (int k = 0; k < 60; ++k) {
    const BlockKind kind = k % 3 == 0 ? BlockKind::NaturalA : (k % 3 == 1 ? BlockKind::ReducedB : BlockKind::Lambda2x2);
    const double eta = rng.uniform(1.0, 6.0);
    const double mu = std::pow(10.0, rng.uniform(0.0, 3.0));
    const double t = rng.uniform(0.0, 3.0);
    const Propagator p = mode_propagator(kind, eta, mu, t);
    const CMatrix ref = oracle_propagator(kind, eta, mu, t);
    // compare in the weighted frame, where the entries are O(1)
    const Eigen::VectorXd w = norm_weights(kind, mu);
    const CMatrix diff = w.asDiagonal() * (p.matrix - ref) * w.cwiseInverse().asDiagonal();
    EXPECT_LE(oracle::spectral_norm(diff), 1e-9) << to_string(kind) << " eta=" << eta << " mu=" << mu << " t=" << t;
  }
}

TEST(Propagator, SemigroupLaw) {
  oracle::Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    const double eta = rng.uniform(1.0, 6.0);
    const double mu = std::pow(10.0, rng.uniform(0.0, 3.0));
    const double t = rng.uniform(0.0, 10.0), s = rng.uniform(0.0, 10.0);
    for (BlockKind kind : {BlockKind::NaturalA, BlockKind::ReducedB}) {
      const CMatrix lhs = weighted_propagator(kind, eta, mu, t + s);
      const CMatrix rhs = weighted_propagator(kind, eta, mu, t) * weighted_propagator(kind, eta, mu, s);
      EXPECT_LE(oracle::spectral_norm(lhs - rhs), 1e-10) << eta << " " << mu << " " << t << " " << s;
    }
  }
}

TEST(Propagator, DefectiveDoubleRootUsesScalingSquaring) {
  const Propagator p = mode_propagator(BlockKind::ReducedB, 3.0, 1.0, 1.7);
  EXPECT_EQ(p.method, ExpMethod::ScalingSquaring);
  EXPECT_LE(max_entry(p.matrix - oracle_propagator(BlockKind::ReducedB, 3.0, 1.0, 1.7)), 1e-9);
  for (double t : {0.1, 1.0, 5.0, 10.0}) {
    EXPECT_LE(max_entry(mode_propagator(BlockKind::ReducedB, 3.0, 8.0, t).matrix * 1.0 -
                        oracle_propagator(BlockKind::ReducedB, 3.0, 8.0, t)),
              1e-9)
        << t;
  }
}

TEST(Propagator, BothPathsAgree) {
  oracle::Rng rng(4);
  for (int k = 0; k < 40; ++k) {
    const double eta = rng.uniform(0.0, 6.0);
    const double mu = std::pow(10.0, rng.uniform(0.0, 2.0));
    const double t = rng.uniform(0.01, 2.0);
    const double a = std::cbrt(mu);
    ExpMethod used;
    const CMatrix eig = weighted_propagator(BlockKind::ReducedB, eta, mu, t, &used);
    if (used != ExpMethod::EigenDecomposition) continue;
    const CMatrix ss = expm_scaling_squaring(-t * a * weighted_unit_block(BlockKind::ReducedB, eta));
    EXPECT_LE(oracle::spectral_norm(eig - ss), 1e-9 * std::max(1.0, oracle::spectral_norm(ss))) << eta << " " << mu;
  }
}

TEST(Propagator, GeneratorConsistency) {
  for (double eta : {0.5, 1.0, 2.0, 3.0, 5.0}) {
    for (double mu : {1.0, 8.0, 27.0}) {
      const CMatrix m = std::cbrt(mu) * weighted_unit_block(BlockKind::ReducedB, eta);
      const double mnorm = oracle::spectral_norm(m);
      for (double h : {1e-3, 1e-4}) {
        const CMatrix approx = (CMatrix::Identity(3, 3) - weighted_propagator(BlockKind::ReducedB, eta, mu, h)) / h;
        EXPECT_LE(oracle::spectral_norm(approx - m), 5.0 * h * mnorm * mnorm) << eta << " " << mu << " " << h;
      }
    }
  }
}

TEST(Propagator, BoundaryCaseReturnsOnOscillatorySubspace) {
  // eta = 1, mu = 1: spectrum of -B is {-1, i, -i}; after one period the oscillatory
  // eigenvectors come back and the real one has decayed by e^{-2 pi}.
  const CMatrix p = mode_propagator(BlockKind::ReducedB, 1.0, 1.0, 2.0 * kPi).matrix;
  Eigen::ComplexEigenSolver<CMatrix> es(-mode_block(BlockKind::ReducedB, 1.0, 1.0).matrix);
  for (int k = 0; k < 3; ++k) {
    const Complex l = es.eigenvalues()[k];
    const Eigen::VectorXcd x = es.eigenvectors().col(k);
    const Complex factor = std::abs(l.real() + 1.0) < 1e-8 ? std::exp(-2.0 * kPi) : 1.0;
    EXPECT_LE((p * x - factor * x).norm(), 1e-8) << l;
  }
}

TEST(Propagator, BoundaryCaseStaysBounded) {
  double sup = 0.0;
  for (int k = 0; k <= 1000; ++k) sup = std::max(sup, propagator_norm(BlockKind::ReducedB, 1.0, 1.0, 0.1 * k));
  EXPECT_TRUE(std::isfinite(sup));
  EXPECT_GE(sup, 1.0);
  EXPECT_LT(sup, 10.0);
  ::testing::Test::RecordProperty("sup_norm_eta1_mu1", std::to_string(sup));
}

TEST(PropagateLinear, ZeroTimeUnchanged) {
  oracle::Rng rng(5);
  const EigenSequence e = dirichlet_eigs(10, kPi);
  SpectralState s{rng.cvector(10), rng.cvector(10), rng.cvector(10), Coords::Reduced};
  const SpectralState out = propagate_linear(s, 2.0, 0.0, e);
  EXPECT_LE((out.u - s.u).norm() + (out.v - s.v).norm() + (out.w - s.w).norm(), 1e-14);
}

TEST(PropagateLinear, ModesIndependent) {
  oracle::Rng rng(6);
  const EigenSequence e = dirichlet_eigs(6, 2.0);
  SpectralState s{rng.cvector(6), rng.cvector(6), rng.cvector(6), Coords::Natural};
  const SpectralState out = propagate_linear(s, 1.5, 0.7, e);
  for (Eigen::Index n = 0; n < 6; ++n) {
    const Eigen::Vector3cd ref =
        oracle_propagator(BlockKind::NaturalA, 1.5, e[n], 0.7) * Eigen::Vector3cd(s.u[n], s.v[n], s.w[n]);
    EXPECT_LE(std::abs(out.u[n] - ref[0]) + std::abs(out.v[n] - ref[1]) + std::abs(out.w[n] - ref[2]),
              1e-9 * std::max(1.0, ref.norm()));
  }
}

TEST(PropagateLinear, ShapeMismatch) {
  SpectralState s = SpectralState::zeros(3, Coords::Reduced);
  EXPECT_THROW(propagate_linear(s, 2.0, 1.0, dirichlet_eigs(4, kPi)), ShapeError);
}

TEST(PropagateLinear, ParabolicDisplacementDecaysMonotonically) {
  // u(0) = single mode, u_t = u_tt = 0.
  for (double mu : {1.0, 8.0, 27.0}) {
    const EigenSequence e = EigenSequence::user_supplied({mu});
    SpectralState s = SpectralState::zeros(1, Coords::Natural);
    s.u[0] = 1.0;
    double prev = z_norm(propagate_linear(s, 2.0, 1.0, e), e);
    for (int k = 1; k < 100; ++k) {
      const double t = 1.0 + 9.0 * k / 99.0;
      const double now = z_norm(propagate_linear(s, 2.0, t, e), e);
      EXPECT_LT(now, prev) << "mu=" << mu << " t=" << t;
      prev = now;
    }
  }
}

TEST(PropagateLinear, IllPosedGrowthSlopeOnDominantEigenvector) {
  const double mu = 1000.0, eta = 0.5;
  const EigenSequence e = EigenSequence::user_supplied({mu});
  // Eigenvector (1, l, l^2) of -A for l = -z a, the eigenvalue with positive real part.
  const Complex l = -multipliers(eta).z * std::cbrt(mu);
  ASSERT_GT(l.real(), 0.0);
  SpectralState s = SpectralState::zeros(1, Coords::Natural);
  s.u[0] = 1.0;
  s.v[0] = l;
  s.w[0] = l * l;
  double st = 0, sy = 0, stt = 0, sty = 0;
  const int samples = 21;
  for (int k = 0; k < samples; ++k) {
    const double t = 1.0 + k / 20.0;
    const double y = std::log(z_norm(propagate_linear(s, eta, t, e), e));
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  const double slope = (samples * sty - st * sy) / (samples * stt - st * st);
  EXPECT_NEAR(slope, 2.5, 2.5e-3);
}

TEST(DecayRate, Examples) {
  const RateWindow w27 = default_rate_window(27.0);
  EXPECT_NEAR(decay_rate(0.5, 27.0, w27.t0, w27.t1), -0.75, 0.75e-3);
  const RateWindow w1 = default_rate_window(1.0);
  EXPECT_NEAR(decay_rate(2.0, 1.0, w1.t0, w1.t1), 0.5, 1e-3);
  EXPECT_NEAR(decay_rate(1.0, 1.0, w1.t0, w1.t1), 0.0, 1e-3);
}

TEST(DecayRate, ConvergesToSpectralAbscissa) {
  // The slowest subdominant mode decays only (1 - c) a faster at eta = 5, so the error falls
  // with the window length rather than sitting below a fixed tolerance on the default window.
  for (double eta : {0.0, 0.5, 2.0, 5.0}) {
    for (double mu : {1.0, 27.0, 1000.0}) {
      const double a = cube_root(mu);
      const double predicted = -spectral_abscissa(BlockKind::ReducedB, eta, mu);
      const double scale = std::max(1.0, std::abs(predicted));
      double previous = std::numeric_limits<double>::infinity();
      for (double length : {80.0, 320.0, 1280.0}) {
        const double err = std::abs(decay_rate(eta, mu, 2.0 / a, (2.0 + length) / a) - predicted) / scale;
        EXPECT_LT(err, previous) << eta << " " << mu << " " << length;
        previous = err;
      }
      EXPECT_LE(previous, 1e-4) << eta << " " << mu;
      const RateWindow w = default_rate_window(mu);
      EXPECT_NEAR(decay_rate(eta, mu, w.t0, w.t1), predicted, 2e-3 * scale) << eta << " " << mu;
    }
  }
}

TEST(DecayRate, DegenerateWindow) {
  EXPECT_THROW(decay_rate(2.0, 1.0, 0.0, 1.0), InvalidArgument);
  EXPECT_THROW(decay_rate(2.0, 1.0, 2.0, 2.0), InvalidArgument);
  EXPECT_THROW(decay_rate(2.0, 1.0, 3.0, 1.0), InvalidArgument);
  EXPECT_THROW(decay_rate(2.0, 1.0, 1.0, 2.0, BlockKind::ReducedB, 1), InvalidArgument);
}

TEST(RateScan, IllPosedRatesAndCsv) {
  const EigenSequence e = dirichlet_eigs(8, kPi);
  const std::vector<RateRow> rows = rate_scan(BlockKind::NaturalA, 0.5, e);
  ASSERT_EQ(rows.size(), 8u);
  for (const RateRow& r : rows) {
    EXPECT_NEAR(r.re_rate_predicted, 0.25 * std::cbrt(r.mu), 1e-12);
    EXPECT_LE(r.abs_error, 1e-3 * r.re_rate_predicted);
  }
  const std::string csv = rate_scan_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "mode_index,mu,re_rate_predicted,re_rate_measured,abs_error");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 9);
}

TEST(IllPosedEvidence, PropagatorNormsIncreaseOverLastQuarter) {
  const std::vector<double> norms = propagator_norms(BlockKind::NaturalA, 0.5, 1.0, dirichlet_eigs(64, kPi));
  for (std::size_t n = 48; n < 64; ++n) EXPECT_GT(norms[n], norms[n - 1]) << n;
  // Growth between modes follows the rate (1 - eta)/2 mu^{1/3}.
  const double a32 = std::cbrt(32.0 * 32.0), a64 = std::cbrt(64.0 * 64.0);
  EXPECT_NEAR(std::log(norms[63] / norms[31]), 0.25 * (a64 - a32), 0.2);
}

TEST(Smoothing, BoundedTimesPowerLaw) {
  const EigenSequence e = dirichlet_eigs(256, kPi);
  double lo = 1e300, hi = 0.0;
  for (double t : {1e-3, 1e-2, 1e-1, 1.0}) {
    const double v = std::sqrt(t) * smoothing_constant(2.0, 0.5, t, e);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  EXPECT_LT(hi / lo, 10.0);
}

TEST(Smoothing, ZeroExponentIsSupOfNorms) {
  const EigenSequence e = dirichlet_eigs(16, kPi);
  const std::vector<double> norms = propagator_norms(BlockKind::ReducedB, 2.0, 0.3, e);
  EXPECT_DOUBLE_EQ(smoothing_constant(2.0, 0.0, 0.3, e), *std::max_element(norms.begin(), norms.end()));
}

TEST(Smoothing, Preconditions) {
  const EigenSequence e = dirichlet_eigs(4, kPi);
  EXPECT_THROW(smoothing_constant(0.5, 0.5, 1.0, e), RegimeError);
  EXPECT_THROW(smoothing_constant(1.0, 0.5, 1.0, e), RegimeError);
  EXPECT_THROW(smoothing_constant(2.0, 0.5, 0.0, e), InvalidArgument);
  EXPECT_THROW(smoothing_constant(2.0, 1.5, 1.0, e), InvalidArgument);
}
