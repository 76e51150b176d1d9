#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "mgt/errors.hpp"
#include "mgt/spectral.hpp"
#include "oracles.hpp"

using namespace mgt;

namespace {

constexpr double kPi = std::numbers::pi;

CVector unit(std::size_t n, std::size_t k) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(n));
  v[static_cast<Eigen::Index>(k)] = 1.0;
  return v;
}

}  // namespace

TEST(DirichletEigs, SquaresOnUnitInterval) {
  const EigenSequence e = dirichlet_eigs(3, kPi);
  ASSERT_EQ(e.size(), 3u);
  EXPECT_NEAR(e[0], 1.0, 1e-14);
  EXPECT_NEAR(e[1], 4.0, 1e-14);
  EXPECT_NEAR(e[2], 9.0, 1e-13);
  EXPECT_TRUE(e.is_dirichlet());
}

TEST(DirichletEigs, OtherLengths) {
  EXPECT_NEAR(dirichlet_eigs(1, 1.0)[0], 9.8696044010893586, 1e-13);
  const EigenSequence e = dirichlet_eigs(2, 2.0);
  EXPECT_NEAR(e[0], kPi * kPi / 4.0, 1e-14);
  EXPECT_NEAR(e[1], kPi * kPi, 1e-13);
}

TEST(DirichletEigs, RejectsBadArguments) {
  EXPECT_THROW(dirichlet_eigs(0, 1.0), InvalidArgument);
  EXPECT_THROW(dirichlet_eigs(-2, 1.0), InvalidArgument);
  EXPECT_THROW(dirichlet_eigs(3, 0.0), InvalidArgument);
  EXPECT_THROW(dirichlet_eigs(3, -1.0), InvalidArgument);
}

TEST(EigenSequenceUser, ValidatesOrderingAndSign) {
  EXPECT_THROW(EigenSequence::user_supplied({}), InvalidArgument);
  EXPECT_THROW(EigenSequence::user_supplied({1.0, 1.0}), InvalidArgument);
  EXPECT_THROW(EigenSequence::user_supplied({2.0, 1.0}), InvalidArgument);
  EXPECT_THROW(EigenSequence::user_supplied({0.0, 1.0}), InvalidArgument);
  const EigenSequence e = EigenSequence::user_supplied({1.0, 8.0});
  EXPECT_FALSE(e.is_dirichlet());
  EXPECT_DOUBLE_EQ(e.cube_root(1), 2.0);
}

TEST(CubeRoot, ExactOnCubesAndRoundedElsewhere) {
  for (int k = 1; k <= 2000; ++k) EXPECT_EQ(cube_root(static_cast<double>(k) * k * k), k);
  oracle::Rng rng(4);
  for (int trial = 0; trial < 1000; ++trial) {
    const double mu = std::exp(rng.uniform(-20.0, 20.0));
    const double a = cube_root(mu);
    const long double lo = std::nextafter(a, 0.0), hi = std::nextafter(a, 1e300);
    // no neighbouring double is a better root
    const long double m = mu;
    EXPECT_LE(std::abs(static_cast<long double>(a) * a * a - m), std::abs(lo * lo * lo - m));
    EXPECT_LE(std::abs(static_cast<long double>(a) * a * a - m), std::abs(hi * hi * hi - m));
  }
  EXPECT_EQ(dirichlet_eigs(3, kPi).cube_root(2), cube_root(dirichlet_eigs(3, kPi)[2]));
}

TEST(FracApply, Examples) {
  const EigenSequence e = EigenSequence::user_supplied({8.0});
  CVector c(1);
  c << 1.0;
  EXPECT_NEAR(std::abs(frac_apply(0.0, c, e)[0] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(frac_apply(1.0 / 3.0, c, e)[0] - 2.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(frac_apply(-1.0 / 3.0, c, e)[0] - 0.5), 0.0, 1e-15);
}

TEST(FracApply, ShapeMismatch) {
  const EigenSequence e = dirichlet_eigs(3, kPi);
  EXPECT_THROW(frac_apply(0.5, CVector::Zero(2), e), ShapeError);
  EXPECT_THROW(scale_norm(0.5, CVector::Zero(4), e), ShapeError);
}

TEST(FracApply, SemigroupLawOfDiagonalPowers) {
  oracle::Rng rng(11);
  const EigenSequence e = dirichlet_eigs(40, 2.5);
  const double powers[] = {-2.0 / 3.0, -1.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0};
  for (int trial = 0; trial < 10; ++trial) {
    const CVector c = rng.cvector(40);
    for (double a : powers) {
      for (double b : powers) {
        const CVector lhs = frac_apply(a, frac_apply(b, c, e), e);
        const CVector rhs = frac_apply(a + b, c, e);
        for (Eigen::Index k = 0; k < 40; ++k) {
          EXPECT_LE(std::abs(lhs[k] - rhs[k]), 1e-12 * std::abs(rhs[k]) + 1e-300);
        }
      }
    }
  }
}

TEST(ScaleNorm, Examples) {
  EXPECT_NEAR(scale_norm(0.5, CVector::Ones(1), EigenSequence::user_supplied({4.0})), 2.0, 1e-15);
  CVector c(2);
  c << 3.0, 4.0;
  EXPECT_NEAR(scale_norm(0.0, c, EigenSequence::user_supplied({1.0, 2.0})), 5.0, 1e-15);
  EXPECT_NEAR(scale_norm(1.0 / 3.0, CVector::Ones(2), EigenSequence::user_supplied({1.0, 8.0})), std::sqrt(5.0),
              1e-14);
}

TEST(ScaleNorm, EqualsUnweightedNormOfFracApply) {
  oracle::Rng rng(3);
  const EigenSequence e = dirichlet_eigs(17, 1.0);
  for (double alpha : {-1.0, -0.5, 0.0, 1.0 / 3.0, 1.0}) {
    const CVector c = rng.cvector(17);
    EXPECT_EQ(scale_norm(alpha, c, e), scale_norm(0.0, frac_apply(alpha, c, e), e));
  }
}

TEST(ScaleNorm, BruteForceAccumulation) {
  oracle::Rng rng(5);
  const EigenSequence e = dirichlet_eigs(25, 3.0);
  const CVector c = rng.cvector(25);
  double sum = 0.0;
  for (int k = 0; k < 25; ++k) sum += std::pow(e[k], 2.0 / 3.0) * std::norm(c[k]);
  EXPECT_NEAR(scale_norm(1.0 / 3.0, c, e), std::sqrt(sum), 1e-12 * std::sqrt(sum));
}

TEST(ZNorm, Examples) {
  const EigenSequence one = EigenSequence::user_supplied({1.0});
  EXPECT_EQ(z_norm(SpectralState::zeros(1, Coords::Reduced), one), 0.0);
  SpectralState s = SpectralState::zeros(1, Coords::Reduced);
  s.u[0] = 1.0;
  EXPECT_NEAR(z_norm(s, one), 1.0, 1e-15);

  const EigenSequence eight = EigenSequence::user_supplied({8.0});
  SpectralState t = SpectralState::zeros(1, Coords::Natural);
  t.u[0] = t.v[0] = t.w[0] = 1.0;
  EXPECT_NEAR(z_norm(t, eight), std::sqrt(21.0), 1e-13);
  const double nu = scale_norm(2.0 / 3.0, t.u, eight), nv = scale_norm(1.0 / 3.0, t.v, eight);
  EXPECT_NEAR(z_norm(t, eight), std::sqrt(nu * nu + nv * nv + 1.0), 1e-15);
}

TEST(ZNorm, ShapeMismatch) {
  SpectralState s = SpectralState::zeros(3, Coords::Reduced);
  s.v = CVector::Zero(2);
  EXPECT_THROW(z_norm(s, dirichlet_eigs(3, 1.0)), ShapeError);
}

TEST(Transform, SingleModeSamples) {
  const double length = 2.0;
  const EigenSequence e = dirichlet_eigs(8, length);
  const GridField f = synthesize(unit(8, 0), e);
  ASSERT_EQ(f.samples.size(), 8u);
  for (std::size_t j = 0; j < 8; ++j) {
    EXPECT_NEAR(f.samples[j], std::sqrt(2.0 / length) * std::sin(kPi * f.x(j) / length), 1e-14);
  }
  const CVector back = analyze(f, e);
  for (Eigen::Index k = 0; k < 8; ++k) EXPECT_NEAR(std::abs(back[k] - (k == 0 ? 1.0 : 0.0)), 0.0, 1e-12);
}

TEST(Transform, ZeroCoefficients) {
  const EigenSequence e = dirichlet_eigs(5, kPi);
  for (double s : synthesize(CVector::Zero(5), e).samples) EXPECT_EQ(s, 0.0);
}

TEST(Transform, MatchesBruteForceSums) {
  oracle::Rng rng(21);
  for (int n : {1, 2, 7, 16, 33}) {
    const double length = 1.7;
    const EigenSequence e = dirichlet_eigs(n, length);
    const CVector c = rng.rvector(n);
    const CVector ref = oracle::sine_synthesis(c, length);
    const GridField f = synthesize(c, e);
    for (int j = 0; j < n; ++j) EXPECT_NEAR(f.samples[j], ref[j].real(), 1e-12);

    const CVector samples = rng.rvector(n);
    GridField g{std::vector<double>(n), length};
    for (int j = 0; j < n; ++j) g.samples[j] = samples[j].real();
    const CVector mine = analyze(g, e);
    const CVector solved = oracle::sine_analysis(samples, length);
    for (int k = 0; k < n; ++k) EXPECT_NEAR(std::abs(mine[k] - solved[k]), 0.0, 1e-11);
  }
}

TEST(Transform, RoundTrip) {
  oracle::Rng rng(8);
  for (int n : {1, 2, 8, 16, 64}) {
    const EigenSequence e = dirichlet_eigs(n, kPi);
    const CVector c = rng.rvector(n);
    const CVector back = analyze(synthesize(c, e), e);
    EXPECT_LE((back - c).norm(), 1e-12 * std::max(1.0, c.norm())) << "n=" << n;
  }
}

TEST(Transform, Parseval) {
  oracle::Rng rng(9);
  for (int n : {4, 31, 64}) {
    const double length = 3.3;
    const EigenSequence e = dirichlet_eigs(n, length);
    const CVector c = rng.rvector(n);
    const GridField f = synthesize(c, e);
    double quad = 0.0;
    for (double s : f.samples) quad += s * s;
    quad *= length / (n + 1);
    const double norm2 = std::pow(scale_norm(0.0, c, e), 2);
    EXPECT_NEAR(quad, norm2, 1e-10 * norm2);
  }
}

TEST(Transform, ComplexFieldRejected) {
  const EigenSequence e = dirichlet_eigs(4, kPi);
  CVector c = CVector::Zero(4);
  c[1] = Complex(0.0, 1.0);
  EXPECT_THROW(synthesize(c, e), DataError);
  const CVector field = synthesize_complex(c, e);
  EXPECT_GT(field.imag().cwiseAbs().maxCoeff(), 0.1);
}

TEST(Transform, UserSuppliedBasisUnsupported) {
  const EigenSequence e = EigenSequence::user_supplied({1.0, 2.0});
  EXPECT_THROW(synthesize(CVector::Zero(2), e), UnsupportedBasis);
  EXPECT_THROW(analyze(GridField{{0.0, 0.0}, 1.0}, e), UnsupportedBasis);
}

TEST(Transform, ShapeMismatch) {
  const EigenSequence e = dirichlet_eigs(4, kPi);
  EXPECT_THROW(synthesize(CVector::Zero(3), e), ShapeError);
  EXPECT_THROW(analyze(GridField{{0.0, 0.0}, kPi}, e), ShapeError);
}
