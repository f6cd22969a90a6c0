#include "loewner/builders.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

namespace loewner {
namespace {

using testing::exact_rank;
using testing::random_points;
using testing::random_rational_points;

PointConfig pts(std::vector<double> v) { return make_point_config(std::move(v)); }

void expect_matrix_near(const Matrix<double>& a, const std::vector<std::vector<double>>& b, double tol = 1e-14) {
  ASSERT_EQ(a.rows(), b.size());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    ASSERT_EQ(a.cols(), b[i].size());
    for (std::size_t j = 0; j < a.cols(); ++j) EXPECT_NEAR(a(i, j), b[i][j], tol) << i << "," << j;
  }
}

TEST(LoewnerMatrix, SquareExponent) {
  // Off-diagonal (1 - 4) / (1 - 2) = 3; diagonal 2 p.
  expect_matrix_near(loewner_matrix<double>(pts({1, 2}), 2.0).dense(), {{2, 3}, {3, 4}});
}

TEST(LoewnerMatrix, LinearExponentIsAllOnes) {
  const auto L = loewner_matrix<double>(pts({1, 2, 3}), 1.0);
  for (double v : L.dense().data()) EXPECT_EQ(v, 1.0);
}

TEST(LoewnerMatrix, SquareRootExponent) {
  // (1 - 2) / (1 - 4) = 1/3; diagonal 0.5 p^{-1/2}.
  expect_matrix_near(loewner_matrix<double>(pts({1, 4}), 0.5).dense(), {{0.5, 1.0 / 3}, {1.0 / 3, 0.25}});
}

TEST(LoewnerMatrix, AcceptsSpecStruct) {
  const LoewnerSpec spec{pts({1, 2}), Exponent(2.0)};
  EXPECT_EQ(loewner_matrix<double>(spec), loewner_matrix<double>(spec.config, spec.exponent));
}

TEST(LoewnerMatrix, ExactRequiresIntegerExponent) {
  EXPECT_THROW(loewner_matrix<Rational>(pts({1, 2}), 1.5), InputError);
  const auto L = loewner_matrix<Rational>(pts({1, 2, 3}), 3.0);
  EXPECT_EQ(L(0, 1), Rational(7));
  EXPECT_EQ(L(0, 2), Rational(13));
  EXPECT_EQ(L(2, 2), Rational(27));
}

TEST(LoewnerMatrix, ExactlySymmetricForRandomInputs) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = random_points(rng, 1 + trial % 7);
    const double r = std::uniform_real_distribution<double>(-4, 8)(rng);
    const auto L = loewner_matrix<double>(c, r).dense();
    EXPECT_EQ(L, L.transpose());
  }
}

// Each entry is homogeneous of degree r - 1 in the nodes.
TEST(LoewnerMatrix, ScalingCovariance) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const auto c = random_points(rng, n, 0.0, 5.0);
    const double scale = std::uniform_real_distribution<double>(0.2, 3.0)(rng);
    const double r = std::uniform_real_distribution<double>(-3, 6)(rng);
    std::vector<double> scaled;
    for (double p : c.points()) scaled.push_back(scale * p);
    const auto L = loewner_matrix<double>(c, r).dense();
    const auto Ls = loewner_matrix<double>(pts(scaled), r).dense();
    const double f = std::pow(scale, r - 1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(Ls(i, j), f * L(i, j), 1e-12 * std::fabs(f * L(i, j)) + 1e-300);
  }
}

TEST(SinhLoewner, UnitExponentIsAllOnes) {
  const auto M = sinh_loewner<double>(std::vector<double>{0.1, 0.2}, 1.0);
  expect_matrix_near(M.dense(), {{1, 1}, {1, 1}});
}

TEST(SinhLoewner, SinglePointDiagonalIsExponent) {
  const auto M = sinh_loewner<double>(std::vector<double>{0.0}, 3.0);
  EXPECT_EQ(M(0, 0), 3.0);
}

TEST(SinhLoewner, RejectsNonIncreasing) {
  EXPECT_THROW(sinh_loewner<double>(std::vector<double>{0.2, 0.1}, 1.0), InputError);
}

// Delta Ltilde Delta = L_r with p = e^{2x}, Delta = diag(e^{(r-1)x}).
TEST(SinhLoewner, CongruentToLoewner) {
  const auto c = pts({1, 2});
  const double r = 1.5;
  std::vector<double> x;
  std::vector<double> d;
  for (double p : c.points()) {
    x.push_back(std::log(p) / 2);
    d.push_back(std::exp((r - 1) * x.back()));
  }
  const auto Dl = diagonal<double>(std::span<const double>(d));
  const auto lhs = Dl * (sinh_loewner<double>(x, r).dense() * Dl);
  const auto L = loewner_matrix<double>(c, r).dense();
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(lhs(i, j), L(i, j), 1e-14);
}

TEST(DiagD, Examples) {
  const auto D = diag_D<double>(pts({1, 2, 3}));
  expect_matrix_near(D.dense(), {{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
  EXPECT_EQ(diag_D<double>(pts({5}))(0, 0), 5.0);
  EXPECT_EQ(diag_D_power<Rational>(pts({2, 4}), -2.0)(1, 1), Rational(1, 16));
}

TEST(OnesE, ExamplesAndRankOne) {
  EXPECT_EQ(ones_E<double>(1)(0, 0), 1.0);
  const auto E = ones_E<Rational>(3);
  for (const auto& v : E.dense().data()) EXPECT_EQ(v, Rational(1));
  for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(exact_rank(ones_E<Rational>(n).dense()), 1u);
  EXPECT_THROW(ones_E<double>(0), InputError);
}

TEST(VandermondeW, Examples) {
  const auto W = vandermonde_W<double>(pts({1, 2, 3}), 2.0);
  expect_matrix_near(W, {{1, 1, 1}, {1, 2, 3}});
  expect_matrix_near(vandermonde_W<double>(pts({1, 2}), 1.0), {{1, 1}});
  EXPECT_THROW(vandermonde_W<double>(pts({1, 2}), 1.5), InputError);
  EXPECT_THROW(vandermonde_W<double>(pts({1, 2}), 0.0), InputError);
}

TEST(VandermondeW, RankIsMinOfShape) {
  std::mt19937_64 rng(3);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (long r = 1; r <= 8; ++r) {
      const auto c = random_rational_points(rng, n);
      const auto W = vandermonde_W<Rational>(c, static_cast<double>(r));
      EXPECT_EQ(exact_rank(W), std::min<std::size_t>(static_cast<std::size_t>(r), n));
    }
  }
}

TEST(AntidiagV, ShapeAndInertia) {
  EXPECT_EQ(antidiag_V<double>(1)(0, 0), 1.0);
  expect_matrix_near(antidiag_V<double>(2).dense(), {{0, 1}, {1, 0}});
  // r = 2k: k ones and k minus-ones; r = 2k-1: k ones and k-1 minus-ones.
  EXPECT_EQ(exact_inertia(antidiag_V<Rational>(2)), (Inertia{1, 0, 1}));
  EXPECT_EQ(exact_inertia(antidiag_V<Rational>(3)), (Inertia{2, 0, 1}));
  for (std::size_t r = 1; r <= 9; ++r) {
    const int k = static_cast<int>((r + 1) / 2);
    const Inertia expected = r % 2 == 0 ? Inertia{k, 0, k} : Inertia{k, 0, k - 1};
    EXPECT_EQ(exact_inertia(antidiag_V<Rational>(r)), expected) << r;
  }
}

// For integer r: W^T V W == L_r in rational arithmetic.
TEST(VandermondeW, FactorsIntegerLoewner) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const auto c = random_rational_points(rng, n);
    for (long r = 1; r <= 7; ++r) {
      const auto W = vandermonde_W<Rational>(c, static_cast<double>(r));
      const auto V = antidiag_V<Rational>(static_cast<std::size_t>(r));
      const auto prod = W.transpose() * (V.dense() * W);
      EXPECT_EQ(prod, loewner_matrix<Rational>(c, static_cast<double>(r)).dense()) << "n=" << n << " r=" << r;
    }
  }
}

TEST(PowerSumMatrix, Examples) {
  expect_matrix_near(power_sum_matrix<double>(pts({1, 2}), 1.0).dense(), {{2, 3}, {3, 4}});
  expect_matrix_near(power_sum_matrix<double>(pts({1, 2}), 0.0).dense(), {{1, 1}, {1, 1}});
  expect_matrix_near(power_sum_matrix<double>(pts({1, 2, 3}), 2.0).dense(),
                     {{4, 9, 16}, {9, 16, 25}, {16, 25, 36}}, 1e-12);
  EXPECT_EQ(power_sum_matrix<Rational>(pts({1, 2, 3}), 2.0)(1, 2), Rational(25));
}

TEST(CrossLoewner, CoincidentSequencesGiveLoewner) {
  const auto c = pts({1, 2.5, 4});
  const auto C = cross_loewner<double>(c, c, 1.7);
  const auto L = loewner_matrix<double>(c, 1.7).dense();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(C(i, j), L(i, j), 1e-15);
}

TEST(CrossLoewner, SquareExponentValues) {
  // (1 - 9)/(1 - 3) = 4, (1 - 16)/(1 - 4) = 5, (4 - 9)/(2 - 3) = 5, (4 - 16)/(2 - 4) = 6.
  expect_matrix_near(cross_loewner<double>(pts({1, 2}), pts({3, 4}), 2.0), {{4, 5}, {5, 6}}, 1e-14);
}

TEST(CrossLoewner, NonsingularAtNonIntegerExponent) {
  const auto C = cross_loewner<double>(pts({1, 2}), pts({3, 4}), 1.5);
  const double det = C(0, 0) * C(1, 1) - C(0, 1) * C(1, 0);
  EXPECT_GT(std::fabs(det), 1e-10);
}

TEST(CrossLoewner, LengthMismatch) {
  EXPECT_THROW(cross_loewner<double>(pts({1, 2}), pts({3}), 2.0), InputError);
}

TEST(LoewnerMatrix, ExtendedPrecisionMatchesDouble) {
  const auto c = pts({0.5, 1.25, 3, 7});
  const auto Ld = loewner_matrix<double>(c, 2.75).dense();
  PrecisionScope scope(256);
  const auto Lb = loewner_matrix<BigReal>(c, 2.75).dense();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(Lb(i, j).convert_to<double>(), Ld(i, j), 1e-13 * std::fabs(Ld(i, j)));
}

}  // namespace
}  // namespace loewner
