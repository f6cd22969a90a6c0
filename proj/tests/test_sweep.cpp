#include "loewner/sweep.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace loewner {
namespace {

PointConfig pts(std::vector<double> v) { return make_point_config(std::move(v)); }

const ToleranceContext kTol{};

TEST(EigenTrajectories, TwoPointGrid) {
  const auto s = eigen_trajectories_at(pts({1, 2}), {0.5, 1.0, 1.5}, kTol);
  ASSERT_EQ(s.points.size(), 3u);
  EXPECT_EQ(s.points[0].inertia, (Inertia{2, 0, 0}));
  EXPECT_EQ(s.points[1].inertia, (Inertia{1, 1, 0}));
  EXPECT_EQ(s.points[2].inertia, (Inertia{1, 0, 1}));
  EXPECT_TRUE(s.points[1].integer_snapped);
  const auto changes = sign_change_report(s);
  ASSERT_EQ(changes.size(), 2u);
  for (const auto& c : changes) {
    EXPECT_FALSE(c.anomalous);
    EXPECT_EQ(c.bracketed_integer, 1L);
  }
}

TEST(EigenTrajectories, SinglePointAtInteger) {
  const auto s = eigen_trajectories_at(pts({1, 2, 3, 4}), {2.0}, kTol);
  EXPECT_EQ(s.points[0].inertia, (Inertia{1, 2, 1}));
}

TEST(EigenTrajectories, SnapsNearIntegers) {
  const auto s = eigen_trajectories(pts({1, 2, 3}), 0.0 + 1e-12, 2.0 + 1e-12, 3, kTol);
  EXPECT_EQ(s.points[1].r, 1.0);
  EXPECT_TRUE(s.points[1].integer_snapped);
  EXPECT_EQ(s.points[2].r, 2.0);
  EXPECT_EQ(s.points[2].inertia, (Inertia{1, 1, 1}));
}

TEST(EigenTrajectories, RejectsBadRange) {
  EXPECT_THROW(eigen_trajectories(pts({1, 2}), 2, 1, 10, kTol), InputError);
  EXPECT_THROW(eigen_trajectories(pts({1, 2}), 1, 2, 1, kTol), InputError);
  EXPECT_THROW(eigen_trajectories_at(pts({1, 2}), {}, kTol), InputError);
}

TEST(EigenTrajectories, AscendingEigenvaluesOfLengthN) {
  const auto s = eigen_trajectories(pts({1, 2, 3, 5}), 0.1, 4.9, 25, kTol);
  for (const auto& p : s.points) {
    ASSERT_EQ(p.eigenvalues.size(), 4u);
    EXPECT_TRUE(std::is_sorted(p.eigenvalues.begin(), p.eigenvalues.end()));
    EXPECT_TRUE(p.error.empty());
  }
}

TEST(SignChangeReport, ConstantBeyondN) {
  const auto s = eigen_trajectories(pts({1, 2, 3, 4, 5}), 5.1, 9.0, 40, kTol);
  EXPECT_TRUE(sign_change_report(s).empty());
  for (const auto& p : s.points) EXPECT_EQ(p.inertia, (Inertia{3, 0, 2}));
}

TEST(SignChangeReport, ConstantBetweenOneAndTwo) {
  const auto s = eigen_trajectories(pts({1, 2, 3, 4}), 1.1, 1.9, 30, kTol);
  EXPECT_TRUE(sign_change_report(s).empty());
}

TEST(SignChangeReport, SixPointsChangeOnlyAtIntegers) {
  const auto s = eigen_trajectories(pts({1, 2, 3, 4, 5, 6}), 0.05, 6.95, 70, kTol);
  const auto changes = sign_change_report(s);
  std::set<long> crossed;
  for (const auto& c : changes) {
    EXPECT_FALSE(c.anomalous) << c.r_before << " -> " << c.r_after;
    ASSERT_TRUE(c.bracketed_integer.has_value());
    crossed.insert(*c.bracketed_integer);
  }
  EXPECT_EQ(crossed, (std::set<long>{1, 2, 3, 4, 5}));
}

TEST(SignChangeReport, FlagsChangeWithoutInteger) {
  SpectrumSweep s{pts({1, 2, 3}), kTol, {}};
  SweepPoint a;
  a.r = 1.2;
  a.inertia = {1, 0, 2};
  SweepPoint b = a;
  b.r = 1.4;
  b.inertia = {2, 0, 1};
  s.points = {a, b};
  const auto changes = sign_change_report(s);
  ASSERT_EQ(changes.size(), 1u);
  EXPECT_TRUE(changes[0].anomalous);
}

// Exactly n - m zero eigenvalues at integer grid points m in [1, n-1].
TEST(EigenTrajectories, ExactZerosAtIntegers) {
  const auto c = make_point_config(std::vector<Rational>{Rational(1, 2), Rational(1), Rational(3, 2), Rational(5, 2),
                                                         Rational(4)});
  const auto s = eigen_trajectories(c, 0.0, 5.0, 11, kTol);
  for (const auto& p : s.points) {
    if (p.r >= 1 && p.r <= 4 && p.r == std::nearbyint(p.r)) {
      EXPECT_TRUE(p.integer_snapped);
      EXPECT_EQ(p.inertia.zero, 5 - static_cast<int>(p.r)) << "r=" << p.r;
    }
  }
}

TEST(TrajectoryJumps, SmoothSweepHasNone) {
  const auto s = eigen_trajectories(pts({1, 2, 3, 4}), 0.5, 3.5, 121, kTol);
  EXPECT_TRUE(trajectory_jumps(s).empty());
}

TEST(TrajectoryJumps, CoarseStepIsFlagged) {
  auto s = eigen_trajectories(pts({1, 2, 3, 4}), 0.5, 1.5, 41, kTol);
  const auto far = eigen_trajectories_at(pts({1, 2, 3, 4}), {4.5}, kTol);
  s.points.push_back(far.points[0]);
  const auto jumps = trajectory_jumps(s);
  ASSERT_FALSE(jumps.empty());
  EXPECT_EQ(jumps.back(), s.points.size() - 2);
}

TEST(SignedLog, OddMonotoneAndFixesOrigin) {
  const double tau = 1e-6;
  EXPECT_EQ(signed_log(0.0, tau), 0.0);
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-8, 8);
  for (int i = 0; i < 500; ++i) {
    const double a = std::copysign(std::pow(10.0, u(rng)), u(rng));
    const double b = std::copysign(std::pow(10.0, u(rng)), u(rng));
    EXPECT_EQ(signed_log(-a, tau), -signed_log(a, tau));
    if (a < b) {
      EXPECT_LT(signed_log(a, tau), signed_log(b, tau));
    }
  }
}

TEST(EmitFigure, HeaderAndRows) {
  const auto s = eigen_trajectories_at(pts({1, 2}), {0.5, 1.0, 1.5}, kTol);
  const auto t = emit_figure1(s, {Scaling::kNone, std::nullopt});
  EXPECT_EQ(t.header, (std::vector<std::string>{"r", "lambda_1", "lambda_2", "pos", "zero", "neg"}));
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_EQ(t.rows[1][3], "1");
  EXPECT_EQ(t.rows[1][4], "1");
  EXPECT_EQ(t.rows[1][5], "0");
  // Raw values round-trip.
  EXPECT_EQ(std::stod(t.rows[0][1]), s.points[0].eigenvalues[0].convert_to<double>());
  std::ostringstream os;
  t.write_csv(os);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "r,lambda_1,lambda_2,pos,zero,neg");
}

TEST(EmitFigure, SignedLogKeepsSigns) {
  const auto s = eigen_trajectories(pts({1, 2, 3}), 0.25, 3.75, 15, kTol);
  const auto t = emit_figure1(s);
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const auto& p = s.points[i];
    int pos = 0;
    int neg = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      const double y = std::stod(t.rows[i][1 + k]);
      if (y > 0) ++pos;
      if (y < 0) ++neg;
    }
    // Zero-classified eigenvalues may carry rounding noise with either sign.
    EXPECT_GE(pos, p.inertia.pos);
    EXPECT_GE(neg, p.inertia.neg);
  }
  EXPECT_THROW(emit_figure1(s, {Scaling::kSignedLog, -1.0}), InputError);
}

TEST(EmitFigure, DeterministicOutput) {
  const auto a = emit_figure1(eigen_trajectories(pts({1, 2, 4}), 0.1, 3.0, 12, kTol));
  const auto b = emit_figure1(eigen_trajectories(pts({1, 2, 4}), 0.1, 3.0, 12, kTol));
  EXPECT_EQ(a.rows, b.rows);
}

}  // namespace
}  // namespace loewner
