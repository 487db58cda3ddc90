#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "zladder/functional_lab.hpp"

using namespace zladder;
using zladder::testing::medium_ladder;
using zladder::testing::small_ladder;

namespace {

const std::vector<double> kDecades{1e3, 1e4, 1e5};

}  // namespace

TEST(FermatRational, Examples) {
  EXPECT_EQ(fermat_rational(1, 1, 1, 3).str(), "1/2");
  const auto py = fermat_rational(3, 4, 5, 2);
  EXPECT_TRUE(py.is_one());
  EXPECT_EQ(py.str(), "1/1");
  const auto f = fermat_rational(3, 4, 5, 3);
  EXPECT_EQ(f.num(), 125);
  EXPECT_EQ(f.den(), 91);
  EXPECT_FALSE(f.is_one());
  EXPECT_DOUBLE_EQ(f.real_value(), 125.0 / 91.0);
  EXPECT_EQ(f.tuple_str(), "(3,4,5,3)");
}

TEST(FermatRational, ExactForHugeExponents) {
  // 10^200 / (2 * 10^200 - ... ) style values overflow a double but not the fraction
  const auto f = fermat_rational(BigInt(1000), BigInt(1000), BigInt(1000), 150);
  EXPECT_EQ(f.str(), "1/2");
  const auto g = fermat_rational(BigInt(6), BigInt(8), BigInt(10), 2);
  EXPECT_TRUE(g.is_one());
  const auto h = fermat_rational(BigInt(7), BigInt(11), BigInt(13), 97);
  EXPECT_FALSE(h.is_one());
  EXPECT_GT(h.real_value(), 1.0);
  EXPECT_TRUE(std::isfinite(h.real_value()));
}

TEST(FermatRational, Guards) {
  EXPECT_THROW(fermat_rational(0, 1, 1, 3), domain_error);
  EXPECT_THROW(fermat_rational(1, 1, 1, 1), domain_error);
}

TEST(WSubst, Examples) {
  EXPECT_NEAR(W_subst(std::sqrt(0.5), 1e3, 2, 0.5), 1e3, 1e-9);
  EXPECT_NEAR(W_subst(2.0, 10.0, 1, 1.0), 100.0, 1e-12);
  EXPECT_NEAR(std::log(W_subst(1.0, 50.0, 2, 0.5)) / std::log(50.0), 1.0 / std::sqrt(0.5), 1e-14);
  EXPECT_NEAR(std::sqrt(2.0), 1.41421, 1e-5);
}

TEST(WSubst, Guards) {
  EXPECT_THROW(W_subst(0.0, 10.0, 1, 1.0), domain_error);
  EXPECT_THROW(W_subst(1.0, 1.0, 1, 1.0), domain_error);
  EXPECT_THROW(W_subst(1.0, 10.0, 0, 1.0), domain_error);
  EXPECT_THROW(W_subst(1.0, 10.0, 1, 0.0), domain_error);
  EXPECT_THROW(W_subst(2.0, 1e3, 1, 1.0, 1e5), range_error);
  EXPECT_NO_THROW(W_subst(1.0, 1e3, 1, 1.0, 1e5));
  EXPECT_THROW(W_subst(1e3, 1e300, 1, 1.0), range_error);
}

TEST(Theorem1, TargetIdentityHoldsForAllTau) {
  for (double x : {0.5, 1.0, 2.0, 125.0 / 91.0})
    for (int k : {1, 2, 3})
      for (double A : {0.5, 1.0, 3.0})
        for (double tau : {5.0, 1e2, 1e4}) {
          if (x / std::pow(A, 1.0 / k) * std::log(tau) > 600) continue;
          EXPECT_NEAR(theorem1_target_identity(x, tau, k, A), std::pow(x, k), 1e-12 * std::pow(x, k));
        }
}

TEST(Theorem1, TauGridLandsOnHeights) {
  const auto taus = tau_grid_for_heights(2.0, 2, 0.5, kDecades);
  for (std::size_t i = 0; i < taus.size(); ++i) EXPECT_NEAR(W_subst(2.0, taus[i], 2, 0.5), kDecades[i], 1e-9 * kDecades[i]);
}

TEST(Extrapolate, RecoversExactModel) {
  const std::vector<double> grid{1e2, 1e3, 1e4, 1e5};
  std::vector<double> v;
  for (double g : grid) v.push_back(0.75 - 2.5 / std::log(g));
  const auto e = extrapolate(grid, v);
  EXPECT_NEAR(e.limit, 0.75, 1e-12);
  EXPECT_NEAR(e.slope, -2.5, 1e-11);
  EXPECT_LT(e.residual, 1e-13);
  const auto c = extrapolate(grid, {3.0, 3.0, 3.0, 3.0});
  EXPECT_NEAR(c.limit, 3.0, 1e-14);
  EXPECT_NEAR(c.slope, 0.0, 1e-13);
}

TEST(Extrapolate, Guards) {
  EXPECT_THROW(extrapolate({10.0, 100.0}, {1.0, 2.0}), domain_error);
  EXPECT_THROW(extrapolate({10.0, 10.0, 10.0}, {1.0, 2.0, 3.0}), domain_error);
  EXPECT_THROW(extrapolate({10.0, 100.0, 1e3}, {1.0, 2.0}), domain_error);
  EXPECT_THROW(extrapolate({0.5, 100.0, 1e3}, {1.0, 2.0, 3.0}), domain_error);
}

TEST(ConvergenceReport, RejectsUnorderedGrid) {
  ConvergenceReport r;
  r.name = "x";
  r.grid = {1e3, 1e2, 1e4};
  r.normalized = {1, 1, 1};
  EXPECT_THROW(finish_report(r), domain_error);
}

class Theorem1Trend : public ::testing::TestWithParam<std::tuple<double, int>> {};

TEST_P(Theorem1Trend, ApproachesXToTheK) {
  const auto [x, k] = GetParam();
  const auto mode = FourierMode::cosine(1, 0.5);
  const auto taus = tau_grid_for_heights(x, k, mode_norm(mode), kDecades);
  const auto rep = theorem1(medium_ladder(), x, k, mode, taus);
  EXPECT_EQ(rep.target, std::pow(x, k));
  for (std::size_t i = 0; i < taus.size(); ++i) EXPECT_NEAR(rep.heights[i], kDecades[i], 1e-6 * kDecades[i]);
  EXPECT_TRUE(rep.trend_ok);
  ASSERT_TRUE(rep.fit.has_value());
  EXPECT_LT(rep.margin, 0.25 * rep.target);
  EXPECT_LT(rep.margin, rep.last_deviation());
}

INSTANTIATE_TEST_SUITE_P(Grid, Theorem1Trend,
                         ::testing::Combine(::testing::Values(0.5, 1.0, 2.0), ::testing::Values(1, 2)));

TEST(Theorem1, Guards) {
  const auto mode = FourierMode::cosine(1, 0.5);
  EXPECT_THROW(theorem1(small_ladder(), 1.0, 0, mode, {10.0, 20.0, 30.0}), domain_error);
  EXPECT_THROW(theorem1(small_ladder(), 1.0, 1, mode, tau_grid_for_heights(1.0, 1, 0.5, {1e3, 1e5})), range_error);
}

TEST(FermatCondition, PythagoreanControlGivesCounterexampleSignature) {
  const auto mode = FourierMode::cosine(1, 0.5);
  const auto fr = fermat_rational(3, 4, 5, 2);
  const auto taus = tau_grid_for_heights(1.0, 1, mode_norm(mode), kDecades);
  const auto rep = fermat_zeta_condition(medium_ladder(), fr, 1, mode, taus);
  EXPECT_TRUE(rep.target_is_one);
  EXPECT_EQ(rep.report.target, 1.0);
  EXPECT_EQ(rep.verdict, FermatVerdict::counterexample_signature);
  EXPECT_EQ(to_string(rep.verdict), "counterexample signature");
}

TEST(FermatCondition, CubicTripleStaysAwayFromOne) {
  const auto mode = FourierMode::cosine(1, 0.5);
  const auto fr = fermat_rational(3, 4, 5, 3);
  const auto taus = tau_grid_for_heights(fr.real_value(), 1, mode_norm(mode), kDecades);
  const auto rep = fermat_zeta_condition(medium_ladder(), fr, 1, mode, taus);
  EXPECT_FALSE(rep.target_is_one);
  EXPECT_EQ(rep.rational, "125/91");
  EXPECT_NEAR(rep.report.target, 1.37363, 1e-5);
  EXPECT_GT(rep.distance_from_one, 0.2);
  EXPECT_EQ(rep.verdict, FermatVerdict::consistent_with_fermat_wiles);
}

TEST(FermatCondition, VerdictThresholds) {
  const auto mode = FourierMode::cosine(1, 0.5);
  const auto fr = fermat_rational(3, 4, 5, 3);
  const auto taus = tau_grid_for_heights(fr.real_value(), 1, mode_norm(mode), {1e3, 2e3, 4e3});
  const auto rep = fermat_zeta_condition(small_ladder(), fr, 1, mode, taus, 1, 10.0);
  EXPECT_EQ(rep.verdict, FermatVerdict::inconclusive);
  const auto q = fermat_zeta_condition(small_ladder(), fermat_rational(1, 1, 1, 3), 2, mode,
                                       tau_grid_for_heights(0.5, 2, 0.5, {1e3, 2e3, 4e3}));
  EXPECT_EQ(q.report.target, 0.25);
}

TEST(F1, DegenerateKZero) {
  const auto rep = functional_F1(small_ladder(), 0.5, 0, {1e3, 2e3, 5e3});
  for (double v : rep.normalized) EXPECT_EQ(v, 1.0);
  const auto r2 = functional_F1(small_ladder(), 0.7, 0, {1e3, 2e3, 5e3});
  for (double v : r2.normalized) EXPECT_NEAR(v, 1.4, 1e-15);
}

TEST(F1, TrendsToTwoL) {
  const auto rep = functional_F1(medium_ladder(), 0.5, 1, kDecades);
  EXPECT_EQ(rep.target, 1.0);
  EXPECT_TRUE(rep.trend_ok);
  EXPECT_LT(rep.margin, rep.last_deviation());
}

TEST(F1, FermatLength) {
  const double l = fermat_rational(3, 4, 5, 3).real_value();
  const auto rep = functional_F1(small_ladder(), l, 1, {1e3, 3e3, 1e4});
  EXPECT_NEAR(rep.target, 250.0 / 91.0, 1e-14);
  EXPECT_NEAR(rep.target, 2.7473, 1e-4);
  EXPECT_GT(std::abs(rep.extrapolated_limit() - 2.0), 0.2);
}

TEST(F2, DegenerateKZero) {
  for (auto kind : {F2Kind::cos2, F2Kind::sin2}) {
    const auto rep = functional_F2(small_ladder(), 0.5, 0, 2, {1e3, 2e3, 5e3}, kind);
    for (double v : rep.normalized) EXPECT_NEAR(v, 0.5, 1e-15);
  }
}

TEST(F2, TrendsToL) {
  const auto rep = functional_F2(medium_ladder(), 0.5, 1, 1, kDecades, F2Kind::cos2);
  EXPECT_EQ(rep.target, 0.5);
  EXPECT_TRUE(rep.trend_ok);
}

TEST(F2, CosSquaredPlusSinSquaredIsF1) {
  const std::vector<double> grid{1e3, 3e3, 1e4};
  for (int k : {1, 2}) {
    const auto f1 = functional_F1(small_ladder(), 0.5, k, grid);
    const auto c = functional_F2(small_ladder(), 0.5, k, 2, grid, F2Kind::cos2);
    const auto s = functional_F2(small_ladder(), 0.5, k, 2, grid, F2Kind::sin2);
    for (std::size_t i = 0; i < grid.size(); ++i)
      EXPECT_NEAR(c.normalized[i] + s.normalized[i], f1.normalized[i], 1e-8) << k << " " << grid[i];
  }
}

TEST(F2, CosSquaredMinusSinSquaredIsCosineDiff) {
  const std::vector<double> grid{1e3, 3e3, 1e4};
  const auto c = functional_F2(small_ladder(), 0.5, 1, 1, grid, F2Kind::cos2);
  const auto s = functional_F2(small_ladder(), 0.5, 1, 1, grid, F2Kind::sin2);
  for (std::size_t i = 0; i < grid.size(); ++i)
    EXPECT_NEAR(c.normalized[i] - s.normalized[i],
                cosine_diff_functional(small_ladder(), 1, 0.5, TransformSpec{grid[i], 1, 0.5}), 1e-8);
}

TEST(F2, PrintedConventionChangesFrequency) {
  const double l = 125.0 / 91.0;
  const auto a = functional_F2(small_ladder(), l, 0, 1, {1e3, 2e3, 3e3}, F2Kind::cos2);
  const auto b =
      functional_F2(small_ladder(), l, 0, 1, {1e3, 2e3, 3e3}, F2Kind::cos2, 1, FrequencyConvention::printed);
  EXPECT_NEAR(a.target, l, 1e-14);
  const double w = kPi * l;
  EXPECT_NEAR(b.target, l + std::sin(4 * w * l) / (4 * w), 1e-12);
  EXPECT_NE(a.target, b.target);
}

TEST(LnPower, RootIsKthRootOfRatio) {
  for (int k : {1, 2, 3}) {
    const auto e = ln_power_estimator(small_ladder(), 2e3, k);
    EXPECT_NEAR(e.ratio_root, std::pow(e.ratio_k, 1.0 / k), 1e-14);
  }
  EXPECT_THROW(ln_power_estimator(small_ladder(), 2e3, 0), domain_error);
}

TEST(LnPower, CalibrationAndTrend) {
  const auto e = ln_power_estimator(medium_ladder(), 1e5, 1);
  EXPECT_GE(e.ratio_root, 0.8);
  EXPECT_LE(e.ratio_root, 1.2);
  const auto rep = ln_power_report(medium_ladder(), 1, kDecades);
  EXPECT_TRUE(rep.trend_ok);
}

TEST(Quotient, Guards) {
  EXPECT_THROW(sigma_quotient(small_ladder(), 0.5, 1e3), domain_error);
  EXPECT_THROW(sigma_quotient(small_ladder(), 0.52, 1e3), domain_error);
  EXPECT_NEAR(zeta_em(2.0, 0.0).real(), kPi * kPi / 6.0, 1e-14);
}

TEST(Quotient, SigmaOneCalibrationAndTrend) {
  const auto rep = quotient_report(small_ladder(), 1.0, {1e3, 1e4});
  EXPECT_GE(rep.normalized[1], 0.7);
  EXPECT_LE(rep.normalized[1], 1.3);
  EXPECT_TRUE(rep.trend_ok);
}
