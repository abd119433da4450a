#include <cmath>
#include <numbers>

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "oracles.hpp"
#include "uavvlc/channel.hpp"

using namespace uavvlc;

namespace {

constexpr double kNadirGain = 1.4920775914865188e-06;  // 2e-4 * 3 / (128 pi)

VlcParamsd table_params() { return VlcParamsd{}; }

}  // namespace

TEST(LambertianOrder, KnownAngles) {
  EXPECT_EQ(lambertian_order(deg_to_rad(60.0)), 1.0);
  EXPECT_EQ(lambertian_order(deg_to_rad(45.0)), 2.0);
  // -ln 2 / ln cos 30deg, 30 significant digits from an arbitrary-precision evaluation.
  EXPECT_NEAR(lambertian_order(deg_to_rad(30.0)), 4.81884167930641800916, 1e-13);
}

TEST(LambertianOrder, RejectsDegenerateAngles) {
  EXPECT_THROW(lambertian_order(0.0), std::domain_error);
  EXPECT_THROW(lambertian_order(std::numbers::pi / 2), std::domain_error);
  EXPECT_THROW(lambertian_order(-0.1), std::domain_error);
}

TEST(ConcentratorGain, InsideAndOutsideFov) {
  VlcParamsd p;
  EXPECT_NEAR(concentrator_gain(deg_to_rad(30.0), p), 3.0, 1e-14);
  EXPECT_EQ(concentrator_gain(p.fov_semi_angle + 0.01, p), 0.0);
  p.refractive_index = 1.0;
  p.fov_semi_angle = std::numbers::pi / 2;
  EXPECT_DOUBLE_EQ(concentrator_gain(0.0, p), 1.0);
}

TEST(ChannelGain, NadirMatchesHandArithmetic) {
  const auto p = table_params();
  const double h = channel_gain(Point3d(0, 0, 8), Point2d(0, 0), p);
  EXPECT_LE(std::abs(h - kNadirGain) / kNadirGain, 1e-10);
}

TEST(ChannelGain, ZeroJustOutsideFov) {
  const auto p = table_params();
  const double edge = p.uav_height * std::tan(p.fov_semi_angle);
  EXPECT_EQ(channel_gain_at(edge * (1 + 1e-9), p), 0.0);
  EXPECT_GT(channel_gain_at(edge * (1 - 1e-9), p), 0.0);
}

TEST(ChannelGain, NadirGainFallsAsInverseSquare) {
  VlcParamsd p;
  const double h1 = channel_gain(Point3d(0, 0, 4), Point2d(0, 0), p);
  const double h2 = channel_gain(Point3d(0, 0, 8), Point2d(0, 0), p);
  EXPECT_NEAR(h2 / h1, 0.25, 1e-15);
}

TEST(ChannelGain, FixedHeightScalesAsDistancePower) {
  // With cos = z / d at a fixed height, h * d^(m+3) is the same for every user.
  Rng rng(11);
  VlcParamsd p;
  p.tx_semi_angle = deg_to_rad(40.0);
  p.fov_semi_angle = deg_to_rad(85.0);
  const double e = p.distance_exponent();
  const double reference = channel_gain_at(0.0, p) * std::pow(p.uav_height, e);
  for (int i = 0; i < 100; ++i) {
    const double r = rng.uniform(0.0, 0.99) * p.fov_ground_radius();
    const double d = std::hypot(r, p.uav_height);
    EXPECT_TRUE(oracle::near_rel(channel_gain_at(r, p) * std::pow(d, e), reference, 1e-12));
  }
}

TEST(ChannelGain, AlongARayFallsAsInverseSquare) {
  Rng rng(12);
  VlcParamsd p;
  p.fov_semi_angle = std::numbers::pi / 2 - 0.01;
  // The direction angles stay fixed along a ray from the LED; only d changes.
  const Point3d dir = Point3d(0.3, -0.2, -1.0).normalized();
  const double reference = channel_gain(Point3d(0, 0, -dir.z()), Point2d(dir.x(), dir.y()), p);
  for (int i = 0; i < 100; ++i) {
    const double t = rng.uniform(1.0, 50.0);
    const double h = channel_gain(Point3d(0, 0, -dir.z() * t), Point2d(dir.x() * t, dir.y() * t), p);
    EXPECT_TRUE(oracle::near_rel(h * t * t, reference, 1e-12));
  }
}

TEST(ChannelGain, InvariantUnderRotationAndTranslation) {
  Rng rng(5);
  const auto p = table_params();
  for (int i = 0; i < 100; ++i) {
    const Point2d uav_xy(rng.uniform(-5, 5), rng.uniform(-5, 5));
    const Point2d user(rng.uniform(-5, 5), rng.uniform(-5, 5));
    const double h = channel_gain(Point3d(uav_xy.x(), uav_xy.y(), 8), user, p);
    const Eigen::Rotation2Dd rot(rng.uniform(0, 2 * std::numbers::pi));
    const Point2d shift(rng.uniform(-100, 100), rng.uniform(-100, 100));
    const Point2d a = rot * uav_xy + shift;
    const Point2d b = rot * user + shift;
    EXPECT_TRUE(oracle::near_rel(channel_gain(Point3d(a.x(), a.y(), 8), b, p), h, 1e-10));
  }
}

TEST(Capacity, SpecialValues) {
  const auto p = table_params();
  EXPECT_EQ(capacity_lower_bound(0.0, 1.0, p), 0.0);
  // xi P h / sigma = sqrt(2 pi / e) makes the log argument exactly 2.
  const double power = std::sqrt(2 * std::numbers::pi / std::numbers::e) * p.noise_std;
  EXPECT_NEAR(capacity_lower_bound(power, 1.0, p), 0.5, 1e-15);
}

TEST(Capacity, StrictlyIncreasingInPower) {
  const auto p = table_params();
  double prev = -1.0;
  for (double power = 0.0; power < 1e-3; power += 1e-5) {
    const double c = capacity_lower_bound(power, kNadirGain, p);
    EXPECT_GT(c, prev);
    prev = c;
  }
}

TEST(MinPowerRate, RoundTripsThroughCapacity) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    VlcParamsd p;
    p.noise_std = std::pow(10.0, rng.uniform(-12, -1));
    p.illum_factor = rng.uniform(0.1, 5);
    Requirementsd q;
    q.rate_threshold = rng.uniform(0.05, 6);
    const double h = std::pow(10.0, rng.uniform(-8, -3));
    const double power = *min_power_rate(h, q, p);
    EXPECT_TRUE(oracle::near_rel(capacity_lower_bound(power, h, p), q.rate_threshold, 1e-12));
  }
}

TEST(MinPowerRate, Examples) {
  const auto p = table_params();
  Requirementsd q;
  q.rate_threshold = 0.0;
  q.illum_threshold = 1.0;
  EXPECT_EQ(*min_power_rate(kNadirGain, q, p), 0.0);

  q.rate_threshold = 2.0;
  // 1e-10 sqrt((2 pi / e) 15) / h, evaluated at 30 digits.
  EXPECT_TRUE(oracle::near_rel(*min_power_rate(kNadirGain, q, p), 3.94636194651339794e-4, 1e-12));

  const double c = 1.3;
  Requirementsd q2 = q;
  q.rate_threshold = c;
  q2.rate_threshold = 2 * c;
  const double ratio = *min_power_rate(0.5, q2, p) / *min_power_rate(0.5, q, p);
  EXPECT_NEAR(ratio, std::sqrt((std::pow(2.0, 4 * c) - 1) / (std::pow(2.0, 2 * c) - 1)), 1e-12);
}

TEST(MinPowerIllum, Examples) {
  VlcParamsd p;
  Requirementsd q;
  q.illum_threshold = 0.0;
  EXPECT_EQ(*min_power_illum(0.5, q, p), 0.0);
  q.illum_threshold = 1.0;
  EXPECT_DOUBLE_EQ(*min_power_illum(0.5, q, p), 2.0);
  EXPECT_DOUBLE_EQ(*min_power_illum(0.25, q, p), 4.0);
}

TEST(MinPower, OutOfFovIsInfeasible) {
  const auto p = table_params();
  Requirementsd q;
  q.illum_threshold = 0.1;
  const double h = channel_gain_at(20.0, p);
  EXPECT_EQ(h, 0.0);
  EXPECT_FALSE(min_power_rate(h, q, p).has_value());
  EXPECT_FALSE(min_power_illum(h, q, p).has_value());
  const auto coeffs = ConstraintCoefficientsd::from(p, q);
  EXPECT_FALSE(min_power_for_radius(20.0, coeffs, p).has_value());
}

TEST(MinPowerForRadius, Examples) {
  const auto p = table_params();
  Requirementsd q;
  q.illum_threshold = 0.3;
  const auto c = ConstraintCoefficientsd::from(p, q);
  EXPECT_EQ(c.exponent, 4.0);
  EXPECT_TRUE(oracle::near_rel(*min_power_for_radius(0.0, c, p), c.prefactor() * std::pow(8.0, 4), 1e-14));
  EXPECT_TRUE(oracle::near_rel(*min_power_for_radius(6.0, c, p), c.prefactor() * 1e4, 1e-14));
  EXPECT_THROW(min_power_for_radius(-1.0, c, p), std::domain_error);
}

TEST(MinPowerForRadius, StrictlyIncreasing) {
  const auto p = table_params();
  const auto c = ConstraintCoefficientsd::from(p, Requirementsd{});
  double prev = 0.0;
  for (double r = 0.0; r < p.fov_ground_radius(); r += 0.25) {
    const double v = *min_power_for_radius(r, c, p);
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(MinPowerForRadius, MatchesPerUserMaximum) {
  Rng rng(21);
  for (int i = 0; i < 1000; ++i) {
    VlcParamsd p;
    p.tx_semi_angle = deg_to_rad(rng.uniform(10, 80));
    p.fov_semi_angle = deg_to_rad(rng.uniform(20, 89));
    p.refractive_index = rng.uniform(1, 2);
    p.detector_area = rng.uniform(1e-5, 1e-3);
    p.noise_std = std::pow(10.0, rng.uniform(-12, -1));
    p.illum_factor = rng.uniform(0.2, 3);
    p.uav_height = rng.uniform(2, 20);
    Requirementsd q;
    q.rate_threshold = rng.uniform(0, 4);
    q.illum_threshold = rng.uniform(0, 1);
    const double r = rng.uniform01() * 0.999 * p.fov_ground_radius();
    const auto c = ConstraintCoefficientsd::from(p, q);
    const double h = channel_gain_at(r, p);
    const double direct = std::max(*min_power_rate(h, q, p), *min_power_illum(h, q, p));
    EXPECT_TRUE(oracle::near_rel(*min_power_for_radius(r, c, p), direct, 1e-12)) << i;
    EXPECT_TRUE(oracle::near_rel(direct, oracle::per_user_power(r, p, q), 1e-12)) << i;
  }
}

TEST(Params, ValidationNamesField) {
  VlcParamsd p;
  p.detector_area = 0;
  try {
    p.validate();
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("detector_area"), std::string::npos);
  }
  Requirementsd q;
  q.rate_threshold = 0;
  q.illum_threshold = 0;
  EXPECT_THROW(q.validate(), std::invalid_argument);
}
