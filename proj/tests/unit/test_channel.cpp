#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "uavmec/channel.hpp"
#include "uavmec/error.hpp"

using namespace uavmec;

TEST(LinkDistance, Examples) {
  EXPECT_EQ(link_distance({1, 2, 3}, {1, 2, 3}), 0.0);
  EXPECT_DOUBLE_EQ(link_distance({0, 0, 0}, {0, 0, 100}), 100.0);
  EXPECT_DOUBLE_EQ(link_distance({3, 4, 0}, {0, 0, 0}), 5.0);
}

TEST(DbmToWatts, MinusHundredDbm) {
  EXPECT_NEAR(dbm_to_watts(-100.0), 1e-13, 1e-25);
  EXPECT_NEAR(dbm_to_watts(30.0), 1.0, 1e-12);
}

TEST(PathGain, PowerLaw) {
  LinkParams p;
  p.beta0 = 1e-5;
  p.path_loss_exponent = 2.0;
  EXPECT_DOUBLE_EQ(path_gain(p, 10.0), 1e-7);
  EXPECT_NEAR(path_gain(p, 20.0) / path_gain(p, 10.0), 0.25, 1e-15);
  p.path_loss_exponent = 2.2;
  EXPECT_NEAR(path_gain(p, 30.0) / path_gain(p, 10.0), std::pow(3.0, -2.2), 1e-14);
}

TEST(PathGain, NonPositiveDistanceThrows) {
  const LinkParams p;
  EXPECT_THROW(path_gain(p, 0.0), Error);
  EXPECT_THROW(path_gain(p, -1.0), Error);
}

TEST(SmallScale, PureLosIsDeterministic) {
  LinkParams p;
  p.rician_k = std::numeric_limits<double>::infinity();
  Rng rng(1);
  const FadingSample s = sample_gain_sq(p, 50.0, rng);
  EXPECT_DOUBLE_EQ(s.gain_sq, path_gain(p, 50.0));
}

TEST(SmallScale, UnitMeanPower) {
  for (double k : {0.0, 1.0, 10.0}) {
    Rng rng(5);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      const double g = small_scale_power(k, rng);
      ASSERT_GE(g, 0.0);
      sum += g;
    }
    EXPECT_NEAR(sum / n, 1.0, 0.02) << "K=" << k;
  }
}

TEST(SmallScale, EmpiricalMeanMatchesPathGain) {
  LinkParams p;
  Rng rng(17);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += sample_gain_sq(p, 120.0, rng).gain_sq;
  EXPECT_NEAR(sum / n / path_gain(p, 120.0), 1.0, 0.02);
}

TEST(SmallScale, DeterministicUnderSeed) {
  Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(small_scale_power(3.0, a), small_scale_power(3.0, b));
}

TEST(Rate, Examples) {
  EXPECT_EQ(rate(10e6, 0.0, 1.0, 1e-13), 0.0);
  EXPECT_DOUBLE_EQ(rate(10e6, 1.0, 1e-13, 1e-13), 10e6);
  EXPECT_DOUBLE_EQ(rate(1.0, 3.0, 1.0, 1.0), 2.0);
}

TEST(Rate, MonotoneInPowerAndGain) {
  double prev = 0.0;
  for (double p = 0.01; p < 1.0; p += 0.01) {
    const double r = rate(15e6, p, 1e-9, 1e-13);
    EXPECT_GT(r, prev);
    prev = r;
  }
  prev = 0.0;
  for (double g = 1e-12; g < 1e-8; g *= 1.5) {
    const double r = rate(15e6, 0.5, g, 1e-13);
    EXPECT_GT(r, prev);
    prev = r;
  }
}

TEST(ChannelParams, Validation) {
  ChannelParams p;
  EXPECT_NO_THROW(validate(p));
  p.uav.path_loss_exponent = 1.5;
  try {
    validate(p);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "channel.uav.path_loss_exponent");
  }
  p = ChannelParams{};
  p.noise_power_w = 0.0;
  EXPECT_THROW(validate(p), ConfigError);
}
