#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "bandit.hpp"
#include "uavmec/agents/ppo.hpp"
#include "uavmec/error.hpp"

using namespace uavmec;
using namespace uavmec::agents;

namespace {

PpoConfig bandit_config() {
  PpoConfig c;
  c.hidden = {32, 32};
  c.rollout_episodes = 32;
  c.episodes = 32 * 150;
  c.minibatch_size = 32;
  c.epochs = 5;
  c.max_episode_steps = 1;
  c.actor_lr = 3e-3;
  c.critic_lr = 3e-3;
  c.reward_scale = 1.0;
  return c;
}

}  // namespace

TEST(Gae, LambdaOneIsDiscountedReturnMinusValue) {
  const std::vector<double> r{1.0, 2.0, 3.0}, v{0.5, -1.0, 2.0, 7.0}, d{0, 0, 0};
  const auto adv = gae_advantages(r, v, d, 0.9, 1.0);
  EXPECT_NEAR(adv[2], 3.0 + 0.9 * 7.0 - 2.0, 1e-12);
  EXPECT_NEAR(adv[1], 2.0 + 0.9 * 3.0 + 0.81 * 7.0 - (-1.0), 1e-12);
  EXPECT_NEAR(adv[0], 1.0 + 0.9 * 2.0 + 0.81 * 3.0 + 0.729 * 7.0 - 0.5, 1e-12);
}

TEST(Gae, LambdaZeroIsOneStepTdError) {
  const std::vector<double> r{1.0, 2.0}, v{0.5, -1.0, 2.0}, d{0, 1};
  const auto adv = gae_advantages(r, v, d, 0.9, 0.0);
  EXPECT_NEAR(adv[0], 1.0 + 0.9 * -1.0 - 0.5, 1e-12);
  // Terminal step ignores the bootstrap value.
  EXPECT_NEAR(adv[1], 2.0 + 1.0, 1e-12);
}

TEST(Gae, ShapeMismatchThrows) {
  const std::vector<double> r{1.0}, v{0.0}, d{0};
  EXPECT_THROW(gae_advantages(r, v, d, 0.9, 0.9), Error);
}

TEST(GaussianLogProb, StandardNormal) {
  const std::vector<double> x{0.0}, m{0.0}, ls{0.0};
  EXPECT_NEAR(gaussian_log_prob(x, m, ls), -0.5 * std::log(2 * std::numbers::pi), 1e-14);
  const std::vector<double> x2{1.0, 3.0}, m2{0.0, 1.0}, ls2{0.0, std::log(2.0)};
  const double want = (-0.5 - 0.5 * std::log(2 * std::numbers::pi)) +
                      (-0.5 - std::log(2.0) - 0.5 * std::log(2 * std::numbers::pi));
  EXPECT_NEAR(gaussian_log_prob(x2, m2, ls2), want, 1e-14);
}

TEST(ClippedSurrogate, Branches) {
  // Ratio 1: unclipped.
  SurrogateTerm t = clipped_surrogate(0.0, 0.0, 2.0, 0.2);
  EXPECT_DOUBLE_EQ(t.value, 2.0);
  EXPECT_DOUBLE_EQ(t.d_log_prob, 2.0);
  // Ratio e^0.5 > 1.2 with positive advantage: clipped, no gradient.
  t = clipped_surrogate(0.5, 0.0, 1.0, 0.2);
  EXPECT_DOUBLE_EQ(t.value, 1.2);
  EXPECT_EQ(t.d_log_prob, 0.0);
  // Same ratio with negative advantage: the unclipped term is the minimum.
  t = clipped_surrogate(0.5, 0.0, -1.0, 0.2);
  EXPECT_DOUBLE_EQ(t.value, -std::exp(0.5));
  EXPECT_DOUBLE_EQ(t.d_log_prob, -std::exp(0.5));
  // Ratio e^-1 < 0.8 with negative advantage: clipped.
  t = clipped_surrogate(-1.0, 0.0, -1.0, 0.2);
  EXPECT_DOUBLE_EQ(t.value, -0.8);
  EXPECT_EQ(t.d_log_prob, 0.0);
}

TEST(ClippedSurrogate, DerivativeMatchesFiniteDifference) {
  const double h = 1e-7;
  for (double lp : {-0.1, 0.05, 0.15}) {
    for (double adv : {-1.5, 0.7}) {
      const SurrogateTerm t = clipped_surrogate(lp, 0.0, adv, 0.2);
      const double fd = (clipped_surrogate(lp + h, 0.0, adv, 0.2).value -
                         clipped_surrogate(lp - h, 0.0, adv, 0.2).value) / (2 * h);
      EXPECT_NEAR(t.d_log_prob, fd, 1e-6);
    }
  }
}

TEST(PpoTrain, SolvesOneDimensionalBandit) {
  const TrainResult r = ppo_train(bandit_factory(0.3), bandit_config(), 4);
  ASSERT_EQ(r.log.size(), bandit_config().episodes);
  EXPECT_NEAR(r.actor.forward(std::vector<double>{1.0})[0], 0.3, 0.1);
}

TEST(PpoTrain, DeterministicForSeed) {
  PpoConfig c = bandit_config();
  c.episodes = 32 * 10;
  const TrainResult a = ppo_train(bandit_factory(0.3), c, 9);
  const TrainResult b = ppo_train(bandit_factory(0.3), c, 9);
  for (std::size_t n = 0; n < a.log.size(); ++n) {
    EXPECT_EQ(a.log[n].episode_return, b.log[n].episode_return);
    EXPECT_EQ(a.log[n].critic1_loss, b.log[n].critic1_loss);
  }
  EXPECT_TRUE(std::equal(a.actor.params().begin(), a.actor.params().end(), b.actor.params().begin()));
}

TEST(PpoTrain, ReturnImprovesOnTwoDimensionalBandit) {
  PpoConfig c = bandit_config();
  c.episodes = 32 * 100;
  const TrainResult r = ppo_train(bandit_factory(-0.5, 2), c, 6);
  double first = 0.0;
  for (std::size_t n = 0; n < 320; ++n) first += r.log[n].episode_return;
  first /= 320.0;
  EXPECT_GT(converged_return(r.log), first);
  const auto a = r.actor.forward(std::vector<double>{1.0});
  EXPECT_NEAR(a[0], -0.5, 0.15);
  EXPECT_NEAR(a[1], -0.5, 0.15);
}

TEST(PpoConfig, Validation) {
  PpoConfig c;
  EXPECT_NO_THROW(validate(c));
  c.clip_ratio = 0.0;
  try {
    validate(c);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "ppo.clip_ratio");
  }
}
