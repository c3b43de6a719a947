// Copyright 2026 The AdvDialog Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Adversarial second critic. A discriminator learns to tell demonstration
// (state, action) pairs from the policy's own, and the policy is paid
// -log(1 - D(s,a)) for fooling it; a dedicated critic turns that signal
// into TD errors for the actor.

#ifndef ADVDIALOG_ADVERSARIAL_HPP_
#define ADVDIALOG_ADVERSARIAL_HPP_

#include <string>
#include <vector>

#include "advdialog/a2c.hpp"
#include "advdialog/checkpoint.hpp"
#include "advdialog/environment.hpp"
#include "advdialog/net.hpp"
#include "advdialog/types.hpp"

namespace advdialog {

struct Discriminator {
  DenseNet net;  // [state, onehot(action)] -> logit
  RmsPropState opt;
  Scalar clamp = 1e-6;  // keeps D away from {0,1}, bounding the reward
};

Discriminator make_discriminator(int state_dim, int num_actions, int hidden_dim,
                                 Rng& rng);
// All-zero discriminator: D = 0.5 on every input. Used to freeze the
// adversarial reward at a constant for ablations.
Discriminator make_frozen_discriminator(int state_dim, int num_actions,
                                        int hidden_dim);

Vector disc_input(const VectorRef& state, int action, int num_actions);
Scalar disc_logit(const Discriminator& disc, const VectorRef& state, int action);
// sigmoid(logit), clamped to [clamp, 1-clamp].
Scalar disc_prob(const Discriminator& disc, const VectorRef& state, int action);
// -log(1 - D(s,a)); the clamp bounds it to (0, -log(clamp)], about 13.8
// at the default clamp.
Scalar intrinsic_reward(const Discriminator& disc, const VectorRef& state, int action);

// TD error of the adversarial critic on the intrinsic reward stream.
Scalar gan_td_error(const DenseNet& gan_critic, const Transition& t, Scalar reward,
                    Scalar gamma);

struct DiscUpdateStats {
  Scalar loss = 0.0;            // mean BCE before the step
  Scalar accuracy = 0.0;        // before the step; exact 0.5 outputs count half
  Scalar mean_real_prob = 0.0;
  Scalar mean_fake_prob = 0.0;
};

// One RMSProp step on the mean binary cross-entropy: `real_inputs` (from
// demonstrations) labeled 1, `fake_inputs` (from the policy) labeled 0.
DiscUpdateStats disc_update(Discriminator& disc, const std::vector<Vector>& real_inputs,
                            const std::vector<Vector>& fake_inputs,
                            const RmsPropConfig& opt);

struct AdversarialConfig {
  A2cConfig a2c;            // gamma, actor step and adversarial-critic step
  RmsPropConfig disc_opt;   // lr 0.001
  bool freeze_discriminator = false;
};

struct AdvUpdateStats {
  UpdateStats gan;          // actor + adversarial critic phase
  DiscUpdateStats disc;     // zeros when the discriminator is frozen
  Scalar mean_intrinsic = 0.0;
};

// The adversarial half of a training step, in order: sample a demonstration
// minibatch matching the episode length, relabel the episode with intrinsic
// rewards under the current discriminator, step the actor and the adversarial
// critic on them, then step the discriminator (demos real, episode fake, the
// two sides weighted equally). With the discriminator frozen, only the
// relabel and the two net steps run and `demo_rng` is untouched. Appends
// "demo_sample", "actor_gan", "gan_critic", "disc" to `trace` for the phases
// that ran. Throws before any mutation when demos are required but empty.
AdvUpdateStats adversarial_update(Actor& actor, Critic& gan_critic,
                                  Discriminator& disc, const EpisodeRecord& episode,
                                  const DemoBuffer& demos, Rng& demo_rng,
                                  const AdversarialConfig& config,
                                  std::vector<std::string>* trace = nullptr);

struct DemoCollection {
  DemoBuffer demos;   // every (s,a) pair of the successful dialogues
  int episodes = 0;   // successful dialogues collected
  int attempts = 0;
};

// Rolls out the greedy policy until `num_episodes` dialogues succeed and
// returns their (state, action) pairs. Throws std::runtime_error when
// `max_attempts` dialogues are played without reaching the quota.
DemoCollection collect_demonstrations(Environment& env, const DenseNet& actor,
                                      int num_episodes, int max_attempts);

}  // namespace advdialog

#endif  // ADVDIALOG_ADVERSARIAL_HPP_
