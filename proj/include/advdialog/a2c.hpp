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
// Advantage actor-critic. The actor is a softmax policy over the action
// set; the critic's state value is the baseline. Per episode, TD errors
// delta = r + gamma V(s') - V(s) are computed with the current critic,
// gradients are summed over the episode's transitions, and each net takes
// one RMSProp step.

#ifndef ADVDIALOG_A2C_HPP_
#define ADVDIALOG_A2C_HPP_

#include <string>
#include <vector>

#include "advdialog/environment.hpp"
#include "advdialog/net.hpp"
#include "advdialog/types.hpp"

namespace advdialog {

struct Actor {
  DenseNet net;  // state -> action logits
  RmsPropState opt;
};

struct Critic {
  DenseNet net;  // state -> scalar value
  RmsPropState opt;
};

Actor make_actor(int state_dim, int hidden_dim, int num_actions, Rng& rng);
Critic make_critic(int state_dim, int hidden_dim, Rng& rng);

Vector action_distribution(const DenseNet& actor, const VectorRef& state);
int sample_action(const DenseNet& actor, const VectorRef& state, Rng& rng);
// Argmax action, lowest index on ties.
int greedy_action(const DenseNet& actor, const VectorRef& state);

Scalar state_value(const DenseNet& critic, const VectorRef& state);

// delta = reward + gamma V(next) [if not terminal] - V(state). `reward`
// substitutes for the transition's stored reward so the same transition can
// be scored against a different reward stream.
Scalar td_error(const DenseNet& critic, const Transition& t, Scalar reward,
                Scalar gamma);

Scalar policy_entropy(const VectorRef& probs);

struct A2cConfig {
  Scalar gamma = 0.9;
  RmsPropConfig actor_opt;            // lr 0.005
  RmsPropConfig critic_opt;           // lr 0.005
  Scalar entropy_coef = 0.0;
  Scalar max_grad_norm = kInfinity;   // off by default
};

struct UpdateStats {
  Scalar actor_loss = 0.0;   // -(sum delta log pi) - entropy_coef * sum H
  Scalar critic_loss = 0.0;  // sum 0.5 delta^2
  Scalar mean_td_error = 0.0;
  Scalar mean_entropy = 0.0;
  Scalar actor_grad_norm = 0.0;   // before clipping
  Scalar critic_grad_norm = 0.0;  // before clipping
};

// Shared update core: scores `transitions` against `rewards` (same length),
// then steps the actor along sum_t delta_t grad log pi(a_t|s_t) and the
// critic down the semi-gradient of sum_t 0.5 delta_t^2. Either step can be
// disabled. Throws on an empty episode or a length mismatch.
UpdateStats actor_critic_update(Actor& actor, Critic& critic,
                                const std::vector<Transition>& transitions,
                                const std::vector<Scalar>& rewards,
                                const A2cConfig& config, bool update_actor = true,
                                bool update_critic = true);

// Plain A2C step on the environment rewards. Appends "actor_extrinsic" and
// "critic" to `trace` when given; trainers use the trace to assert the
// per-episode operation order.
UpdateStats a2c_update(Actor& actor, Critic& critic, const EpisodeRecord& episode,
                       const A2cConfig& config,
                       std::vector<std::string>* trace = nullptr);

}  // namespace advdialog

#endif  // ADVDIALOG_A2C_HPP_
