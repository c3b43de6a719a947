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

#include "advdialog/a2c.hpp"

#include <cmath>
#include <stdexcept>

namespace advdialog {

Actor make_actor(int state_dim, int hidden_dim, int num_actions, Rng& rng) {
  Actor actor;
  actor.net = make_net(state_dim, hidden_dim, num_actions, rng);
  actor.opt = RmsPropState(actor.net);
  return actor;
}

Critic make_critic(int state_dim, int hidden_dim, Rng& rng) {
  Critic critic;
  critic.net = make_net(state_dim, hidden_dim, 1, rng);
  critic.opt = RmsPropState(critic.net);
  return critic;
}

Vector action_distribution(const DenseNet& actor, const VectorRef& state) {
  return softmax(net_forward(actor, state));
}

int sample_action(const DenseNet& actor, const VectorRef& state, Rng& rng) {
  return rng.categorical(action_distribution(actor, state));
}

int greedy_action(const DenseNet& actor, const VectorRef& state) {
  const Vector logits = net_forward(actor, state);
  Eigen::Index best = 0;
  logits.maxCoeff(&best);
  return static_cast<int>(best);
}

Scalar state_value(const DenseNet& critic, const VectorRef& state) {
  if (critic.out_dim() != 1) throw std::invalid_argument("critic must have one output");
  return net_forward(critic, state)[0];
}

Scalar td_error(const DenseNet& critic, const Transition& t, Scalar reward,
                Scalar gamma) {
  Scalar target = reward;
  if (!t.terminal) target += gamma * state_value(critic, t.next_state);
  return target - state_value(critic, t.state);
}

Scalar policy_entropy(const VectorRef& probs) {
  Scalar h = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) h -= probs[i] * std::log(probs[i]);
  }
  return h;
}

UpdateStats actor_critic_update(Actor& actor, Critic& critic,
                                const std::vector<Transition>& transitions,
                                const std::vector<Scalar>& rewards,
                                const A2cConfig& config, bool update_actor,
                                bool update_critic) {
  if (transitions.empty()) throw std::invalid_argument("empty episode");
  if (transitions.size() != rewards.size()) {
    throw std::invalid_argument("rewards/transitions length mismatch");
  }

  UpdateStats stats;
  NetGrads actor_grads(actor.net);
  NetGrads critic_grads(critic.net);
  const int num_actions = actor.net.out_dim();

  for (size_t i = 0; i < transitions.size(); ++i) {
    const Transition& t = transitions[i];
    if (t.action < 0 || t.action >= num_actions) {
      throw std::invalid_argument("action index out of range");
    }

    // TD error from the critic as it stands before this episode's steps.
    const ForwardCache value_cache = net_forward_cache(critic.net, t.state);
    Scalar target = rewards[i];
    if (!t.terminal) target += config.gamma * state_value(critic.net, t.next_state);
    const Scalar delta = target - value_cache.output[0];
    stats.mean_td_error += delta;
    stats.critic_loss += 0.5 * delta * delta;

    const ForwardCache actor_cache = net_forward_cache(actor.net, t.state);
    const Vector logp = log_softmax(actor_cache.output);
    const Vector probs = logp.array().exp().matrix();
    const Scalar entropy = policy_entropy(probs);
    stats.mean_entropy += entropy;
    stats.actor_loss += -delta * logp[t.action] - config.entropy_coef * entropy;

    // d/dlogits of -delta log pi(a|s):  -delta (onehot(a) - pi)
    Vector dlogits = delta * probs;
    dlogits[t.action] -= delta;
    if (config.entropy_coef != 0.0) {
      // d/dlogits of -c H(pi):  c pi (log pi + H)
      dlogits +=
          (config.entropy_coef * probs.array() * (logp.array() + entropy)).matrix();
    }
    net_backward(actor.net, actor_cache, dlogits, actor_grads);

    // Semi-gradient of 0.5 delta^2: the target is held fixed.
    Vector dvalue(1);
    dvalue[0] = -delta;
    net_backward(critic.net, value_cache, dvalue, critic_grads);
  }

  const Scalar n = static_cast<Scalar>(transitions.size());
  stats.mean_td_error /= n;
  stats.mean_entropy /= n;
  stats.actor_grad_norm = grad_norm(actor_grads);
  stats.critic_grad_norm = grad_norm(critic_grads);

  if (update_actor) {
    clip_grad_norm(actor_grads, config.max_grad_norm);
    rmsprop_step(actor.net, actor.opt, actor_grads, config.actor_opt);
  }
  if (update_critic) {
    clip_grad_norm(critic_grads, config.max_grad_norm);
    rmsprop_step(critic.net, critic.opt, critic_grads, config.critic_opt);
  }
  return stats;
}

UpdateStats a2c_update(Actor& actor, Critic& critic, const EpisodeRecord& episode,
                       const A2cConfig& config, std::vector<std::string>* trace) {
  std::vector<Scalar> rewards;
  rewards.reserve(episode.transitions.size());
  for (const Transition& t : episode.transitions) rewards.push_back(t.reward);
  UpdateStats stats = actor_critic_update(actor, critic, episode.transitions, rewards,
                                          config, true, true);
  if (trace != nullptr) {
    trace->push_back("actor_extrinsic");
    trace->push_back("critic");
  }
  return stats;
}

}  // namespace advdialog
