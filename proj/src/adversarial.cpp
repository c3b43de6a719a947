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

#include "advdialog/adversarial.hpp"

#include <cmath>
#include <stdexcept>

namespace advdialog {
namespace {

Scalar sigmoid(Scalar z) {
  // Split on sign to avoid exp overflow on large |z|.
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const Scalar e = std::exp(z);
  return e / (1.0 + e);
}

Scalar clamp_prob(Scalar p, Scalar clamp) {
  return std::min(1.0 - clamp, std::max(clamp, p));
}

}  // namespace

Discriminator make_discriminator(int state_dim, int num_actions, int hidden_dim,
                                 Rng& rng) {
  Discriminator disc;
  disc.net = make_net(state_dim + num_actions, hidden_dim, 1, rng);
  disc.opt = RmsPropState(disc.net);
  return disc;
}

Discriminator make_frozen_discriminator(int state_dim, int num_actions,
                                        int hidden_dim) {
  Discriminator disc;
  disc.net = make_zero_net(state_dim + num_actions, hidden_dim, 1);
  disc.opt = RmsPropState(disc.net);
  return disc;
}

Vector disc_input(const VectorRef& state, int action, int num_actions) {
  if (action < 0 || action >= num_actions) {
    throw std::invalid_argument("action index out of range");
  }
  Vector x = Vector::Zero(state.size() + num_actions);
  x.head(state.size()) = state;
  x[state.size() + action] = 1.0;
  return x;
}

Scalar disc_logit(const Discriminator& disc, const VectorRef& state, int action) {
  const int num_actions = disc.net.in_dim() - static_cast<int>(state.size());
  return net_forward(disc.net, disc_input(state, action, num_actions))[0];
}

Scalar disc_prob(const Discriminator& disc, const VectorRef& state, int action) {
  return clamp_prob(sigmoid(disc_logit(disc, state, action)), disc.clamp);
}

Scalar intrinsic_reward(const Discriminator& disc, const VectorRef& state, int action) {
  return -std::log(1.0 - disc_prob(disc, state, action));
}

Scalar gan_td_error(const DenseNet& gan_critic, const Transition& t, Scalar reward,
                    Scalar gamma) {
  return td_error(gan_critic, t, reward, gamma);
}

DiscUpdateStats disc_update(Discriminator& disc, const std::vector<Vector>& real_inputs,
                            const std::vector<Vector>& fake_inputs,
                            const RmsPropConfig& opt) {
  const size_t n = real_inputs.size() + fake_inputs.size();
  if (n == 0) throw std::invalid_argument("empty discriminator batch");

  DiscUpdateStats stats;
  NetGrads grads(disc.net);
  const Scalar inv_n = 1.0 / static_cast<Scalar>(n);
  Vector dlogit(1);

  for (int side = 0; side < 2; ++side) {
    const bool real = side == 0;
    const std::vector<Vector>& batch = real ? real_inputs : fake_inputs;
    const Scalar label = real ? 1.0 : 0.0;
    for (const Vector& x : batch) {
      const ForwardCache cache = net_forward_cache(disc.net, x);
      const Scalar p_raw = sigmoid(cache.output[0]);
      const Scalar p = clamp_prob(p_raw, disc.clamp);
      stats.loss += real ? -std::log(p) : -std::log(1.0 - p);
      if (real) {
        stats.mean_real_prob += p;
      } else {
        stats.mean_fake_prob += p;
      }
      if (p_raw == 0.5) {
        stats.accuracy += 0.5;
      } else if ((p_raw > 0.5) == real) {
        stats.accuracy += 1.0;
      }
      dlogit[0] = (p_raw - label) * inv_n;  // d(mean BCE)/dlogit
      net_backward(disc.net, cache, dlogit, grads);
    }
  }

  stats.loss *= inv_n;
  stats.accuracy *= inv_n;
  if (!real_inputs.empty()) stats.mean_real_prob /= real_inputs.size();
  if (!fake_inputs.empty()) stats.mean_fake_prob /= fake_inputs.size();

  rmsprop_step(disc.net, disc.opt, grads, opt);
  return stats;
}

AdvUpdateStats adversarial_update(Actor& actor, Critic& gan_critic,
                                  Discriminator& disc, const EpisodeRecord& episode,
                                  const DemoBuffer& demos, Rng& demo_rng,
                                  const AdversarialConfig& config,
                                  std::vector<std::string>* trace) {
  if (episode.transitions.empty()) throw std::invalid_argument("empty episode");
  if (!config.freeze_discriminator && demos.size() == 0) {
    throw std::invalid_argument("adversarial update requires demonstrations");
  }
  const int num_actions = actor.net.out_dim();

  AdvUpdateStats stats;

  // Demonstration minibatch, sampled with replacement, one pair per episode
  // transition so the discriminator sees both classes at equal weight.
  const int demo_batch = static_cast<int>(episode.transitions.size());
  std::vector<Vector> real_inputs;
  if (!config.freeze_discriminator) {
    real_inputs.reserve(demo_batch);
    for (int i = 0; i < demo_batch; ++i) {
      const int j = static_cast<int>(demo_rng.uniform_int(demos.size()));
      real_inputs.push_back(disc_input(demos.states[j], demos.actions[j], num_actions));
    }
    if (trace != nullptr) trace->push_back("demo_sample");
  }

  // Relabel the episode under the current discriminator.
  std::vector<Scalar> intrinsic;
  intrinsic.reserve(episode.transitions.size());
  for (const Transition& t : episode.transitions) {
    const Scalar r = intrinsic_reward(disc, t.state, t.action);
    intrinsic.push_back(r);
    stats.mean_intrinsic += r;
  }
  stats.mean_intrinsic /= static_cast<Scalar>(intrinsic.size());

  stats.gan = actor_critic_update(actor, gan_critic, episode.transitions, intrinsic,
                                  config.a2c, true, true);
  if (trace != nullptr) {
    trace->push_back("actor_gan");
    trace->push_back("gan_critic");
  }

  if (!config.freeze_discriminator) {
    std::vector<Vector> fake_inputs;
    fake_inputs.reserve(episode.transitions.size());
    for (const Transition& t : episode.transitions) {
      fake_inputs.push_back(disc_input(t.state, t.action, num_actions));
    }
    stats.disc = disc_update(disc, real_inputs, fake_inputs, config.disc_opt);
    if (trace != nullptr) trace->push_back("disc");
  }
  return stats;
}

DemoCollection collect_demonstrations(Environment& env, const DenseNet& actor,
                                      int num_episodes, int max_attempts) {
  if (num_episodes <= 0) throw std::invalid_argument("num_episodes must be positive");
  if (max_attempts < num_episodes) {
    throw std::invalid_argument("max_attempts below num_episodes");
  }
  DemoCollection out;
  const PolicyFn greedy = [&actor](const Vector& s) { return greedy_action(actor, s); };
  while (out.episodes < num_episodes) {
    if (out.attempts >= max_attempts) {
      throw std::runtime_error(
          "demonstration collection exhausted its attempt budget (" +
          std::to_string(out.attempts) + " dialogues, " +
          std::to_string(out.episodes) + " successes)");
    }
    EpisodeRecord record = run_episode(env, greedy);
    ++out.attempts;
    if (!record.success) continue;
    for (Transition& t : record.transitions) {
      out.demos.states.push_back(std::move(t.state));
      out.demos.actions.push_back(t.action);
    }
    ++out.episodes;
  }
  return out;
}

}  // namespace advdialog
