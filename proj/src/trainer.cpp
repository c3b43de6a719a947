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

#include "advdialog/trainer.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

#include "advdialog/world.hpp"

namespace advdialog {
namespace {

const std::vector<std::string> kAgentNames = {"rule", "a2c", "adv-a2c",
                                              "adv-a2c-frozen"};

A2cConfig make_a2c_config(const TrainConfig& c) {
  A2cConfig a2c;
  a2c.gamma = c.gamma;
  a2c.actor_opt = {c.actor_lr, c.rmsprop_rho, c.rmsprop_eps};
  a2c.critic_opt = {c.critic_lr, c.rmsprop_rho, c.rmsprop_eps};
  a2c.entropy_coef = c.entropy_coef;
  a2c.max_grad_norm = c.max_grad_norm;
  return a2c;
}

AdversarialConfig make_adv_config(const TrainConfig& c, bool frozen) {
  AdversarialConfig adv;
  adv.a2c = make_a2c_config(c);
  adv.disc_opt = {c.disc_lr, c.rmsprop_rho, c.rmsprop_eps};
  adv.freeze_discriminator = frozen;
  return adv;
}

RewardConfig make_reward_config(const TrainConfig& c) {
  RewardConfig r;
  r.per_turn = c.per_turn_reward;
  r.success_bonus = c.success_bonus;
  r.failure_penalty = c.failure_penalty;
  r.gamma = c.gamma;
  r.max_turns = c.max_turns;
  return r;
}

}  // namespace

const std::string& agent_name(AgentKind kind) {
  return kAgentNames.at(static_cast<size_t>(kind));
}

std::optional<AgentKind> agent_from_name(const std::string& name) {
  for (size_t i = 0; i < kAgentNames.size(); ++i) {
    if (kAgentNames[i] == name) return static_cast<AgentKind>(i);
  }
  return std::nullopt;
}

World make_world(const TrainConfig& config) {
  return World(generate_world(config.world_seed, config.kb_rows, config.goal_count),
               make_reward_config(config));
}

int rule_policy(const World& world, const DialogState& dialog) {
  const Ontology& ontology = world.ontology;
  // Never gambles on a hedged constraint: rather than risk booking a showing
  // that may be wrong, it apologizes and hangs up on the spot.
  if (!dialog.user_unsure.empty()) {
    return world.actions.index_of({DialogueAct::kClosing, "", false});
  }
  // Answer outstanding questions first, lowest slot index first.
  for (const SlotSpec& spec : ontology.slots()) {
    if (dialog.user_requested.count(spec.name) &&
        !dialog.agent_informed.count(spec.name)) {
      return world.actions.index_of({DialogueAct::kInform, spec.name, false});
    }
  }
  if (!dialog.agent_informed.count("ticket")) {
    return world.actions.index_of({DialogueAct::kInform, "ticket", false});
  }
  return world.actions.index_of({DialogueAct::kInform, "", true});
}

PretrainResult pretrain_actor(Actor& actor, const World& world,
                              const TrainConfig& config, Rng rng) {
  PretrainResult result;
  const int n = config.pretrain_examples;

  // Teacher rollouts; every step is one labeled example.
  std::vector<Vector> states;
  std::vector<int> labels;
  states.reserve(n);
  labels.reserve(n);
  Rng env_rng = rng.derive("env");
  Environment env(world, env_rng, config.noise_prob);
  while (static_cast<int>(states.size()) < n) {
    env.reset();
    while (!env.terminal() && static_cast<int>(states.size()) < n) {
      const int action = rule_policy(world, env.dialog());
      states.push_back(env.state());
      labels.push_back(action);
      env.step(action);
    }
  }
  result.examples = n;

  std::vector<int> train_idx;
  std::vector<int> holdout_idx;
  for (int i = 0; i < n; ++i) {
    (i % 10 == 9 ? holdout_idx : train_idx).push_back(i);
  }

  const auto accuracy = [&](const std::vector<int>& idx) {
    if (idx.empty()) return 1.0;
    int hits = 0;
    for (int i : idx) {
      if (greedy_action(actor.net, states[i]) == labels[i]) ++hits;
    }
    return static_cast<Scalar>(hits) / static_cast<Scalar>(idx.size());
  };

  const RmsPropConfig opt{config.actor_lr, config.rmsprop_rho, config.rmsprop_eps};
  Rng shuffle_rng = rng.derive("shuffle");
  NetGrads grads(actor.net);

  for (int epoch = 1; epoch <= config.pretrain_max_epochs && !result.reached_target;
       ++epoch) {
    for (size_t i = 0; i + 1 < train_idx.size(); ++i) {
      const size_t j = i + shuffle_rng.uniform_int(train_idx.size() - i);
      std::swap(train_idx[i], train_idx[j]);
    }
    result.epochs = epoch;
    for (size_t start = 0; start < train_idx.size();
         start += config.pretrain_batch) {
      const size_t stop = std::min(train_idx.size(),
                                   start + static_cast<size_t>(config.pretrain_batch));
      grads.set_zero();
      const Scalar inv = 1.0 / static_cast<Scalar>(stop - start);
      for (size_t k = start; k < stop; ++k) {
        const int i = train_idx[k];
        const ForwardCache cache = net_forward_cache(actor.net, states[i]);
        Vector dlogits = softmax(cache.output) * inv;
        dlogits[labels[i]] -= inv;
        net_backward(actor.net, cache, dlogits, grads);
      }
      rmsprop_step(actor.net, actor.opt, grads, opt);
    }
    result.holdout_accuracy = accuracy(holdout_idx);
    if (result.holdout_accuracy >= config.pretrain_target_accuracy) {
      result.reached_target = true;
    }
  }
  result.train_accuracy = accuracy(train_idx);
  return result;
}

EvalResult evaluate_policy(const World& world, const PolicyFn& policy, int episodes,
                           Rng env_rng, Scalar noise_prob) {
  if (episodes <= 0) throw std::invalid_argument("episodes must be positive");
  Environment env(world, env_rng, noise_prob);
  EvalResult sum;
  for (int e = 0; e < episodes; ++e) {
    const EpisodeRecord record = run_episode(env, policy);
    sum.success_rate += record.success ? 1.0 : 0.0;
    sum.avg_reward += record.total_reward;
    sum.avg_turns += record.turns;
  }
  sum.success_rate /= episodes;
  sum.avg_reward /= episodes;
  sum.avg_turns /= episodes;
  return sum;
}

EvalResult evaluate_actor(const World& world, const DenseNet& actor, int episodes,
                          Rng env_rng, Scalar noise_prob) {
  return evaluate_policy(
      world, [&actor](const Vector& s) { return greedy_action(actor, s); }, episodes,
      env_rng, noise_prob);
}

EvalResult evaluate_rule(const World& world, int episodes, Rng env_rng,
                         Scalar noise_prob) {
  if (episodes <= 0) throw std::invalid_argument("episodes must be positive");
  // The rule reads the tracked dialogue, so the loop owns the environment
  // instead of going through evaluate_policy's feature-only interface.
  Environment env(world, env_rng, noise_prob);
  EvalResult sum;
  for (int e = 0; e < episodes; ++e) {
    const EpisodeRecord record = run_episode(
        env, [&](const Vector&) { return rule_policy(world, env.dialog()); });
    sum.success_rate += record.success ? 1.0 : 0.0;
    sum.avg_reward += record.total_reward;
    sum.avg_turns += record.turns;
  }
  sum.success_rate /= episodes;
  sum.avg_reward /= episodes;
  sum.avg_turns /= episodes;
  return sum;
}

TrainResult train_agent(const World& world, const TrainConfig& config, AgentKind kind,
                        std::uint64_t seed, std::vector<std::string>* trace,
                        const DemoBuffer* demos) {
  TrainResult result;
  result.kind = kind;
  result.seed = seed;

  Rng root(seed);
  const int dim = state_dim(world.ontology);
  const int num_actions = world.actions.size();
  const bool learned = kind != AgentKind::kRule;
  const bool adversarial =
      kind == AgentKind::kAdvA2c || kind == AgentKind::kAdvA2cFrozen;
  const bool frozen = kind == AgentKind::kAdvA2cFrozen;

  if (learned) {
    Rng init_actor = root.derive("init-actor");
    Rng init_critic = root.derive("init-critic");
    result.actor = make_actor(dim, config.hidden, num_actions, init_actor);
    result.critic = make_critic(dim, config.hidden, init_critic);
    result.pretrain = pretrain_actor(result.actor, world, config,
                                     root.derive("pretrain"));
    if (adversarial) {
      Rng init_gan = root.derive("init-gan-critic");
      result.gan_critic = make_critic(dim, config.hidden, init_gan);
      if (frozen) {
        result.disc = make_frozen_discriminator(dim, num_actions, config.hidden);
      } else {
        Rng init_disc = root.derive("init-disc");
        result.disc = make_discriminator(dim, num_actions, config.hidden, init_disc);
        result.disc.clamp = config.disc_clamp;
        if (demos != nullptr) {
          result.demos = *demos;
        } else {
          Environment demo_env(world, root.derive("demo"), config.noise_prob);
          result.demos =
              collect_demonstrations(demo_env, result.actor.net, config.demo_count,
                                     config.demo_attempt_factor * config.demo_count)
                  .demos;
        }
      }
    }
  }

  const auto snapshot = [&](int episodes_done, std::uint64_t snap_index) {
    const int n = episodes_done >= config.episodes ? config.final_eval_episodes
                                                   : config.eval_episodes;
    Rng eval_rng = root.derive("eval", snap_index);
    EvalResult eval;
    if (learned) {
      eval = evaluate_actor(world, result.actor.net, n, eval_rng, config.noise_prob);
    } else {
      eval = evaluate_rule(world, n, eval_rng, config.noise_prob);
    }
    MetricsRow row;
    row.episode = episodes_done;
    row.success_rate = 100.0 * eval.success_rate;  // CSV rows carry percent
    row.avg_reward = eval.avg_reward;
    row.avg_turns = eval.avg_turns;
    row.seed = seed;
    row.agent = agent_name(kind);
    result.curve.push_back(std::move(row));
  };

  snapshot(0, 0);

  if (!learned) {
    // Nothing to train; emit the remaining snapshots so curves align.
    for (int ep = config.eval_every; ep <= config.episodes; ep += config.eval_every) {
      snapshot(ep, static_cast<std::uint64_t>(ep / config.eval_every));
    }
    return result;
  }

  const A2cConfig a2c_config = make_a2c_config(config);
  const AdversarialConfig adv_config = make_adv_config(config, frozen);
  Environment env(world, root.derive("env"), config.noise_prob);
  Rng action_rng = root.derive("action");
  Rng demo_rng = root.derive("demo-batch");
  const PolicyFn sampling_policy = [&](const Vector& s) {
    return sample_action(result.actor.net, s, action_rng);
  };

  for (int ep = 1; ep <= config.episodes; ++ep) {
    if (trace != nullptr) trace->push_back("rollout");
    const EpisodeRecord record = run_episode(env, sampling_policy);
    a2c_update(result.actor, result.critic, record, a2c_config, trace);
    if (adversarial) {
      adversarial_update(result.actor, result.gan_critic, result.disc, record,
                         result.demos, demo_rng, adv_config, trace);
    }
    if (ep % config.eval_every == 0) {
      snapshot(ep, static_cast<std::uint64_t>(ep / config.eval_every));
    }
  }
  return result;
}

Checkpoint make_checkpoint(const TrainResult& result, const TrainConfig& config) {
  Checkpoint ckpt;
  ckpt.meta["agent"] = agent_name(result.kind);
  ckpt.meta["seed"] = std::to_string(result.seed);
  ckpt.meta["episodes"] = std::to_string(config.episodes);
  ckpt.meta["world_seed"] = std::to_string(config.world_seed);
  ckpt.meta["kb_rows"] = std::to_string(config.kb_rows);
  ckpt.meta["goal_count"] = std::to_string(config.goal_count);
  ckpt.meta["hidden"] = std::to_string(config.hidden);
  if (result.kind == AgentKind::kRule) return ckpt;

  ckpt.nets.emplace_back("actor", result.actor.net);
  ckpt.nets.emplace_back("critic", result.critic.net);
  if (result.kind == AgentKind::kAdvA2c || result.kind == AgentKind::kAdvA2cFrozen) {
    ckpt.nets.emplace_back("gan_critic", result.gan_critic.net);
    ckpt.nets.emplace_back("discriminator", result.disc.net);
    if (result.demos.size() > 0) ckpt.demos = result.demos;
  }
  return ckpt;
}

BenchmarkResult run_benchmark(const World& world, const TrainConfig& config,
                              const std::filesystem::path& out_dir, int jobs) {
  if (jobs <= 0) throw std::invalid_argument("jobs must be positive");
  const std::vector<AgentKind> agents = {AgentKind::kRule, AgentKind::kA2c,
                                         AgentKind::kAdvA2c};

  struct Task {
    AgentKind kind;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (AgentKind kind : agents) {
    for (std::uint64_t seed : config.seeds) tasks.push_back({kind, seed});
  }

  std::filesystem::create_directories(out_dir / "runs");
  std::vector<TrainResult> results(tasks.size());
  std::vector<std::string> errors(tasks.size());

  std::atomic<size_t> next{0};
  const auto worker = [&]() {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      // A failed cell is recorded and skipped; the others still run.
      try {
        results[i] = train_agent(world, config, tasks[i].kind, tasks[i].seed);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const size_t n_threads = std::min<size_t>(jobs, tasks.size());
    pool.reserve(n_threads);
    for (size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  // Persist per run, then aggregate in the fixed task order so the files do
  // not depend on scheduling.
  BenchmarkResult bench;
  for (size_t i = 0; i < tasks.size(); ++i) {
    const TrainResult& r = results[i];
    if (!errors[i].empty()) {
      bench.failures.push_back(agent_name(tasks[i].kind) + "-" +
                               std::to_string(tasks[i].seed) + ": " + errors[i]);
      continue;
    }
    const std::filesystem::path run_dir =
        out_dir / "runs" /
        (agent_name(r.kind) + "-" + std::to_string(r.seed));
    std::filesystem::create_directories(run_dir);
    save_metrics_csv(run_dir / "metrics.csv", r.curve);
    save_checkpoint(run_dir / "checkpoint.ckpt", make_checkpoint(r, config));

    bench.curves.insert(bench.curves.end(), r.curve.begin(), r.curve.end());
    SummaryRow row;
    row.agent = agent_name(r.kind);
    row.seed = r.seed;
    row.final_success_rate = r.curve.back().success_rate;
    row.final_avg_reward = r.curve.back().avg_reward;
    row.final_avg_turns = r.curve.back().avg_turns;
    row.auc = success_auc(r.curve);
    bench.summary.push_back(std::move(row));
  }
  save_metrics_csv(out_dir / "learning_curves.csv", bench.curves);
  save_summary_csv(out_dir / "summary.csv", bench.summary);
  return bench;
}

}  // namespace advdialog
