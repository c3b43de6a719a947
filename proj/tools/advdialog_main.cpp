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
// advdialog: world generation, training, evaluation, demonstration
// collection, the multi-seed benchmark, and an interactive chat inspector
// where a developer plays the user against an agent.
//
// Exit codes: 0 ok, 1 runtime failure, 2 usage or config error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "advdialog/a2c.hpp"
#include "advdialog/adversarial.hpp"
#include "advdialog/checkpoint.hpp"
#include "advdialog/config.hpp"
#include "advdialog/environment.hpp"
#include "advdialog/metrics.hpp"
#include "advdialog/ontology.hpp"
#include "advdialog/simulator.hpp"
#include "advdialog/state.hpp"
#include "advdialog/trainer.hpp"
#include "advdialog/types.hpp"
#include "advdialog/world.hpp"

namespace ad = advdialog;
namespace fs = std::filesystem;

namespace {

// --out wins, then ADVDIALOG_RUN_DIR, then the working directory.
fs::path output_root(const std::string& out_flag) {
  if (!out_flag.empty()) return out_flag;
  const char* dir = std::getenv("ADVDIALOG_RUN_DIR");
  if (dir != nullptr && *dir != '\0') return dir;
  return ".";
}

ad::TrainConfig load_config(const std::string& path) {
  if (path.empty()) return ad::TrainConfig{};
  return ad::load_train_config(path);
}

std::string f4(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", x);
  return buf;
}

// Evaluation and chat rebuild the training world from checkpoint metadata,
// so a checkpoint is meaningful on its own.
void apply_world_meta(const ad::Checkpoint& ckpt, ad::TrainConfig& config) {
  const auto find = [&](const char* key) -> const std::string* {
    const auto it = ckpt.meta.find(key);
    return it == ckpt.meta.end() ? nullptr : &it->second;
  };
  if (const std::string* v = find("world_seed")) config.world_seed = std::stoull(*v);
  if (const std::string* v = find("kb_rows")) config.kb_rows = std::stoi(*v);
  if (const std::string* v = find("goal_count")) config.goal_count = std::stoi(*v);
}

int run_gen_world(const std::string& config_path, const std::uint64_t* seed,
                  const std::string& out) {
  ad::TrainConfig config = load_config(config_path);
  if (seed != nullptr) config.world_seed = *seed;
  const ad::WorldData data =
      ad::generate_world(config.world_seed, config.kb_rows, config.goal_count);
  const fs::path dir = output_root(out);
  fs::create_directories(dir);
  ad::save_ontology(dir / "ontology.txt", data.ontology);
  ad::save_kb(dir / "kb.txt", data.kb);
  ad::save_goals(dir / "goals.txt", data.goals, data.ontology);
  std::cout << "wrote ontology.txt (" << data.ontology.num_slots() << " slots), kb.txt ("
            << data.kb.num_rows() << " rows), goals.txt (" << data.goals.size()
            << " goals) under " << dir.string() << "\n";
  return 0;
}

int run_train(const std::string& config_path, const std::string& agent,
              std::uint64_t seed, int episodes_override, const std::string& out,
              const std::string& demos_path) {
  ad::TrainConfig config = load_config(config_path);
  if (episodes_override >= 0) {
    config.episodes = episodes_override;
    ad::validate(config);
  }
  const ad::AgentKind kind = *ad::agent_from_name(agent);
  const ad::World world = ad::make_world(config);

  ad::DemoBuffer demo_buffer;
  const ad::DemoBuffer* demos = nullptr;
  if (!demos_path.empty()) {
    const ad::Checkpoint demo_ckpt = ad::load_checkpoint(demos_path);
    if (!demo_ckpt.demos.has_value()) {
      throw ad::ConfigError(demos_path + " has no demos section");
    }
    demo_buffer = *demo_ckpt.demos;
    demos = &demo_buffer;
  }

  const ad::TrainResult result =
      ad::train_agent(world, config, kind, seed, nullptr, demos);
  if (kind != ad::AgentKind::kRule && !result.pretrain.reached_target) {
    std::cerr << "warning: warm start stopped at holdout accuracy "
              << f4(result.pretrain.holdout_accuracy) << "\n";
  }

  const fs::path run_dir =
      output_root(out) / "runs" / (agent + "-" + std::to_string(seed));
  fs::create_directories(run_dir);
  ad::save_metrics_csv(run_dir / "metrics.csv", result.curve);
  ad::save_checkpoint(run_dir / "checkpoint.ckpt", ad::make_checkpoint(result, config));

  const ad::MetricsRow& last = result.curve.back();
  std::cout << "agent=" << agent << " seed=" << seed << " episodes=" << config.episodes
            << " success_rate=" << f4(last.success_rate) << " avg_reward="
            << f4(last.avg_reward) << " avg_turns=" << f4(last.avg_turns) << "\n";
  std::cout << "wrote " << run_dir.string() << "/{metrics.csv,checkpoint.ckpt}\n";
  return 0;
}

int run_evaluate(const std::string& config_path, const std::string& ckpt_path,
                 const std::string& agent, std::uint64_t seed, int episodes,
                 const std::string& out) {
  ad::TrainConfig config = load_config(config_path);
  std::string label = agent;
  std::optional<ad::Checkpoint> ckpt;
  if (!ckpt_path.empty()) {
    ckpt = ad::load_checkpoint(ckpt_path);
    apply_world_meta(*ckpt, config);
    if (label.empty()) {
      const auto it = ckpt->meta.find("agent");
      label = it == ckpt->meta.end() ? "checkpoint" : it->second;
    }
  } else if (label != "rule") {
    throw ad::ConfigError("evaluate needs --ckpt, or --agent rule");
  }
  if (episodes <= 0) episodes = config.final_eval_episodes;

  const ad::World world = ad::make_world(config);
  const bool use_actor = ckpt.has_value() && ckpt->has_net("actor");
  const ad::EvalResult r =
      use_actor ? ad::evaluate_actor(world, ckpt->net("actor"), episodes,
                                     ad::Rng(seed), config.noise_prob)
                : ad::evaluate_rule(world, episodes, ad::Rng(seed), config.noise_prob);

  ad::MetricsRow row;
  row.episode = 0;
  if (ckpt.has_value()) {
    const auto it = ckpt->meta.find("episodes");
    if (it != ckpt->meta.end()) row.episode = std::stoi(it->second);
  }
  row.success_rate = 100.0 * r.success_rate;
  row.avg_reward = r.avg_reward;
  row.avg_turns = r.avg_turns;
  row.seed = seed;
  row.agent = label;

  std::cout << "agent=" << label << " episodes=" << episodes << " success_rate="
            << f4(row.success_rate) << " avg_reward=" << f4(row.avg_reward)
            << " avg_turns=" << f4(row.avg_turns) << "\n";
  if (!out.empty()) {
    const fs::path dir = out;
    fs::create_directories(dir);
    ad::save_metrics_csv(dir / "eval.csv", {row});
    std::cout << "wrote " << (dir / "eval.csv").string() << "\n";
  }
  return 0;
}

int run_collect_demos(const std::string& config_path, const std::string& ckpt_path,
                      std::uint64_t seed, int count, const std::string& out) {
  ad::TrainConfig config = load_config(config_path);
  const ad::Checkpoint src = ad::load_checkpoint(ckpt_path);
  apply_world_meta(src, config);
  if (count <= 0) count = config.demo_count;

  const ad::World world = ad::make_world(config);
  ad::Environment env(world, ad::Rng(seed).derive("demo"), config.noise_prob);
  const ad::DemoCollection got = ad::collect_demonstrations(
      env, src.net("actor"), count, config.demo_attempt_factor * count);

  ad::Checkpoint demo_ckpt;
  demo_ckpt.meta["demo_count"] = std::to_string(got.episodes);
  const auto it = src.meta.find("agent");
  if (it != src.meta.end()) demo_ckpt.meta["source_agent"] = it->second;
  demo_ckpt.demos = got.demos;

  const fs::path path =
      out.empty() ? output_root("") / "demos.ckpt" : fs::path(out);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  ad::save_checkpoint(path, demo_ckpt);
  std::cout << "collected " << got.episodes << " successful dialogues in "
            << got.attempts << " attempts (" << got.demos.size() << " pairs), wrote "
            << path.string() << "\n";
  return 0;
}

void print_summary_table(const std::vector<ad::SummaryRow>& summary) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const ad::SummaryRow*>> groups;
  for (const ad::SummaryRow& row : summary) {
    if (groups.find(row.agent) == groups.end()) order.push_back(row.agent);
    groups[row.agent].push_back(&row);
  }
  const auto stats = [](const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= xs.size();
    double var = 0.0;
    if (xs.size() > 1) {
      for (double x : xs) var += (x - mean) * (x - mean);
      var /= xs.size() - 1;
    }
    return std::pair<double, double>(mean, std::sqrt(var));
  };
  std::printf("%-16s %5s %18s %18s %18s %18s\n", "agent", "seeds", "success_rate",
              "avg_reward", "avg_turns", "auc");
  for (const std::string& agent : order) {
    std::vector<double> succ, rew, turns, auc;
    for (const ad::SummaryRow* row : groups[agent]) {
      succ.push_back(row->final_success_rate);
      rew.push_back(row->final_avg_reward);
      turns.push_back(row->final_avg_turns);
      auc.push_back(row->auc);
    }
    const auto [ms, ss] = stats(succ);
    const auto [mr, sr] = stats(rew);
    const auto [mt, st] = stats(turns);
    const auto [ma, sa] = stats(auc);
    std::printf("%-16s %5zu %9.2f +- %5.2f %9.2f +- %5.2f %9.2f +- %5.2f %9.2f +- %5.2f\n",
                agent.c_str(), succ.size(), ms, ss, mr, sr, mt, st, ma, sa);
  }
}

int run_benchmark_cmd(const std::string& config_path, const std::string& out,
                      int jobs) {
  const ad::TrainConfig config = load_config(config_path);
  const ad::World world = ad::make_world(config);
  const fs::path dir = out.empty() ? output_root("") / "benchmark" : fs::path(out);
  const ad::BenchmarkResult bench = ad::run_benchmark(world, config, dir, jobs);
  print_summary_table(bench.summary);
  std::cout << "wrote " << dir.string() << "/{learning_curves.csv,summary.csv}\n";
  for (const std::string& failure : bench.failures) {
    std::cerr << "failed run " << failure << "\n";
  }
  return bench.failures.empty() ? 0 : 1;
}

int run_chat(const std::string& config_path, const std::string& ckpt_path,
             const std::string& agent, std::uint64_t seed) {
  ad::TrainConfig config = load_config(config_path);
  std::optional<ad::Checkpoint> ckpt;
  if (!ckpt_path.empty()) {
    ckpt = ad::load_checkpoint(ckpt_path);
    apply_world_meta(*ckpt, config);
  } else if (agent != "rule") {
    throw ad::ConfigError("chat needs --ckpt, or --agent rule");
  }
  const bool use_actor = ckpt.has_value() && ckpt->has_net("actor");

  const ad::World world = ad::make_world(config);
  ad::Rng rng(seed);
  const ad::UserGoal& goal = ad::sample_goal(world.goals, rng);
  ad::SimulatorState judge = ad::make_simulator_state(goal, world.ontology);
  ad::DialogState dialog;
  int turns = 0;
  const int max_turns = world.rewards.max_turns;

  std::cout << "your goal: " << ad::goal_to_string(goal, world.ontology) << "\n"
            << "you play the user; frames look like request(ticket, moviename=...)\n"
            << "bare tokens are request slots, key=value pairs are informs,\n"
            << "and key?=value marks an inform you are not sure about\n";

  std::string line;
  const auto read_user = [&]() -> std::optional<ad::SemanticFrame> {
    while (true) {
      std::cout << "user> " << std::flush;
      if (!std::getline(std::cin, line)) return std::nullopt;
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      try {
        ad::SemanticFrame frame =
            ad::parse_frame(line, world.ontology, ad::Speaker::kUser);
        ad::validate_frame(frame, world.ontology);
        return frame;
      } catch (const std::exception& e) {
        std::cout << "  " << e.what() << "\n"
                  << "  syntax: act(slot, ..., slot=value, ...)\n";
      }
    }
  };

  std::optional<ad::SemanticFrame> user = read_user();
  if (!user.has_value()) {
    std::cout << "result: ABORTED\n";
    return 0;
  }
  ad::observe_user(dialog, *user);

  while (true) {
    int a;
    if (use_actor) {
      const ad::Vector s =
          ad::featurize(dialog, world.ontology, world.kb, turns, max_turns);
      a = ad::greedy_action(ckpt->net("actor"), s);
    } else {
      a = ad::rule_policy(world, dialog);
    }
    const ad::SemanticFrame frame = ad::realize_agent_action(world, dialog, a);
    ad::observe_agent(dialog, frame);
    std::cout << "agent> " << ad::frame_to_string(frame, world.ontology) << "\n";

    if (frame.task_complete) {
      ++turns;
      const bool success = ad::judge_booking(judge, frame);
      const double reward = world.rewards.per_turn * turns +
                            (success ? world.rewards.success_bonus
                                     : world.rewards.failure_penalty);
      std::cout << "result: " << (success ? "SUCCESS" : "FAILURE") << " turns="
                << turns << " reward=" << f4(reward) << "\n";
      return 0;
    }
    if (frame.act == ad::DialogueAct::kClosing) {
      ++turns;
      const double reward =
          world.rewards.per_turn * turns + world.rewards.failure_penalty;
      std::cout << "result: FAILURE turns=" << turns << " reward=" << f4(reward)
                << "\n";
      return 0;
    }
    // Outside the simulator someone still has to remember what the agent
    // said; the judge's `received` plays that role for the final verdict.
    for (const auto& [slot, value] : frame.inform_slots) judge.received[slot] = value;

    user = read_user();
    if (!user.has_value()) {
      std::cout << "result: ABORTED\n";
      return 0;
    }
    ad::observe_user(dialog, *user);
    ++turns;
    if (turns >= max_turns) {
      const double reward =
          world.rewards.per_turn * turns + world.rewards.failure_penalty;
      std::cout << "result: FAILURE (timeout) turns=" << turns << " reward="
                << f4(reward) << "\n";
      return 0;
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adversarial actor-critic workbench for task-completion dialogues"};
  app.require_subcommand(1);
  const std::vector<std::string> agent_names = {"rule", "a2c", "adv-a2c",
                                                "adv-a2c-frozen"};

  CLI::App* gen = app.add_subcommand("gen-world", "write ontology, KB and goal files");
  std::string gen_config, gen_out;
  std::uint64_t gen_seed = 0;
  gen->add_option("--config", gen_config, "training config file");
  CLI::Option* gen_seed_opt =
      gen->add_option("--seed", gen_seed, "world seed (default from config)");
  gen->add_option("--out", gen_out, "output directory");

  CLI::App* train = app.add_subcommand("train", "train one agent and save artifacts");
  std::string train_config, train_agent_name, train_out, train_demos;
  std::uint64_t train_seed = 1;
  int train_episodes = -1;
  train->add_option("--agent", train_agent_name, "rule | a2c | adv-a2c | adv-a2c-frozen")
      ->required()
      ->check(CLI::IsMember(agent_names));
  train->add_option("--config", train_config, "training config file");
  train->add_option("--seed", train_seed, "run seed")->capture_default_str();
  train->add_option("--episodes", train_episodes, "override the episode budget");
  train->add_option("--out", train_out, "output root (default ADVDIALOG_RUN_DIR or .)");
  train->add_option("--demos", train_demos,
                    "checkpoint whose demos replace collection (adversarial agents)");

  CLI::App* eval = app.add_subcommand("evaluate", "greedy evaluation of a checkpoint");
  std::string eval_config, eval_ckpt, eval_agent, eval_out;
  std::uint64_t eval_seed = 99;
  int eval_episodes = 0;
  eval->add_option("--ckpt", eval_ckpt, "checkpoint to evaluate");
  eval->add_option("--agent", eval_agent, "'rule' evaluates the scripted agent");
  eval->add_option("--config", eval_config, "training config file");
  eval->add_option("--seed", eval_seed, "evaluation seed")->capture_default_str();
  eval->add_option("--episodes", eval_episodes,
                   "dialogue count (default: config final_eval_episodes)");
  eval->add_option("--out", eval_out, "also write eval.csv under this directory");

  CLI::App* collect =
      app.add_subcommand("collect-demos", "save demonstrations from a trained agent");
  std::string collect_config, collect_ckpt, collect_out;
  std::uint64_t collect_seed = 1;
  int collect_count = 0;
  collect->add_option("--ckpt", collect_ckpt, "checkpoint of the demonstrating agent")
      ->required();
  collect->add_option("--config", collect_config, "training config file");
  collect->add_option("--seed", collect_seed, "environment seed")->capture_default_str();
  collect->add_option("--episodes", collect_count,
                      "successful dialogues to collect (default: config demo_count)");
  collect->add_option("--out", collect_out, "output file (default <root>/demos.ckpt)");

  CLI::App* bench = app.add_subcommand(
      "benchmark", "train rule/a2c/adv-a2c across seeds and summarize");
  std::string bench_config, bench_out;
  int bench_jobs = 1;
  bench->add_option("--config", bench_config, "training config file");
  bench->add_option("--out", bench_out, "output directory (default <root>/benchmark)");
  bench->add_option("--jobs", bench_jobs, "parallel runs")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  CLI::App* chat =
      app.add_subcommand("chat", "play the user against an agent on the console");
  std::string chat_config, chat_ckpt, chat_agent;
  std::uint64_t chat_seed = 7;
  chat->add_option("--ckpt", chat_ckpt, "checkpoint of the agent");
  chat->add_option("--agent", chat_agent, "'rule' chats with the scripted agent");
  chat->add_option("--config", chat_config, "training config file");
  chat->add_option("--seed", chat_seed, "goal choice seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      return run_gen_world(gen_config, gen_seed_opt->count() > 0 ? &gen_seed : nullptr,
                           gen_out);
    }
    if (train->parsed()) {
      return run_train(train_config, train_agent_name, train_seed, train_episodes,
                       train_out, train_demos);
    }
    if (eval->parsed()) {
      return run_evaluate(eval_config, eval_ckpt, eval_agent, eval_seed, eval_episodes,
                          eval_out);
    }
    if (collect->parsed()) {
      return run_collect_demos(collect_config, collect_ckpt, collect_seed,
                               collect_count, collect_out);
    }
    if (bench->parsed()) return run_benchmark_cmd(bench_config, bench_out, bench_jobs);
    if (chat->parsed()) return run_chat(chat_config, chat_ckpt, chat_agent, chat_seed);
  } catch (const ad::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
