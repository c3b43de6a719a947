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

#include "advdialog/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "io_util.hpp"

namespace advdialog {
namespace {

[[noreturn]] void config_fail(const std::string& origin, int line,
                              const std::string& what) {
  throw ConfigError(origin + ":" + std::to_string(line) + ": " + what);
}

Scalar parse_scalar(const std::string& value) {
  if (value == "inf") return kInfinity;
  size_t pos = 0;
  const Scalar v = std::stod(value, &pos);
  if (pos != value.size()) throw std::invalid_argument("trailing characters");
  return v;
}

int parse_int(const std::string& value) {
  size_t pos = 0;
  const long v = std::stol(value, &pos);
  if (pos != value.size()) throw std::invalid_argument("trailing characters");
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw std::invalid_argument("out of int range");
  }
  return static_cast<int>(v);
}

std::uint64_t parse_u64(const std::string& value) {
  size_t pos = 0;
  const std::uint64_t v = std::stoull(value, &pos);
  if (pos != value.size()) throw std::invalid_argument("trailing characters");
  return v;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& value) {
  std::vector<std::uint64_t> seeds;
  for (const std::string& tok : io::split(value, ',')) {
    const std::string t = io::trim(tok);
    if (t.empty()) throw std::invalid_argument("empty seed entry");
    seeds.push_back(parse_u64(t));
  }
  return seeds;
}

void check(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("config: " + what);
}

}  // namespace

void validate(const TrainConfig& c) {
  check(c.kb_rows > 0, "kb_rows must be positive");
  check(c.goal_count > 0, "goal_count must be positive");
  check(c.noise_prob >= 0.0 && c.noise_prob < 1.0, "noise_prob must be in [0,1)");
  check(c.max_turns > 0, "max_turns must be positive");
  check(std::isfinite(c.per_turn_reward), "per_turn_reward must be finite");
  check(std::isfinite(c.success_bonus), "success_bonus must be finite");
  check(std::isfinite(c.failure_penalty), "failure_penalty must be finite");
  check(c.gamma > 0.0 && c.gamma <= 1.0, "gamma must be in (0,1]");
  check(c.hidden > 0, "hidden must be positive");
  check(c.actor_lr > 0.0, "actor_lr must be positive");
  check(c.critic_lr > 0.0, "critic_lr must be positive");
  check(c.disc_lr > 0.0, "disc_lr must be positive");
  check(c.rmsprop_rho > 0.0 && c.rmsprop_rho < 1.0, "rmsprop_rho must be in (0,1)");
  check(c.rmsprop_eps > 0.0, "rmsprop_eps must be positive");
  check(c.entropy_coef >= 0.0, "entropy_coef must be non-negative");
  check(c.max_grad_norm > 0.0, "max_grad_norm must be positive");
  check(c.disc_clamp > 0.0 && c.disc_clamp < 0.5, "disc_clamp must be in (0,0.5)");
  check(c.alternation == "per-episode",
        "alternation must be 'per-episode' (the only schedule implemented)");
  check(c.episodes >= 0, "episodes must be non-negative");
  check(c.eval_every > 0, "eval_every must be positive");
  check(c.episodes == 0 || c.eval_every <= c.episodes,
        "eval_every must not exceed episodes");
  check(c.eval_episodes > 0, "eval_episodes must be positive");
  check(c.final_eval_episodes > 0, "final_eval_episodes must be positive");
  check(c.pretrain_examples > 0, "pretrain_examples must be positive");
  check(c.pretrain_batch > 0, "pretrain_batch must be positive");
  check(c.pretrain_max_epochs > 0, "pretrain_max_epochs must be positive");
  check(c.pretrain_target_accuracy > 0.0 && c.pretrain_target_accuracy <= 1.0,
        "pretrain_target_accuracy must be in (0,1]");
  check(c.demo_count > 0, "demo_count must be positive");
  check(c.demo_attempt_factor >= 1, "demo_attempt_factor must be at least 1");
  check(!c.seeds.empty(), "seeds must not be empty");
}

TrainConfig parse_train_config(const std::string& text, const std::string& origin) {
  using Setter = std::function<void(TrainConfig&, const std::string&)>;
  static const std::map<std::string, Setter> kSetters = {
      {"world_seed", [](TrainConfig& c, const std::string& v) { c.world_seed = parse_u64(v); }},
      {"kb_rows", [](TrainConfig& c, const std::string& v) { c.kb_rows = parse_int(v); }},
      {"goal_count", [](TrainConfig& c, const std::string& v) { c.goal_count = parse_int(v); }},
      {"noise_prob", [](TrainConfig& c, const std::string& v) { c.noise_prob = parse_scalar(v); }},
      {"max_turns", [](TrainConfig& c, const std::string& v) { c.max_turns = parse_int(v); }},
      {"per_turn_reward", [](TrainConfig& c, const std::string& v) { c.per_turn_reward = parse_scalar(v); }},
      {"success_bonus", [](TrainConfig& c, const std::string& v) { c.success_bonus = parse_scalar(v); }},
      {"failure_penalty", [](TrainConfig& c, const std::string& v) { c.failure_penalty = parse_scalar(v); }},
      {"gamma", [](TrainConfig& c, const std::string& v) { c.gamma = parse_scalar(v); }},
      {"hidden", [](TrainConfig& c, const std::string& v) { c.hidden = parse_int(v); }},
      {"actor_lr", [](TrainConfig& c, const std::string& v) { c.actor_lr = parse_scalar(v); }},
      {"critic_lr", [](TrainConfig& c, const std::string& v) { c.critic_lr = parse_scalar(v); }},
      {"disc_lr", [](TrainConfig& c, const std::string& v) { c.disc_lr = parse_scalar(v); }},
      {"rmsprop_rho", [](TrainConfig& c, const std::string& v) { c.rmsprop_rho = parse_scalar(v); }},
      {"rmsprop_eps", [](TrainConfig& c, const std::string& v) { c.rmsprop_eps = parse_scalar(v); }},
      {"entropy_coef", [](TrainConfig& c, const std::string& v) { c.entropy_coef = parse_scalar(v); }},
      {"max_grad_norm", [](TrainConfig& c, const std::string& v) { c.max_grad_norm = parse_scalar(v); }},
      {"disc_clamp", [](TrainConfig& c, const std::string& v) { c.disc_clamp = parse_scalar(v); }},
      {"alternation", [](TrainConfig& c, const std::string& v) { c.alternation = v; }},
      {"episodes", [](TrainConfig& c, const std::string& v) { c.episodes = parse_int(v); }},
      {"eval_every", [](TrainConfig& c, const std::string& v) { c.eval_every = parse_int(v); }},
      {"eval_episodes", [](TrainConfig& c, const std::string& v) { c.eval_episodes = parse_int(v); }},
      {"final_eval_episodes", [](TrainConfig& c, const std::string& v) { c.final_eval_episodes = parse_int(v); }},
      {"pretrain_examples", [](TrainConfig& c, const std::string& v) { c.pretrain_examples = parse_int(v); }},
      {"pretrain_batch", [](TrainConfig& c, const std::string& v) { c.pretrain_batch = parse_int(v); }},
      {"pretrain_max_epochs", [](TrainConfig& c, const std::string& v) { c.pretrain_max_epochs = parse_int(v); }},
      {"pretrain_target_accuracy", [](TrainConfig& c, const std::string& v) { c.pretrain_target_accuracy = parse_scalar(v); }},
      {"demo_count", [](TrainConfig& c, const std::string& v) { c.demo_count = parse_int(v); }},
      {"demo_attempt_factor", [](TrainConfig& c, const std::string& v) { c.demo_attempt_factor = parse_int(v); }},
      {"seeds", [](TrainConfig& c, const std::string& v) { c.seeds = parse_seed_list(v); }},
  };

  TrainConfig config;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = io::trim(line);
    if (body.empty() || body[0] == '#') continue;
    const size_t eq = body.find('=');
    if (eq == std::string::npos) {
      config_fail(origin, line_no, "expected 'key = value', got '" + body + "'");
    }
    const std::string key = io::trim(body.substr(0, eq));
    const std::string value = io::trim(body.substr(eq + 1));
    if (key.empty() || value.empty()) {
      config_fail(origin, line_no, "expected 'key = value', got '" + body + "'");
    }
    auto it = kSetters.find(key);
    if (it == kSetters.end()) {
      config_fail(origin, line_no, "unknown config key '" + key + "'");
    }
    try {
      it->second(config, value);
    } catch (const std::exception& e) {
      config_fail(origin, line_no, "bad value for '" + key + "': " + e.what());
    }
  }
  validate(config);
  return config;
}

TrainConfig load_train_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_train_config(buf.str(), path.string());
}

}  // namespace advdialog
