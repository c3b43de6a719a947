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
// RL view of a dialogue: the environment couples the simulated user with
// the KB-backed agent action realizer and exposes featurized states, a
// discrete action set and turn-level rewards.

#ifndef ADVDIALOG_ENVIRONMENT_HPP_
#define ADVDIALOG_ENVIRONMENT_HPP_

#include <functional>
#include <vector>

#include "advdialog/ontology.hpp"
#include "advdialog/simulator.hpp"
#include "advdialog/state.hpp"
#include "advdialog/types.hpp"
#include "advdialog/world.hpp"

namespace advdialog {

struct RewardConfig {
  Scalar per_turn = -1.0;
  Scalar success_bonus = 80.0;    // 2 * max_turns
  Scalar failure_penalty = -40.0; // -max_turns
  Scalar gamma = 0.9;
  int max_turns = 40;             // agent exchanges before a forced failure
};

// Everything immutable that a dialogue runs against. Shared by reference
// across environments, trainers and evaluation threads.
struct World {
  Ontology ontology;
  KnowledgeBase kb;
  std::vector<UserGoal> goals;
  ActionSpace actions;
  RewardConfig rewards;

  explicit World(WorldData data, RewardConfig reward_config = {})
      : ontology(std::move(data.ontology)),
        kb(std::move(data.kb)),
        goals(std::move(data.goals)),
        actions(ontology),
        rewards(reward_config) {}
};

// Agent frame an action template produces against the tracked dialogue:
// informs quote the first KB row consistent with the user's stated
// constraints (row 0 when nothing matches), the booking move carries that
// whole row, or nothing when no row matches.
SemanticFrame realize_agent_action(const World& world, const DialogState& dialog,
                                   int action_index);

struct Transition {
  Vector state;
  int action = 0;
  Scalar reward = 0.0;
  Vector next_state;
  bool terminal = false;
};

struct EpisodeRecord {
  std::vector<Transition> transitions;
  bool success = false;
  int turns = 0;
  Scalar total_reward = 0.0;
};

class Environment {
 public:
  Environment(const World& world, Rng rng, Scalar noise_prob = 0.0);

  // Starts a new dialogue: samples a goal and lets the user open.
  const Vector& reset();

  struct StepResult {
    Scalar reward = 0.0;
    bool terminal = false;
    bool success = false;
  };
  // Realizes the agent action as a frame, gets the user's reply, and pays
  // per_turn plus the terminal bonus or penalty. Throws std::logic_error
  // when the dialogue is already over.
  StepResult step(int action_index);

  // Agent frame the action template would produce right now: informs quote
  // the first KB row consistent with the user's stated constraints, the
  // booking move carries that whole row (or nothing when no row matches).
  SemanticFrame realize_action(int action_index) const;

  const Vector& state() const { return state_; }
  bool terminal() const { return terminal_; }
  bool success() const { return success_; }
  int turn() const { return turn_; }
  const World& world() const { return *world_; }
  const DialogState& dialog() const { return dialog_; }
  const SimulatorState& sim() const { return sim_; }
  const std::vector<SemanticFrame>& frames() const { return frames_; }

 private:
  const World* world_;
  Rng rng_;
  Scalar noise_prob_;
  SimulatorState sim_;
  DialogState dialog_;
  std::vector<SemanticFrame> frames_;
  Vector state_;
  int turn_ = 0;
  bool started_ = false;
  bool terminal_ = true;  // force reset() before step()
  bool success_ = false;
};

using PolicyFn = std::function<int(const Vector& state)>;

// Plays one dialogue to termination. When `log` is given it is filled with
// the goal, the frames and the outcome (seed is left to the caller).
EpisodeRecord run_episode(Environment& env, const PolicyFn& policy,
                          EpisodeLog* log = nullptr);

}  // namespace advdialog

#endif  // ADVDIALOG_ENVIRONMENT_HPP_
