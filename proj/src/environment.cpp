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

#include "advdialog/environment.hpp"

#include <stdexcept>

namespace advdialog {

Environment::Environment(const World& world, Rng rng, Scalar noise_prob)
    : world_(&world), rng_(rng), noise_prob_(noise_prob) {
  if (noise_prob < 0.0 || noise_prob >= 1.0) {
    throw std::invalid_argument("noise_prob must be in [0, 1)");
  }
}

const Vector& Environment::reset() {
  sim_ = make_simulator_state(sample_goal(world_->goals, rng_), world_->ontology);
  dialog_ = DialogState{};
  frames_.clear();
  turn_ = 0;
  started_ = true;
  terminal_ = false;
  success_ = false;

  SemanticFrame opening = initial_user_frame(sim_, world_->ontology, rng_, noise_prob_);
  observe_user(dialog_, opening);
  frames_.push_back(std::move(opening));
  state_ = featurize(dialog_, world_->ontology, world_->kb, turn_,
                     world_->rewards.max_turns);
  return state_;
}

SemanticFrame realize_agent_action(const World& world, const DialogState& dialog,
                                   int action_index) {
  const AgentAction& action = world.actions.action(action_index);
  SemanticFrame frame;
  frame.speaker = Speaker::kAgent;
  frame.act = action.act;
  frame.task_complete = action.task_complete;

  if (action.task_complete || (action.act == DialogueAct::kInform && !action.slot.empty())) {
    const std::vector<int> matches = kb_query(world.kb, dialog.user_informed);
    if (action.task_complete) {
      // Book the first consistent row outright; an empty result set means
      // there is nothing to book and the frame stays empty.
      if (!matches.empty()) {
        frame.inform_slots = world.kb.row_as_map(matches.front());
      }
    } else {
      // Quote from the first consistent row, or row 0 when nothing matches:
      // the agent answers something either way, and the user may correct it.
      const int row = matches.empty() ? 0 : matches.front();
      frame.inform_slots[action.slot] = world.kb.value(row, action.slot);
    }
  } else if (action.act == DialogueAct::kRequest) {
    frame.request_slots.insert(action.slot);
  }
  return frame;
}

SemanticFrame Environment::realize_action(int action_index) const {
  if (!started_) throw std::logic_error("realize_action before reset");
  return realize_agent_action(*world_, dialog_, action_index);
}

Environment::StepResult Environment::step(int action_index) {
  if (!started_) throw std::logic_error("step before reset");
  if (terminal_) throw std::logic_error("step on terminated dialogue");

  SemanticFrame agent_frame = realize_action(action_index);
  observe_agent(dialog_, agent_frame);
  frames_.push_back(agent_frame);

  UserStepResult user =
      user_step(sim_, agent_frame, world_->ontology, rng_, noise_prob_);
  observe_user(dialog_, user.frame);
  frames_.push_back(std::move(user.frame));
  ++turn_;

  terminal_ = user.terminal;
  success_ = user.success;
  if (!terminal_ && turn_ >= world_->rewards.max_turns) {
    terminal_ = true;
    success_ = false;
  }

  StepResult result;
  result.terminal = terminal_;
  result.success = success_;
  result.reward = world_->rewards.per_turn;
  if (terminal_) {
    result.reward +=
        success_ ? world_->rewards.success_bonus : world_->rewards.failure_penalty;
  }
  state_ = featurize(dialog_, world_->ontology, world_->kb, turn_,
                     world_->rewards.max_turns);
  return result;
}

EpisodeRecord run_episode(Environment& env, const PolicyFn& policy, EpisodeLog* log) {
  EpisodeRecord record;
  env.reset();
  while (!env.terminal()) {
    Transition t;
    t.state = env.state();
    t.action = policy(t.state);
    Environment::StepResult r = env.step(t.action);
    t.reward = r.reward;
    t.next_state = env.state();
    t.terminal = r.terminal;
    record.total_reward += r.reward;
    record.transitions.push_back(std::move(t));
  }
  record.success = env.success();
  record.turns = env.turn();
  if (log != nullptr) {
    log->max_turns = env.world().rewards.max_turns;
    log->goal = env.sim().goal;
    log->frames = env.frames();
    log->success = record.success;
    log->turns = record.turns;
    log->total_reward = record.total_reward;
  }
  return record;
}

}  // namespace advdialog
