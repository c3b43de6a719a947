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
// Agenda-based user simulator. The user pursues a goal (constraints to
// state, information to obtain), answers the agent's questions, corrects
// contradictions, and judges the final booking. Also defines the episode
// log format and a replay check that re-derives the user side of a log.

#ifndef ADVDIALOG_SIMULATOR_HPP_
#define ADVDIALOG_SIMULATOR_HPP_

#include <filesystem>
#include <vector>

#include "advdialog/ontology.hpp"
#include "advdialog/types.hpp"

namespace advdialog {

struct SimulatorState {
  UserGoal goal;
  // Request slots not yet voiced, in slot order. The user voices one in the
  // opening turn and one more after each agent turn that is not a question.
  std::vector<std::string> agenda_requests;
  // What the agent has told the user (cumulative, latest value wins).
  std::map<std::string, std::string> received;
  bool terminated = false;
  bool success = false;
};

const UserGoal& sample_goal(const std::vector<UserGoal>& goals, Rng& rng);

SimulatorState make_simulator_state(const UserGoal& goal, const Ontology& ontology);

// Opening turn: the first agenda request plus at most two goal constraints,
// chosen in slot order. A misremembered constraint (goal.unsure_slot) is
// voiced with the wrong value and flagged unsure; the user only supplies the
// truth when asked about the slot or contradicted on it. Draws from `rng`
// only under answer noise.
SemanticFrame initial_user_frame(SimulatorState& state, const Ontology& ontology,
                                 Rng& rng, Scalar noise_prob = 0.0);

struct UserStepResult {
  SemanticFrame frame;
  bool terminal = false;
  bool success = false;
};

// Advances the user one exchange. Rules, in order:
//  - booking move: terminal; success iff a row was booked, it satisfies every
//    goal constraint, and every goal request was answered beforehand; the
//    user closes with thanks (success) or deny (failure)
//  - agent closing: terminal failure
//  - agent question: answer every requested slot with the goal value, or
//    "anything" when the goal leaves it free
//  - agent statement contradicting a constraint: restate the correct values
//  - otherwise: voice the next agenda request, or thanks when done
// With noise_prob > 0 an answer is replaced by a uniform domain value with
// that probability (one rng draw per answered slot, plus the value draw).
// Stepping a terminated state throws std::logic_error.
UserStepResult user_step(SimulatorState& state, const SemanticFrame& agent_frame,
                         const Ontology& ontology, Rng& rng, Scalar noise_prob = 0.0);

// Booking verdict shared by the simulator and the interactive CLI.
bool judge_booking(const SimulatorState& state, const SemanticFrame& booking);

// --- episode logs (`advdialog-log v1`) ------------------------------------

struct EpisodeLog {
  uint64_t seed = 0;
  int max_turns = 0;
  UserGoal goal;
  std::vector<SemanticFrame> frames;  // alternating user/agent, opening first
  bool success = false;
  int turns = 0;  // agent exchanges, not utterances
  Scalar total_reward = 0.0;
};

void save_episode_log(const std::filesystem::path& path, const EpisodeLog& log,
                      const Ontology& ontology);
EpisodeLog load_episode_log(const std::filesystem::path& path, const Ontology& ontology);

// Re-runs the noise-free user against the logged agent turns and checks that
// every logged user turn, the outcome, and the reward identity
// total = -turns + bonus(success) all reproduce.
bool replay_episode_log(const EpisodeLog& log, const Ontology& ontology,
                        Scalar success_bonus = 80.0, Scalar failure_penalty = -40.0);

}  // namespace advdialog

#endif  // ADVDIALOG_SIMULATOR_HPP_
