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

#include "advdialog/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "io_util.hpp"

namespace advdialog {
namespace {

// One answer draw plus one value draw when the noise fires; no draws when
// noise is off, which keeps noise-free runs bitwise stable.
std::string maybe_noisy(const std::string& slot, const std::string& value,
                        const Ontology& ontology, Rng& rng, Scalar noise_prob) {
  if (noise_prob <= 0.0) return value;
  if (rng.uniform() >= noise_prob) return value;
  const std::vector<std::string>& domain = ontology.slot(ontology.slot_index(slot)).values;
  return domain[rng.uniform_int(domain.size())];
}

}  // namespace

const UserGoal& sample_goal(const std::vector<UserGoal>& goals, Rng& rng) {
  if (goals.empty()) throw std::invalid_argument("empty goal corpus");
  return goals[rng.uniform_int(goals.size())];
}

SimulatorState make_simulator_state(const UserGoal& goal, const Ontology& ontology) {
  SimulatorState state;
  state.goal = goal;
  for (const SlotSpec& spec : ontology.slots()) {
    if (goal.request_slots.count(spec.name)) {
      state.agenda_requests.push_back(spec.name);
    }
  }
  return state;
}

SemanticFrame initial_user_frame(SimulatorState& state, const Ontology& ontology,
                                 Rng& rng, Scalar noise_prob) {
  SemanticFrame frame;
  frame.speaker = Speaker::kUser;
  if (state.agenda_requests.empty()) {
    frame.act = DialogueAct::kInform;
  } else {
    frame.act = DialogueAct::kRequest;
    frame.request_slots.insert(state.agenda_requests.front());
    state.agenda_requests.erase(state.agenda_requests.begin());
  }
  int volunteered = 0;
  for (const SlotSpec& spec : ontology.slots()) {
    if (volunteered >= 2) break;
    auto it = state.goal.inform_slots.find(spec.name);
    if (it == state.goal.inform_slots.end()) continue;
    // A misremembered constraint is voiced with the wrong value and flagged;
    // the truth only comes out when the agent quotes or asks about the slot.
    const bool unsure = spec.name == state.goal.unsure_slot;
    const std::string& voiced = unsure ? state.goal.unsure_value : it->second;
    frame.inform_slots[spec.name] =
        maybe_noisy(spec.name, voiced, ontology, rng, noise_prob);
    if (unsure) frame.unsure_slots.insert(spec.name);
    ++volunteered;
  }
  return frame;
}

bool judge_booking(const SimulatorState& state, const SemanticFrame& booking) {
  if (booking.inform_slots.empty()) return false;  // nothing matched, no booking
  for (const auto& [slot, value] : state.goal.inform_slots) {
    auto it = booking.inform_slots.find(slot);
    if (it == booking.inform_slots.end() || it->second != value) return false;
  }
  for (const std::string& slot : state.goal.request_slots) {
    if (!state.received.count(slot)) return false;
  }
  return true;
}

UserStepResult user_step(SimulatorState& state, const SemanticFrame& agent_frame,
                         const Ontology& ontology, Rng& rng, Scalar noise_prob) {
  if (state.terminated) throw std::logic_error("user_step on terminated dialogue");

  UserStepResult result;
  result.frame.speaker = Speaker::kUser;

  if (agent_frame.task_complete) {
    // Booking informs describe the booked row; they are not answers, so they
    // do not count toward the goal's request slots.
    state.terminated = true;
    state.success = judge_booking(state, agent_frame);
    result.frame.act = state.success ? DialogueAct::kThanks : DialogueAct::kDeny;
    result.terminal = true;
    result.success = state.success;
    return result;
  }
  if (agent_frame.act == DialogueAct::kClosing) {
    state.terminated = true;
    state.success = false;
    result.frame.act = DialogueAct::kClosing;
    result.terminal = true;
    return result;
  }

  for (const auto& [slot, value] : agent_frame.inform_slots) {
    state.received[slot] = value;
  }

  if (agent_frame.act == DialogueAct::kRequest && !agent_frame.request_slots.empty()) {
    result.frame.act = DialogueAct::kInform;
    for (const SlotSpec& spec : ontology.slots()) {
      if (!agent_frame.request_slots.count(spec.name)) continue;
      auto it = state.goal.inform_slots.find(spec.name);
      const std::string value =
          it == state.goal.inform_slots.end()
              ? kAnything
              : maybe_noisy(spec.name, it->second, ontology, rng, noise_prob);
      result.frame.inform_slots[spec.name] = value;
    }
    return result;
  }

  // Statement turn: correct any contradicted constraint before moving on.
  SemanticFrame correction;
  for (const auto& [slot, value] : agent_frame.inform_slots) {
    auto it = state.goal.inform_slots.find(slot);
    if (it != state.goal.inform_slots.end() && it->second != value) {
      correction.inform_slots[slot] = it->second;
    }
  }
  if (!correction.inform_slots.empty()) {
    result.frame.act = DialogueAct::kInform;
    result.frame.inform_slots = std::move(correction.inform_slots);
    return result;
  }

  if (!state.agenda_requests.empty()) {
    result.frame.act = DialogueAct::kRequest;
    result.frame.request_slots.insert(state.agenda_requests.front());
    state.agenda_requests.erase(state.agenda_requests.begin());
    return result;
  }
  result.frame.act = DialogueAct::kThanks;
  return result;
}

// --- episode logs ----------------------------------------------------------

void save_episode_log(const std::filesystem::path& path, const EpisodeLog& log,
                      const Ontology& ontology) {
  std::ofstream out = io::open_out(path);
  out << "advdialog-log v1\n";
  out << "seed " << log.seed << "\n";
  out << "max_turns " << log.max_turns << "\n";
  out << "goal " << goal_to_string(log.goal, ontology) << "\n";
  for (const SemanticFrame& frame : log.frames) {
    out << speaker_name(frame.speaker) << " " << frame_to_string(frame, ontology)
        << "\n";
  }
  char reward[32];
  std::snprintf(reward, sizeof(reward), "%.4f", log.total_reward);
  out << "outcome " << (log.success ? "success" : "failure") << " turns=" << log.turns
      << " reward=" << reward << "\n";
}

EpisodeLog load_episode_log(const std::filesystem::path& path,
                            const Ontology& ontology) {
  EpisodeLog log;
  bool saw_goal = false;
  bool saw_outcome = false;
  for (const auto& [line_no, tokens] : io::read_records(path, "advdialog-log v1")) {
    const std::string& kind = tokens[0];
    if (saw_outcome) io::parse_fail(path, line_no, "content after outcome line");
    try {
      if (kind == "seed" && tokens.size() == 2) {
        log.seed = std::stoull(tokens[1]);
      } else if (kind == "max_turns" && tokens.size() == 2) {
        log.max_turns = std::stoi(tokens[1]);
      } else if (kind == "goal") {
        if (saw_goal) io::parse_fail(path, line_no, "duplicate goal line");
        log.goal = parse_goal_fields(
            std::vector<std::string>(tokens.begin() + 1, tokens.end()), ontology);
        saw_goal = true;
      } else if (kind == "user" || kind == "agent") {
        const Speaker speaker = kind == "user" ? Speaker::kUser : Speaker::kAgent;
        log.frames.push_back(
            parse_frame(io::join_tokens(tokens, 1), ontology, speaker));
      } else if (kind == "outcome") {
        if (tokens.size() != 4 || (tokens[1] != "success" && tokens[1] != "failure")) {
          io::parse_fail(path, line_no, "expected 'outcome <verdict> turns=N reward=R'");
        }
        log.success = tokens[1] == "success";
        if (tokens[2].rfind("turns=", 0) != 0 || tokens[3].rfind("reward=", 0) != 0) {
          io::parse_fail(path, line_no, "expected turns= and reward= fields");
        }
        log.turns = std::stoi(tokens[2].substr(6));
        log.total_reward = std::stod(tokens[3].substr(7));
        saw_outcome = true;
      } else {
        io::parse_fail(path, line_no, "unknown record '" + kind + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      io::parse_fail(path, line_no, e.what());
    }
  }
  if (!saw_goal) throw ParseError(path.string() + ": missing goal line");
  if (!saw_outcome) throw ParseError(path.string() + ": missing outcome line");
  return log;
}

bool replay_episode_log(const EpisodeLog& log, const Ontology& ontology,
                        Scalar success_bonus, Scalar failure_penalty) {
  if (log.frames.empty() || log.frames.size() % 2 == 0) return false;
  SimulatorState state = make_simulator_state(log.goal, ontology);
  Rng rng(0);  // replay is only defined for noise-free logs; never drawn from

  if (log.frames[0].speaker != Speaker::kUser) return false;
  if (!(initial_user_frame(state, ontology, rng) == log.frames[0])) return false;

  int turns = 0;
  bool terminal = false;
  bool success = false;
  for (size_t i = 1; i + 1 < log.frames.size(); i += 2) {
    if (terminal) return false;  // frames after the dialogue ended
    const SemanticFrame& agent = log.frames[i];
    const SemanticFrame& user = log.frames[i + 1];
    if (agent.speaker != Speaker::kAgent || user.speaker != Speaker::kUser) return false;
    UserStepResult result = user_step(state, agent, ontology, rng);
    ++turns;
    if (!(result.frame == user)) return false;
    terminal = result.terminal;
    success = result.success;
    if (!terminal && log.max_turns > 0 && turns >= log.max_turns) {
      terminal = true;  // ran out of turns, the environment calls it a failure
      success = false;
    }
  }
  if (!terminal || turns != log.turns || success != log.success) return false;
  const Scalar expected =
      -static_cast<Scalar>(turns) + (success ? success_bonus : failure_penalty);
  return std::abs(log.total_reward - expected) < 1e-9;
}

}  // namespace advdialog
