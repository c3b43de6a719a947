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

#include "advdialog/state.hpp"

#include <algorithm>
#include <stdexcept>

namespace advdialog {

void observe_user(DialogState& state, const SemanticFrame& frame) {
  state.last_user_act = frame.act;
  for (const auto& [slot, value] : frame.inform_slots) {
    state.user_informed[slot] = value;
    if (frame.unsure_slots.count(slot)) {
      state.user_unsure.insert(slot);
    } else {
      state.user_unsure.erase(slot);  // a confident re-inform settles it
    }
  }
  state.user_requested.insert(frame.request_slots.begin(), frame.request_slots.end());
  ++state.turn;
}

void observe_agent(DialogState& state, const SemanticFrame& frame) {
  state.last_agent_act = frame.act;
  for (const auto& [slot, value] : frame.inform_slots) {
    state.agent_informed.insert(slot);
  }
  state.agent_requested.insert(frame.request_slots.begin(), frame.request_slots.end());
  ++state.turn;
}

ActionSpace::ActionSpace(const Ontology& ontology) {
  for (const SlotSpec& spec : ontology.slots()) {
    actions_.push_back({DialogueAct::kRequest, spec.name, false});
  }
  for (const SlotSpec& spec : ontology.slots()) {
    actions_.push_back({DialogueAct::kInform, spec.name, false});
  }
  actions_.push_back({DialogueAct::kGreeting, "", false});
  actions_.push_back({DialogueAct::kThanks, "", false});
  actions_.push_back({DialogueAct::kDeny, "", false});
  actions_.push_back({DialogueAct::kConfirmAnswer, "", false});
  actions_.push_back({DialogueAct::kClosing, "", false});
  actions_.push_back({DialogueAct::kInform, "", true});
}

int ActionSpace::index_of(const AgentAction& action) const {
  auto it = std::find(actions_.begin(), actions_.end(), action);
  if (it == actions_.end()) {
    throw std::invalid_argument("action not in action space: " + act_name(action.act) +
                                (action.slot.empty() ? "" : "(" + action.slot + ")"));
  }
  return static_cast<int>(it - actions_.begin());
}

std::string ActionSpace::describe(int index) const {
  const AgentAction& a = action(index);
  if (a.task_complete) return act_name(a.act) + "(" + kTaskComplete + ")";
  if (a.slot.empty()) return act_name(a.act) + "()";
  return act_name(a.act) + "(" + a.slot + ")";
}

int kb_match_bucket(int match_count) {
  if (match_count < 0) throw std::invalid_argument("negative match count");
  if (match_count == 0) return 0;
  if (match_count == 1) return 1;
  if (match_count <= 4) return 2;
  if (match_count <= 9) return 3;
  if (match_count <= 49) return 4;
  return 5;
}

int state_dim(const Ontology& ontology) {
  return 2 * kNumActs + 5 * ontology.num_slots() + 1 + kNumMatchBuckets;
}

Vector featurize(const DialogState& state, const Ontology& ontology,
                 const KnowledgeBase& kb, int turn, int max_turns) {
  if (max_turns <= 0) throw std::invalid_argument("max_turns must be positive");
  if (turn < 0) throw std::invalid_argument("negative turn");
  const int S = ontology.num_slots();
  Vector x = Vector::Zero(state_dim(ontology));

  int base = 0;
  if (state.last_user_act) x[base + static_cast<int>(*state.last_user_act)] = 1.0;
  base += kNumActs;
  for (const auto& [slot, value] : state.user_informed) {
    x[base + ontology.slot_index(slot)] = 1.0;
  }
  base += S;
  for (const std::string& slot : state.user_requested) {
    x[base + ontology.slot_index(slot)] = 1.0;
  }
  base += S;
  for (const std::string& slot : state.user_unsure) {
    x[base + ontology.slot_index(slot)] = 1.0;
  }
  base += S;
  if (state.last_agent_act) x[base + static_cast<int>(*state.last_agent_act)] = 1.0;
  base += kNumActs;
  for (const std::string& slot : state.agent_informed) {
    x[base + ontology.slot_index(slot)] = 1.0;
  }
  base += S;
  for (const std::string& slot : state.agent_requested) {
    x[base + ontology.slot_index(slot)] = 1.0;
  }
  base += S;
  x[base] = std::min<Scalar>(1.0, static_cast<Scalar>(turn) / max_turns);
  base += 1;
  const int matches = static_cast<int>(kb_query(kb, state.user_informed).size());
  x[base + kb_match_bucket(matches)] = 1.0;
  return x;
}

}  // namespace advdialog
