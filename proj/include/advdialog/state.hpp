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
// Dialogue state tracking, the fixed agent action set, and the dense
// feature encoding the policy and critics consume.

#ifndef ADVDIALOG_STATE_HPP_
#define ADVDIALOG_STATE_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "advdialog/ontology.hpp"
#include "advdialog/types.hpp"

namespace advdialog {

// Accumulated view of the dialogue so far, updated frame by frame. Inform
// and request indicators are cumulative; a re-inform overwrites the value.
struct DialogState {
  std::optional<DialogueAct> last_user_act;
  std::optional<DialogueAct> last_agent_act;
  std::map<std::string, std::string> user_informed;  // the agent's constraint store
  std::set<std::string> user_requested;
  std::set<std::string> user_unsure;  // constraints voiced without confidence
  std::set<std::string> agent_informed;
  std::set<std::string> agent_requested;
  int turn = 0;  // frames observed, both speakers
};

void observe_user(DialogState& state, const SemanticFrame& frame);
void observe_agent(DialogState& state, const SemanticFrame& frame);

// Abstract agent action: an act plus at most one slot argument. Values are
// filled in from the KB when the action is realized as a frame.
struct AgentAction {
  DialogueAct act = DialogueAct::kInform;
  std::string slot;            // empty for slotless acts
  bool task_complete = false;  // the booking move inform(taskcomplete)

  bool operator==(const AgentAction& other) const {
    return act == other.act && slot == other.slot &&
           task_complete == other.task_complete;
  }
};

// Enumeration of the agent's moves: request(slot) for every slot, then
// inform(slot) for every slot, then greeting, thanks, deny, confirm_answer,
// closing, and the booking move. 64 actions for the 29-slot ontology.
class ActionSpace {
 public:
  explicit ActionSpace(const Ontology& ontology);

  int size() const { return static_cast<int>(actions_.size()); }
  const AgentAction& action(int index) const { return actions_.at(index); }
  // Inverse of action(); throws on an action outside the space.
  int index_of(const AgentAction& action) const;

  std::string describe(int index) const;

 private:
  std::vector<AgentAction> actions_;
};

inline constexpr int kNumMatchBuckets = 6;

// Bucket index of a KB match count: 0, 1, 2-4, 5-9, 10-49, >=50.
int kb_match_bucket(int match_count);

// Feature layout, with S = num_slots:
//   [0,11)              last user act one-hot
//   [11,11+S)           user inform indicators
//   [11+S,11+2S)        user request indicators
//   [11+2S,11+3S)       user unsure indicators
//   [11+3S,22+3S)       last agent act one-hot
//   [22+3S,22+4S)       agent inform indicators
//   [22+4S,22+5S)       agent request indicators
//   [22+5S]             turn / max_turns, clipped to 1
//   [23+5S,23+5S+6)     KB match-count bucket one-hot
// 174 dimensions for the 29-slot ontology. `turn` counts agent exchanges;
// the environment owns that counter, so it is passed in rather than read
// from the frame-level DialogState.
int state_dim(const Ontology& ontology);

Vector featurize(const DialogState& state, const Ontology& ontology,
                 const KnowledgeBase& kb, int turn, int max_turns);

}  // namespace advdialog

#endif  // ADVDIALOG_STATE_HPP_
