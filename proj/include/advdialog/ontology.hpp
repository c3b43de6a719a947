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
// Movie-ticket dialogue domain: dialogue acts, the slot ontology, semantic
// frames (the act + slot-value payload exchanged between user and agent),
// user goals, and the backend knowledge base of bookable showings.

#ifndef ADVDIALOG_ONTOLOGY_HPP_
#define ADVDIALOG_ONTOLOGY_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "advdialog/types.hpp"

namespace advdialog {

// The 11 dialogue acts. Enum order fixes the one-hot index of each act.
enum class DialogueAct : int {
  kInform = 0,
  kRequest = 1,
  kConfirmQuestion = 2,
  kConfirmAnswer = 3,
  kGreeting = 4,
  kClosing = 5,
  kMultipleChoice = 6,
  kThanks = 7,
  kDeny = 8,
  kWelcome = 9,
  kNotSure = 10,
};
inline constexpr int kNumActs = 11;

const std::string& act_name(DialogueAct act);
std::optional<DialogueAct> act_from_name(const std::string& name);

// Wildcard slot value: the user has no preference, matches any KB value.
inline const std::string kAnything = "anything";

// Virtual action target for the booking move inform(taskcomplete). It is not
// one of the ontology slots; the booking frame instead carries the booked KB
// row as its inform payload.
inline const std::string kTaskComplete = "taskcomplete";

struct SlotSpec {
  std::string name;
  bool informable = true;
  bool requestable = true;
  std::vector<std::string> values;  // value domain; required when informable
};

// Fixed, ordered slot inventory. Slot order defines feature indices and all
// deterministic tie-breaks (agenda pops, pending-request ordering).
class Ontology {
 public:
  Ontology() = default;
  explicit Ontology(std::vector<SlotSpec> slots);

  int num_slots() const { return static_cast<int>(slots_.size()); }
  const std::vector<SlotSpec>& slots() const { return slots_; }
  const SlotSpec& slot(int index) const { return slots_.at(index); }

  bool has_slot(const std::string& name) const;
  // Index of a slot by name; throws on unknown slot.
  int slot_index(const std::string& name) const;
  bool is_informable(const std::string& name) const;
  bool is_requestable(const std::string& name) const;
  bool value_in_domain(const std::string& slot, const std::string& value) const;

  std::vector<std::string> informable_slots() const;
  std::vector<std::string> requestable_slots() const;

  bool operator==(const Ontology& other) const;

 private:
  std::vector<SlotSpec> slots_;
  std::map<std::string, int> index_;
};

enum class Speaker { kUser, kAgent };
const std::string& speaker_name(Speaker s);

// One turn's meaning: an act plus inform (slot=value) and request (slot)
// payloads. `task_complete` marks the agent's booking move; the booking
// frame's inform_slots hold the booked KB row (empty when nothing matched).
struct SemanticFrame {
  DialogueAct act = DialogueAct::kInform;
  std::map<std::string, std::string> inform_slots;
  std::set<std::string> request_slots;
  // Informs voiced without confidence ("it was friday, I think?"). Always a
  // subset of inform_slots' keys.
  std::set<std::string> unsure_slots;
  Speaker speaker = Speaker::kUser;
  bool task_complete = false;

  bool operator==(const SemanticFrame& other) const {
    return act == other.act && inform_slots == other.inform_slots &&
           request_slots == other.request_slots &&
           unsure_slots == other.unsure_slots && speaker == other.speaker &&
           task_complete == other.task_complete;
  }
};

// Throws std::invalid_argument when the frame breaks the domain rules:
// inform keys must be informable with in-domain values (or "anything"),
// request slots must be requestable, and the two sets must be disjoint.
void validate_frame(const SemanticFrame& frame, const Ontology& ontology);

// Text form `act(taskcomplete, req, ..., slot=value, ...)`; bare tokens are
// request slots, `key=value` entries are informs and `key?=value` marks the
// inform unsure. Deterministic ordering: taskcomplete marker first, then
// requests and informs in slot order.
std::string frame_to_string(const SemanticFrame& frame, const Ontology& ontology);
// Parses the same grammar. Throws ParseError with a syntax hint on bad input.
SemanticFrame parse_frame(const std::string& text, const Ontology& ontology,
                          Speaker speaker);

struct UserGoal {
  std::map<std::string, std::string> inform_slots;  // constraints, true values
  std::set<std::string> request_slots;              // wanted information
  // When unsure_slot is non-empty the user misremembers that constraint: the
  // opening voices unsure_value (flagged unsure) and only a contradicting
  // quote or a fresh question elicits the truth kept in inform_slots.
  std::string unsure_slot;
  std::string unsure_value;

  bool operator==(const UserGoal& other) const {
    return inform_slots == other.inform_slots &&
           request_slots == other.request_slots &&
           unsure_slot == other.unsure_slot && unsure_value == other.unsure_value;
  }
};

// `request=<slot,...> inform=<slot:value,...> [unsure=<slot:value>]`, slots
// in ontology order.
std::string goal_to_string(const UserGoal& goal, const Ontology& ontology);
// Parses the whitespace-separated fields of the same form.
UserGoal parse_goal_fields(const std::vector<std::string>& fields,
                           const Ontology& ontology);

// Backend database: each row is a complete assignment over the informable
// slots (one bookable showing). Rows keep insertion order; duplicates are
// rejected at construction. Values are interned per column so queries scan
// integers, not strings.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  KnowledgeBase(std::vector<std::string> columns, std::vector<std::vector<std::string>> rows);

  const std::vector<std::string>& columns() const { return columns_; }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const std::vector<std::string>& row(int index) const { return rows_.at(index); }
  const std::string& value(int row, const std::string& slot) const;
  int column_index(const std::string& slot) const;
  // Interned id of a value in a column, -1 when the column never takes it.
  int value_id(int column, const std::string& value) const;
  int row_value_id(int row, int column) const { return id_rows_.at(row)[column]; }

  std::map<std::string, std::string> row_as_map(int index) const;

  bool operator==(const KnowledgeBase& other) const {
    return columns_ == other.columns_ && rows_ == other.rows_;
  }

 private:
  std::vector<std::string> columns_;
  std::map<std::string, int> column_index_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::map<std::string, int>> interned_;  // per column
  std::vector<std::vector<int>> id_rows_;
};

// Indices of rows matching every constraint, in KB row order. A constraint
// valued "anything" matches every row. Unknown slot names throw.
std::vector<int> kb_query(const KnowledgeBase& kb,
                          const std::map<std::string, std::string>& constraints);

// --- file formats -------------------------------------------------------
//
// Ontology file (`advdialog-ontology v1`): one record per slot,
//   slot <name> <informable 0|1> <requestable 0|1> <value> <value> ...
// KB file (`advdialog-kb v1`): a columns line then one `row ...` per showing.
// Goals file (`advdialog-goals v1`): one goal per line,
//   goal request=<slot,...> inform=<slot:value,...>

// `expected_slots` enforces a strict slot count (pass std::nullopt to accept
// any non-zero count). Errors carry the file name and line number.
Ontology load_ontology(const std::filesystem::path& path,
                       std::optional<int> expected_slots = 29);
void save_ontology(const std::filesystem::path& path, const Ontology& ontology);

KnowledgeBase load_kb(const std::filesystem::path& path, const Ontology& ontology);
void save_kb(const std::filesystem::path& path, const KnowledgeBase& kb);

std::vector<UserGoal> load_goals(const std::filesystem::path& path, const Ontology& ontology);
void save_goals(const std::filesystem::path& path, const std::vector<UserGoal>& goals,
                const Ontology& ontology);

}  // namespace advdialog

#endif  // ADVDIALOG_ONTOLOGY_HPP_
