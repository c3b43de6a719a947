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

#include "advdialog/ontology.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "io_util.hpp"

namespace advdialog {

using io::parse_fail;
using io::split;
using io::trim;

namespace {

const std::vector<std::string> kActNames = {
    "inform",          "request", "confirm_question", "confirm_answer",
    "greeting",        "closing", "multiple_choice",  "thanks",
    "deny",            "welcome", "not_sure"};

// Payload tokens must survive a round trip through the whitespace/comma
// delimited file formats.
void check_token(const std::string& token, const char* kind) {
  if (token.empty()) throw std::invalid_argument(std::string("empty ") + kind);
  if (token.find_first_of(" \t\r\n,()=:") != std::string::npos) {
    throw std::invalid_argument(std::string("illegal character in ") + kind + " '" +
                                token + "'");
  }
}

}  // namespace

const std::string& act_name(DialogueAct act) {
  return kActNames.at(static_cast<size_t>(act));
}

std::optional<DialogueAct> act_from_name(const std::string& name) {
  for (size_t i = 0; i < kActNames.size(); ++i) {
    if (kActNames[i] == name) return static_cast<DialogueAct>(i);
  }
  return std::nullopt;
}

const std::string& speaker_name(Speaker s) {
  static const std::string kUserName = "user";
  static const std::string kAgentName = "agent";
  return s == Speaker::kUser ? kUserName : kAgentName;
}

Ontology::Ontology(std::vector<SlotSpec> slots) : slots_(std::move(slots)) {
  if (slots_.empty()) throw std::invalid_argument("empty ontology");
  for (int i = 0; i < static_cast<int>(slots_.size()); ++i) {
    const SlotSpec& spec = slots_[i];
    check_token(spec.name, "slot name");
    if (spec.name == kTaskComplete || spec.name == kAnything) {
      throw std::invalid_argument("reserved slot name '" + spec.name + "'");
    }
    if (!index_.emplace(spec.name, i).second) {
      throw std::invalid_argument("duplicate slot '" + spec.name + "'");
    }
    if (spec.informable && spec.values.empty()) {
      throw std::invalid_argument("informable slot '" + spec.name + "' has no values");
    }
    std::set<std::string> seen;
    for (const std::string& v : spec.values) {
      check_token(v, "slot value");
      if (!seen.insert(v).second) {
        throw std::invalid_argument("duplicate value '" + v + "' for slot '" +
                                    spec.name + "'");
      }
    }
  }
}

bool Ontology::has_slot(const std::string& name) const {
  return index_.count(name) > 0;
}

int Ontology::slot_index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::invalid_argument("unknown slot '" + name + "'");
  return it->second;
}

bool Ontology::is_informable(const std::string& name) const {
  return slots_[slot_index(name)].informable;
}

bool Ontology::is_requestable(const std::string& name) const {
  return slots_[slot_index(name)].requestable;
}

bool Ontology::value_in_domain(const std::string& slot, const std::string& value) const {
  const SlotSpec& spec = slots_[slot_index(slot)];
  return std::find(spec.values.begin(), spec.values.end(), value) != spec.values.end();
}

std::vector<std::string> Ontology::informable_slots() const {
  std::vector<std::string> out;
  for (const SlotSpec& s : slots_) {
    if (s.informable) out.push_back(s.name);
  }
  return out;
}

std::vector<std::string> Ontology::requestable_slots() const {
  std::vector<std::string> out;
  for (const SlotSpec& s : slots_) {
    if (s.requestable) out.push_back(s.name);
  }
  return out;
}

bool Ontology::operator==(const Ontology& other) const {
  if (slots_.size() != other.slots_.size()) return false;
  for (size_t i = 0; i < slots_.size(); ++i) {
    const SlotSpec& a = slots_[i];
    const SlotSpec& b = other.slots_[i];
    if (a.name != b.name || a.informable != b.informable ||
        a.requestable != b.requestable || a.values != b.values) {
      return false;
    }
  }
  return true;
}

void validate_frame(const SemanticFrame& frame, const Ontology& ontology) {
  for (const auto& [slot, value] : frame.inform_slots) {
    if (!ontology.has_slot(slot)) {
      throw std::invalid_argument("inform of unknown slot '" + slot + "'");
    }
    if (!ontology.is_informable(slot)) {
      throw std::invalid_argument("slot '" + slot + "' is not informable");
    }
    if (value != kAnything && !ontology.value_in_domain(slot, value)) {
      throw std::invalid_argument("value '" + value + "' not in domain of slot '" +
                                  slot + "'");
    }
    if (frame.request_slots.count(slot)) {
      throw std::invalid_argument("slot '" + slot + "' both informed and requested");
    }
  }
  for (const std::string& slot : frame.request_slots) {
    if (!ontology.has_slot(slot)) {
      throw std::invalid_argument("request of unknown slot '" + slot + "'");
    }
    if (!ontology.is_requestable(slot)) {
      throw std::invalid_argument("slot '" + slot + "' is not requestable");
    }
  }
  for (const std::string& slot : frame.unsure_slots) {
    if (!frame.inform_slots.count(slot)) {
      throw std::invalid_argument("unsure flag on slot '" + slot +
                                  "' without an inform");
    }
  }
}

std::string frame_to_string(const SemanticFrame& frame, const Ontology& ontology) {
  std::vector<std::string> tokens;
  if (frame.task_complete) tokens.push_back(kTaskComplete);
  for (const SlotSpec& spec : ontology.slots()) {
    if (frame.request_slots.count(spec.name)) tokens.push_back(spec.name);
  }
  for (const SlotSpec& spec : ontology.slots()) {
    auto it = frame.inform_slots.find(spec.name);
    if (it == frame.inform_slots.end()) continue;
    const char* sep = frame.unsure_slots.count(spec.name) ? "?=" : "=";
    tokens.push_back(spec.name + sep + it->second);
  }
  std::string out = act_name(frame.act) + "(";
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ", ";
    out += tokens[i];
  }
  out += ")";
  return out;
}

SemanticFrame parse_frame(const std::string& text, const Ontology& ontology,
                          Speaker speaker) {
  const std::string s = trim(text);
  size_t open = s.find('(');
  if (open == std::string::npos || s.back() != ')') {
    throw ParseError("expected act(...) form, got '" + s + "'");
  }
  const std::string head = trim(s.substr(0, open));
  std::optional<DialogueAct> act = act_from_name(head);
  if (!act) throw ParseError("unknown dialogue act '" + head + "'");

  SemanticFrame frame;
  frame.act = *act;
  frame.speaker = speaker;

  const std::string inner = trim(s.substr(open + 1, s.size() - open - 2));
  if (!inner.empty()) {
    for (const std::string& raw : split(inner, ',')) {
      const std::string token = trim(raw);
      if (token.empty()) throw ParseError("empty token in '" + s + "'");
      size_t eq = token.find('=');
      if (eq == std::string::npos) {
        if (token == kTaskComplete) {
          frame.task_complete = true;
        } else if (!frame.request_slots.insert(token).second) {
          throw ParseError("duplicate request slot '" + token + "'");
        }
      } else {
        std::string key = trim(token.substr(0, eq));
        const std::string value = trim(token.substr(eq + 1));
        const bool unsure = !key.empty() && key.back() == '?';
        if (unsure) key = trim(key.substr(0, key.size() - 1));
        if (key.empty() || value.empty()) {
          throw ParseError("malformed inform token '" + token + "'");
        }
        if (!frame.inform_slots.emplace(key, value).second) {
          throw ParseError("duplicate inform slot '" + key + "'");
        }
        if (unsure) frame.unsure_slots.insert(key);
      }
    }
  }
  try {
    validate_frame(frame, ontology);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return frame;
}

std::string goal_to_string(const UserGoal& goal, const Ontology& ontology) {
  std::string out = "request=";
  bool first = true;
  for (const SlotSpec& spec : ontology.slots()) {
    if (!goal.request_slots.count(spec.name)) continue;
    if (!first) out += ",";
    out += spec.name;
    first = false;
  }
  out += " inform=";
  first = true;
  for (const SlotSpec& spec : ontology.slots()) {
    auto it = goal.inform_slots.find(spec.name);
    if (it == goal.inform_slots.end()) continue;
    if (!first) out += ",";
    out += spec.name + ":" + it->second;
    first = false;
  }
  if (!goal.unsure_slot.empty()) {
    out += " unsure=" + goal.unsure_slot + ":" + goal.unsure_value;
  }
  return out;
}

UserGoal parse_goal_fields(const std::vector<std::string>& fields,
                           const Ontology& ontology) {
  if (fields.size() != 2 && fields.size() != 3) {
    throw ParseError("expected 'request=... inform=... [unsure=...]' fields");
  }
  UserGoal goal;
  for (const std::string& tok : fields) {
    if (tok.rfind("request=", 0) == 0) {
      const std::string list = tok.substr(8);
      if (list.empty()) continue;
      for (const std::string& slot : split(list, ',')) {
        if (!ontology.has_slot(slot) || !ontology.is_requestable(slot)) {
          throw ParseError("bad request slot '" + slot + "'");
        }
        if (!goal.request_slots.insert(slot).second) {
          throw ParseError("duplicate request slot '" + slot + "'");
        }
      }
    } else if (tok.rfind("inform=", 0) == 0) {
      const std::string list = tok.substr(7);
      if (list.empty()) continue;
      for (const std::string& pair : split(list, ',')) {
        size_t colon = pair.find(':');
        if (colon == std::string::npos) {
          throw ParseError("malformed inform entry '" + pair + "'");
        }
        const std::string slot = pair.substr(0, colon);
        const std::string value = pair.substr(colon + 1);
        if (!ontology.has_slot(slot) || !ontology.is_informable(slot)) {
          throw ParseError("bad inform slot '" + slot + "'");
        }
        if (value != kAnything && !ontology.value_in_domain(slot, value)) {
          throw ParseError("value '" + value + "' not in domain of slot '" + slot +
                           "'");
        }
        if (!goal.inform_slots.emplace(slot, value).second) {
          throw ParseError("duplicate inform slot '" + slot + "'");
        }
      }
    } else if (tok.rfind("unsure=", 0) == 0) {
      const std::string pair = tok.substr(7);
      size_t colon = pair.find(':');
      if (colon == std::string::npos) {
        throw ParseError("malformed unsure entry '" + pair + "'");
      }
      goal.unsure_slot = pair.substr(0, colon);
      goal.unsure_value = pair.substr(colon + 1);
    } else {
      throw ParseError("unknown field '" + tok + "'");
    }
  }
  for (const std::string& slot : goal.request_slots) {
    if (goal.inform_slots.count(slot)) {
      throw ParseError("slot '" + slot + "' both requested and informed");
    }
  }
  if (!goal.unsure_slot.empty()) {
    auto it = goal.inform_slots.find(goal.unsure_slot);
    if (it == goal.inform_slots.end()) {
      throw ParseError("unsure slot '" + goal.unsure_slot +
                       "' is not a constraint");
    }
    if (!ontology.value_in_domain(goal.unsure_slot, goal.unsure_value)) {
      throw ParseError("unsure value '" + goal.unsure_value +
                       "' not in domain of slot '" + goal.unsure_slot + "'");
    }
    if (goal.unsure_value == it->second) {
      throw ParseError("unsure value must differ from the true constraint");
    }
  }
  return goal;
}

KnowledgeBase::KnowledgeBase(std::vector<std::string> columns,
                             std::vector<std::vector<std::string>> rows)
    : columns_(std::move(columns)), rows_(std::move(rows)) {
  for (int i = 0; i < static_cast<int>(columns_.size()); ++i) {
    if (!column_index_.emplace(columns_[i], i).second) {
      throw std::invalid_argument("duplicate kb column '" + columns_[i] + "'");
    }
  }
  interned_.resize(columns_.size());
  id_rows_.reserve(rows_.size());
  std::set<std::vector<std::string>> seen;
  for (const auto& row : rows_) {
    if (row.size() != columns_.size()) {
      throw std::invalid_argument("kb row arity mismatch");
    }
    if (!seen.insert(row).second) throw std::invalid_argument("duplicate kb row");
    std::vector<int> ids(row.size());
    for (size_t c = 0; c < row.size(); ++c) {
      auto [it, inserted] =
          interned_[c].emplace(row[c], static_cast<int>(interned_[c].size()));
      ids[c] = it->second;
    }
    id_rows_.push_back(std::move(ids));
  }
}

int KnowledgeBase::value_id(int column, const std::string& value) const {
  const auto& ids = interned_.at(column);
  auto it = ids.find(value);
  return it == ids.end() ? -1 : it->second;
}

const std::string& KnowledgeBase::value(int row, const std::string& slot) const {
  return rows_.at(row).at(column_index(slot));
}

int KnowledgeBase::column_index(const std::string& slot) const {
  auto it = column_index_.find(slot);
  if (it == column_index_.end()) {
    throw std::invalid_argument("unknown kb column '" + slot + "'");
  }
  return it->second;
}

std::map<std::string, std::string> KnowledgeBase::row_as_map(int index) const {
  std::map<std::string, std::string> out;
  const std::vector<std::string>& row = rows_.at(index);
  for (size_t i = 0; i < columns_.size(); ++i) out[columns_[i]] = row[i];
  return out;
}

std::vector<int> kb_query(const KnowledgeBase& kb,
                          const std::map<std::string, std::string>& constraints) {
  // Resolve column indices first so unknown slots fail even on an empty KB.
  std::vector<std::pair<int, int>> checks;  // (column, value id)
  bool impossible = false;
  for (const auto& [slot, value] : constraints) {
    int col = kb.column_index(slot);
    if (value == kAnything) continue;
    int id = kb.value_id(col, value);
    if (id < 0) impossible = true;  // value appears in no row
    checks.emplace_back(col, id);
  }
  std::vector<int> out;
  if (impossible) return out;
  for (int r = 0; r < kb.num_rows(); ++r) {
    bool ok = true;
    for (const auto& [col, id] : checks) {
      if (kb.row_value_id(r, col) != id) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(r);
  }
  return out;
}

// --- file I/O -------------------------------------------------------------

using io::open_out;
using io::read_records;

Ontology load_ontology(const std::filesystem::path& path,
                       std::optional<int> expected_slots) {
  std::vector<SlotSpec> slots;
  for (const auto& [line_no, tokens] : read_records(path, "advdialog-ontology v1")) {
    if (tokens[0] != "slot" || tokens.size() < 4) {
      parse_fail(path, line_no, "expected 'slot <name> <informable> <requestable> ...'");
    }
    SlotSpec spec;
    spec.name = tokens[1];
    if ((tokens[2] != "0" && tokens[2] != "1") || (tokens[3] != "0" && tokens[3] != "1")) {
      parse_fail(path, line_no, "informable/requestable flags must be 0 or 1");
    }
    spec.informable = tokens[2] == "1";
    spec.requestable = tokens[3] == "1";
    spec.values.assign(tokens.begin() + 4, tokens.end());
    slots.push_back(std::move(spec));
  }
  if (slots.empty()) throw ParseError(path.string() + ": empty ontology");
  if (expected_slots && static_cast<int>(slots.size()) != *expected_slots) {
    throw ParseError(path.string() + ": expected " + std::to_string(*expected_slots) +
                     " slots, found " + std::to_string(slots.size()));
  }
  try {
    return Ontology(std::move(slots));
  } catch (const std::invalid_argument& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_ontology(const std::filesystem::path& path, const Ontology& ontology) {
  std::ofstream out = open_out(path);
  out << "advdialog-ontology v1\n";
  for (const SlotSpec& spec : ontology.slots()) {
    out << "slot " << spec.name << " " << (spec.informable ? 1 : 0) << " "
        << (spec.requestable ? 1 : 0);
    for (const std::string& v : spec.values) out << " " << v;
    out << "\n";
  }
}

KnowledgeBase load_kb(const std::filesystem::path& path, const Ontology& ontology) {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  for (const auto& [line_no, tokens] : read_records(path, "advdialog-kb v1")) {
    if (tokens[0] == "columns") {
      if (!columns.empty()) parse_fail(path, line_no, "duplicate columns line");
      columns.assign(tokens.begin() + 1, tokens.end());
      if (columns.empty()) parse_fail(path, line_no, "no columns listed");
      for (const std::string& c : columns) {
        if (!ontology.has_slot(c) || !ontology.is_informable(c)) {
          parse_fail(path, line_no, "column '" + c + "' is not an informable slot");
        }
      }
    } else if (tokens[0] == "row") {
      if (columns.empty()) parse_fail(path, line_no, "row before columns line");
      if (tokens.size() - 1 != columns.size()) {
        parse_fail(path, line_no, "expected " + std::to_string(columns.size()) +
                                      " values, found " + std::to_string(tokens.size() - 1));
      }
      std::vector<std::string> row(tokens.begin() + 1, tokens.end());
      for (size_t i = 0; i < row.size(); ++i) {
        if (!ontology.value_in_domain(columns[i], row[i])) {
          parse_fail(path, line_no, "value '" + row[i] + "' not in domain of slot '" +
                                        columns[i] + "'");
        }
      }
      rows.push_back(std::move(row));
    } else {
      parse_fail(path, line_no, "unknown record '" + tokens[0] + "'");
    }
  }
  if (columns.empty()) throw ParseError(path.string() + ": missing columns line");
  try {
    return KnowledgeBase(std::move(columns), std::move(rows));
  } catch (const std::invalid_argument& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_kb(const std::filesystem::path& path, const KnowledgeBase& kb) {
  std::ofstream out = open_out(path);
  out << "advdialog-kb v1\n";
  out << "columns";
  for (const std::string& c : kb.columns()) out << " " << c;
  out << "\n";
  for (int r = 0; r < kb.num_rows(); ++r) {
    out << "row";
    for (const std::string& v : kb.row(r)) out << " " << v;
    out << "\n";
  }
}

std::vector<UserGoal> load_goals(const std::filesystem::path& path,
                                 const Ontology& ontology) {
  std::vector<UserGoal> goals;
  for (const auto& [line_no, tokens] : read_records(path, "advdialog-goals v1")) {
    if (tokens[0] != "goal") {
      parse_fail(path, line_no, "expected 'goal request=... inform=...'");
    }
    try {
      goals.push_back(parse_goal_fields(
          std::vector<std::string>(tokens.begin() + 1, tokens.end()), ontology));
    } catch (const ParseError& e) {
      parse_fail(path, line_no, e.what());
    }
  }
  return goals;
}

void save_goals(const std::filesystem::path& path, const std::vector<UserGoal>& goals,
                const Ontology& ontology) {
  std::ofstream out = open_out(path);
  out << "advdialog-goals v1\n";
  for (const UserGoal& goal : goals) {
    out << "goal " << goal_to_string(goal, ontology) << "\n";
  }
}

}  // namespace advdialog
