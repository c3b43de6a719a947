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
// Deterministic construction of the movie-ticket world: the 29-slot
// ontology, a sampled knowledge base of showings, and a goal corpus.

#ifndef ADVDIALOG_WORLD_HPP_
#define ADVDIALOG_WORLD_HPP_

#include <cstdint>
#include <vector>

#include "advdialog/ontology.hpp"
#include "advdialog/types.hpp"

namespace advdialog {

// Slot indices of the built-in ontology that the rule agent and the goal
// generator refer to by position.
inline constexpr int kMovienameSlot = 0;
inline constexpr int kTicketSlot = 10;
inline constexpr int kNumOntologySlots = 29;

Ontology default_ontology();

// Samples `rows` showings. Every informable slot is a column; the ticket
// column carries a unique booking code per row, so rows never collide.
KnowledgeBase generate_kb(const Ontology& ontology, Rng& rng, int rows);

// Samples goals backed by a concrete KB row, so every goal is satisfiable.
// Constraints always include the movie name plus one or two of the slots the
// rule agent asks about; some goals add constraints the rule agent never
// asks about, which only surface if the policy asks.
std::vector<UserGoal> generate_goals(const Ontology& ontology, const KnowledgeBase& kb,
                                     Rng& rng, int count);

struct WorldData {
  Ontology ontology;
  KnowledgeBase kb;
  std::vector<UserGoal> goals;
};

WorldData generate_world(uint64_t seed, int kb_rows, int goal_count);

}  // namespace advdialog

#endif  // ADVDIALOG_WORLD_HPP_
