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

#include "advdialog/world.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

namespace advdialog {
namespace {

struct PoolSpec {
  const char* name;
  std::vector<std::string> values;
};

std::vector<std::string> ticket_codes() {
  std::vector<std::string> out;
  out.reserve(400);
  char buf[16];
  for (int i = 0; i < 400; ++i) {
    std::snprintf(buf, sizeof(buf), "tkt_%03d", i);
    out.emplace_back(buf);
  }
  return out;
}

// Slot order is load-bearing: it fixes feature indices, agenda ordering and
// which constraints the user volunteers up front. The showing coordinates
// (movie/date/time/place) are kept coarse on purpose: plenty of KB rows share
// any movie-plus-coordinate pair, so queries keep matching — and quotes stay
// concrete — even when a constraint is misremembered.
const std::vector<PoolSpec>& slot_pools() {
  static const std::vector<PoolSpec> kPools = {
      {"moviename",
       {"deadpool", "zootopia", "batman_v_superman", "kung_fu_panda_3",
        "london_has_fallen", "the_witch"}},
      {"date", {"today", "tomorrow", "friday", "saturday"}},
      {"starttime", {"noon", "4pm", "6pm", "7pm", "9pm"}},
      {"city", {"seattle", "portland", "san_francisco", "los_angeles"}},
      {"theater",
       {"amc_pacific_place", "regal_meridian", "cinerama", "varsity_theatre"}},
      {"numberofpeople", {"1", "2", "3", "4"}},
      {"genre",
       {"action", "comedy", "drama", "thriller", "romance", "animation", "horror",
        "documentary"}},
      {"state", {"wa", "or", "ca", "il", "ma", "ny", "tx", "az", "co", "pa"}},
      {"price",
       {"8_dollars", "9_dollars", "10_dollars", "11_dollars", "12_dollars",
        "13_dollars", "14_dollars", "15_dollars"}},
      {"video_format", {"2d", "3d", "imax"}},
      {"ticket", ticket_codes()},
      {"zip",
       {"98101", "98052", "97201", "94105", "90012", "60601", "02108", "10001",
        "77002", "85001"}},
      {"theater_chain", {"amc", "regal", "cinemark", "century", "landmark"}},
      {"seating", {"standard", "premium", "recliner"}},
      {"mpaa_rating", {"g", "pg", "pg13", "r"}},
      {"critic_rating", {"good", "great", "excellent", "mixed"}},
      {"actor",
       {"ryan_reynolds", "leonardo_dicaprio", "tom_hardy", "michael_fassbender",
        "will_smith", "matt_damon", "george_clooney", "brad_pitt", "chris_evans",
        "mark_ruffalo"}},
      {"actress",
       {"jennifer_lawrence", "cate_blanchett", "brie_larson", "saoirse_ronan",
        "charlize_theron", "alicia_vikander", "kate_winslet", "rachel_mcadams",
        "emily_blunt", "rooney_mara"}},
      {"director",
       {"tim_miller", "ryan_coogler", "alejandro_inarritu", "adam_mckay",
        "tom_mccarthy", "david_o_russell", "ridley_scott", "denis_villeneuve",
        "jj_abrams", "george_miller"}},
      {"movie_series", {"standalone", "sequel", "franchise"}},
      {"language", {"english", "spanish", "french", "mandarin"}},
      {"subtitles", {"none", "english_subtitles", "spanish_subtitles"}},
      {"audience_rating", {"high", "medium", "low"}},
      {"payment_method", {"credit", "debit", "cash", "giftcard"}},
      {"reservation_name",
       {"under_smith", "under_johnson", "under_lee", "under_garcia", "under_chen"}},
      {"distanceconstraints", {"downtown", "near_me", "within_5_miles", "suburbs"}},
      {"numberofkids", {"0", "1", "2", "3"}},
      {"occasion", {"date_night", "birthday", "family_outing", "friends"}},
      {"description", {"new_release", "classic", "award_winner", "popular"}},
  };
  return kPools;
}

// Goal shape knobs. Every goal pins the movie plus one showing coordinate,
// both volunteered up front, and asks for the ticket code plus one detail of
// the showing. Two goals in five misremember the coordinate: the opening
// voices a wrong value flagged unsure, and the truth only comes out when the
// agent quotes that slot back or asks about it. The rule agent does neither,
// so those dialogues are lost on it — settling the flag before booking is
// the headroom learned policies claim. Separately, one goal in ten carries a
// genre preference the user never volunteers, so a small slice of bookings
// is lost to an invisible constraint no matter how careful the policy is.
const std::vector<std::string> kPriorityExtras = {"date", "starttime", "theater"};
const std::vector<std::string> kExtraRequests = {"date", "starttime", "theater",
                                                 "price", "zip"};

std::vector<std::string> pick_distinct(std::vector<std::string> pool, int k, Rng& rng) {
  for (int i = 0; i < k; ++i) {
    int64_t j = i + rng.uniform_int(static_cast<int64_t>(pool.size()) - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace

Ontology default_ontology() {
  std::vector<SlotSpec> slots;
  for (const PoolSpec& pool : slot_pools()) {
    SlotSpec spec;
    spec.name = pool.name;
    spec.informable = true;
    spec.requestable = true;
    spec.values = pool.values;
    slots.push_back(std::move(spec));
  }
  Ontology ontology(std::move(slots));
  if (ontology.num_slots() != kNumOntologySlots ||
      ontology.slot(kMovienameSlot).name != "moviename" ||
      ontology.slot(kTicketSlot).name != "ticket") {
    throw std::logic_error("built-in ontology layout changed");
  }
  return ontology;
}

KnowledgeBase generate_kb(const Ontology& ontology, Rng& rng, int rows) {
  if (rows <= 0) throw std::invalid_argument("kb row count must be positive");
  const int ticket_pool =
      static_cast<int>(ontology.slot(kTicketSlot).values.size());
  if (rows > ticket_pool) {
    throw std::invalid_argument("kb row count exceeds ticket code pool (" +
                                std::to_string(ticket_pool) + ")");
  }
  std::vector<std::vector<std::string>> data;
  data.reserve(rows);
  for (int r = 0; r < rows; ++r) {
    std::vector<std::string> row;
    row.reserve(ontology.num_slots());
    for (int s = 0; s < ontology.num_slots(); ++s) {
      const SlotSpec& spec = ontology.slot(s);
      if (s == kTicketSlot) {
        row.push_back(spec.values[r]);
      } else {
        row.push_back(spec.values[rng.uniform_int(spec.values.size())]);
      }
    }
    data.push_back(std::move(row));
  }
  std::vector<std::string> columns;
  for (const SlotSpec& spec : ontology.slots()) columns.push_back(spec.name);
  return KnowledgeBase(std::move(columns), std::move(data));
}

std::vector<UserGoal> generate_goals(const Ontology& ontology, const KnowledgeBase& kb,
                                     Rng& rng, int count) {
  if (count <= 0) throw std::invalid_argument("goal count must be positive");
  std::vector<UserGoal> goals;
  goals.reserve(count);
  for (int g = 0; g < count; ++g) {
    const int row = static_cast<int>(rng.uniform_int(kb.num_rows()));
    UserGoal goal;
    goal.inform_slots["moviename"] = kb.value(row, "moviename");

    const std::string extra = pick_distinct(kPriorityExtras, 1, rng)[0];
    goal.inform_slots[extra] = kb.value(row, extra);

    if (rng.uniform() < 0.4) {
      // Misremembered: swap in a uniformly chosen wrong value for the opening.
      const std::vector<std::string>& domain =
          ontology.slot(ontology.slot_index(extra)).values;
      const auto truth = std::find(domain.begin(), domain.end(),
                                   goal.inform_slots[extra]) - domain.begin();
      int64_t wrong = rng.uniform_int(static_cast<int64_t>(domain.size()) - 1);
      if (wrong >= truth) ++wrong;
      goal.unsure_slot = extra;
      goal.unsure_value = domain[wrong];
    }
    if (rng.uniform() < 0.1) {
      // A picky customer: the genre matters but never comes up unprompted
      // (it sorts past the volunteer cutoff), so bookings just lose to it.
      goal.inform_slots["genre"] = kb.value(row, "genre");
    }

    goal.request_slots.insert("ticket");
    std::vector<std::string> candidates;
    for (const std::string& slot : kExtraRequests) {
      if (!goal.inform_slots.count(slot)) candidates.push_back(slot);
    }
    goal.request_slots.insert(candidates[rng.uniform_int(candidates.size())]);
    goals.push_back(std::move(goal));
  }
  return goals;
}

WorldData generate_world(uint64_t seed, int kb_rows, int goal_count) {
  WorldData world;
  world.ontology = default_ontology();
  Rng root(seed);
  Rng kb_rng = root.derive("kb");
  Rng goal_rng = root.derive("goals");
  world.kb = generate_kb(world.ontology, kb_rng, kb_rows);
  world.goals = generate_goals(world.ontology, world.kb, goal_rng, goal_count);
  return world;
}

}  // namespace advdialog
