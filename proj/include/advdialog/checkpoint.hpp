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
// Checkpoint persistence (`advdialog-ckpt v1`). A text skeleton carries
// section headers and metadata; parameter and demonstration payloads are
// raw little-endian float64 blocks, row-major. Parameters only, no
// optimizer state, so reruns reproduce files byte for byte.

#ifndef ADVDIALOG_CHECKPOINT_HPP_
#define ADVDIALOG_CHECKPOINT_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "advdialog/net.hpp"
#include "advdialog/types.hpp"

namespace advdialog {

// Demonstration (state, action) pairs the discriminator treats as real.
struct DemoBuffer {
  std::vector<Vector> states;
  std::vector<int> actions;

  int size() const { return static_cast<int>(states.size()); }
  bool operator==(const DemoBuffer& other) const;
};

// Layout on disk:
//   advdialog-ckpt v1
//   meta <key> <value>                      (sorted by key)
//   net <name> <in> <hidden> <out>          (+ w1,b1,w2,b2 payload)
//   demos <count> <dim>                     (+ states,actions payload)
//   end
struct Checkpoint {
  std::vector<std::pair<std::string, DenseNet>> nets;  // file order
  std::optional<DemoBuffer> demos;
  std::map<std::string, std::string> meta;

  const DenseNet& net(const std::string& name) const;  // throws if absent
  bool has_net(const std::string& name) const;
};

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace advdialog

#endif  // ADVDIALOG_CHECKPOINT_HPP_
