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

#ifndef ADVDIALOG_TYPES_HPP_
#define ADVDIALOG_TYPES_HPP_

#include <Eigen/Core>

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace advdialog {

// All numerics run in 64-bit floats; dense linear algebra goes through Eigen.
using Scalar = double;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using VectorRef = Eigen::Ref<const Vector>;

inline constexpr Scalar kInfinity = std::numeric_limits<Scalar>::infinity();

// Errors that should surface as a usage/config problem (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Errors from malformed input files; message carries file and line context.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Deterministic RNG used everywhere. Wraps mt19937_64 but implements its own
// uniform/int/categorical draws so the byte streams never depend on the
// standard library's distribution objects. `derive` spawns an independent
// substream keyed by a label (and optional index), computed from the
// construction seed, so substreams are stable no matter how much the parent
// has been consumed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  Scalar uniform();
  // Uniform integer in [0, n); n must be positive.
  std::int64_t uniform_int(std::int64_t n);
  // Uniform on [lo, hi).
  Scalar uniform_real(Scalar lo, Scalar hi);
  // Index draw from a probability vector (entries >= 0, summing to ~1).
  int categorical(const VectorRef& probs);

  Rng derive(std::string_view label) const;
  Rng derive(std::string_view label, std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace advdialog

#endif  // ADVDIALOG_TYPES_HPP_
