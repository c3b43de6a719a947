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

#include "advdialog/checkpoint.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "io_util.hpp"

namespace advdialog {

static_assert(std::endian::native == std::endian::little,
              "checkpoint payloads are little-endian float64");
static_assert(sizeof(Scalar) == 8, "checkpoint payloads are float64");

bool DemoBuffer::operator==(const DemoBuffer& other) const {
  if (actions != other.actions || states.size() != other.states.size()) return false;
  for (size_t i = 0; i < states.size(); ++i) {
    if (states[i].size() != other.states[i].size() || states[i] != other.states[i]) {
      return false;
    }
  }
  return true;
}

const DenseNet& Checkpoint::net(const std::string& name) const {
  for (const auto& [net_name, net] : nets) {
    if (net_name == name) return net;
  }
  throw std::invalid_argument("checkpoint has no net '" + name + "'");
}

bool Checkpoint::has_net(const std::string& name) const {
  for (const auto& [net_name, net] : nets) {
    if (net_name == name) return true;
  }
  return false;
}

namespace {

void write_block(std::ofstream& out, const Scalar* data, std::streamsize count) {
  out.write(reinterpret_cast<const char*>(data), count * 8);
}

// Matrices persist row-major regardless of Eigen's in-memory layout.
void write_matrix(std::ofstream& out, const Matrix& m) {
  using RowMajor = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const RowMajor tmp = m;
  write_block(out, tmp.data(), tmp.size());
}

void read_block(std::ifstream& in, const std::filesystem::path& path, Scalar* data,
                std::streamsize count) {
  if (!in.read(reinterpret_cast<char*>(data), count * 8)) {
    throw ParseError(path.string() + ": truncated payload block");
  }
}

Matrix read_matrix(std::ifstream& in, const std::filesystem::path& path, int rows,
                   int cols) {
  using RowMajor = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  RowMajor tmp(rows, cols);
  read_block(in, path, tmp.data(), tmp.size());
  return tmp;
}

void expect_newline(std::ifstream& in, const std::filesystem::path& path) {
  if (in.get() != '\n') {
    throw ParseError(path.string() + ": missing newline after payload block");
  }
}

int parse_positive(const std::string& tok, const std::filesystem::path& path,
                   const char* what) {
  int v = 0;
  try {
    v = std::stoi(tok);
  } catch (const std::exception&) {
    v = 0;
  }
  if (v <= 0) {
    throw ParseError(path.string() + ": bad " + what + " '" + tok + "'");
  }
  return v;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  std::ofstream out = io::open_out(path);
  out << "advdialog-ckpt v1\n";
  for (const auto& [key, value] : ckpt.meta) {
    if (key.empty() || value.empty() ||
        key.find_first_of(" \t\r\n") != std::string::npos ||
        value.find_first_of(" \t\r\n") != std::string::npos) {
      throw std::invalid_argument("checkpoint meta entries must be single tokens");
    }
    out << "meta " << key << " " << value << "\n";
  }
  for (const auto& [name, net] : ckpt.nets) {
    if (name.empty() || name.find_first_of(" \t\r\n") != std::string::npos) {
      throw std::invalid_argument("net name must be a single token");
    }
    out << "net " << name << " " << net.in_dim() << " " << net.hidden_dim() << " "
        << net.out_dim() << "\n";
    write_matrix(out, net.w1);
    write_block(out, net.b1.data(), net.b1.size());
    write_matrix(out, net.w2);
    write_block(out, net.b2.data(), net.b2.size());
    out << "\n";
  }
  if (ckpt.demos) {
    const DemoBuffer& demos = *ckpt.demos;
    if (demos.states.size() != demos.actions.size()) {
      throw std::invalid_argument("demo buffer states/actions mismatch");
    }
    const int dim = demos.size() > 0 ? static_cast<int>(demos.states[0].size()) : 0;
    out << "demos " << demos.size() << " " << dim << "\n";
    for (const Vector& s : demos.states) {
      if (s.size() != dim) throw std::invalid_argument("ragged demo states");
      write_block(out, s.data(), s.size());
    }
    for (int a : demos.actions) {
      const Scalar v = static_cast<Scalar>(a);
      write_block(out, &v, 1);
    }
    out << "\n";
  }
  out << "end\n";
  if (!out) throw ParseError("write failed for '" + path.string() + "'");
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || io::trim(line) != "advdialog-ckpt v1") {
    throw ParseError(path.string() + ": bad header, expected 'advdialog-ckpt v1'");
  }

  Checkpoint ckpt;
  bool saw_end = false;
  while (std::getline(in, line)) {
    const std::string body = io::trim(line);
    if (body.empty()) continue;
    if (saw_end) throw ParseError(path.string() + ": content after end line");
    std::istringstream ts(body);
    std::string kind;
    ts >> kind;
    if (kind == "meta") {
      std::string key, value, extra;
      if (!(ts >> key >> value) || (ts >> extra)) {
        throw ParseError(path.string() + ": bad meta line '" + body + "'");
      }
      if (!ckpt.meta.emplace(key, value).second) {
        throw ParseError(path.string() + ": duplicate meta key '" + key + "'");
      }
    } else if (kind == "net") {
      std::string name, in_tok, hidden_tok, out_tok, extra;
      if (!(ts >> name >> in_tok >> hidden_tok >> out_tok) || (ts >> extra)) {
        throw ParseError(path.string() + ": bad net line '" + body + "'");
      }
      if (ckpt.has_net(name)) {
        throw ParseError(path.string() + ": duplicate net '" + name + "'");
      }
      const int in_dim = parse_positive(in_tok, path, "net input dim");
      const int hidden_dim = parse_positive(hidden_tok, path, "net hidden dim");
      const int out_dim = parse_positive(out_tok, path, "net output dim");
      DenseNet net;
      net.w1 = read_matrix(in, path, hidden_dim, in_dim);
      net.b1 = Vector(hidden_dim);
      read_block(in, path, net.b1.data(), hidden_dim);
      net.w2 = read_matrix(in, path, out_dim, hidden_dim);
      net.b2 = Vector(out_dim);
      read_block(in, path, net.b2.data(), out_dim);
      expect_newline(in, path);
      ckpt.nets.emplace_back(name, std::move(net));
    } else if (kind == "demos") {
      if (ckpt.demos) throw ParseError(path.string() + ": duplicate demos section");
      std::string count_tok, dim_tok, extra;
      if (!(ts >> count_tok >> dim_tok) || (ts >> extra)) {
        throw ParseError(path.string() + ": bad demos line '" + body + "'");
      }
      int count = 0;
      int dim = 0;
      try {
        count = std::stoi(count_tok);
        dim = std::stoi(dim_tok);
      } catch (const std::exception&) {
        count = -1;
      }
      if (count < 0 || dim < 0 || (count > 0 && dim <= 0)) {
        throw ParseError(path.string() + ": bad demos line '" + body + "'");
      }
      DemoBuffer demos;
      demos.states.reserve(count);
      demos.actions.reserve(count);
      for (int i = 0; i < count; ++i) {
        Vector s(dim);
        read_block(in, path, s.data(), dim);
        demos.states.push_back(std::move(s));
      }
      for (int i = 0; i < count; ++i) {
        Scalar v = 0.0;
        read_block(in, path, &v, 1);
        demos.actions.push_back(static_cast<int>(v));
      }
      expect_newline(in, path);
      ckpt.demos = std::move(demos);
    } else if (kind == "end") {
      saw_end = true;
    } else {
      throw ParseError(path.string() + ": unknown section '" + kind + "'");
    }
  }
  if (!saw_end) throw ParseError(path.string() + ": missing end line");
  return ckpt;
}

}  // namespace advdialog
