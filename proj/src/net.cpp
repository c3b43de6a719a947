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

#include "advdialog/net.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace advdialog {
namespace {

void check_dims(int in_dim, int hidden_dim, int out_dim) {
  if (in_dim <= 0 || hidden_dim <= 0 || out_dim <= 0) {
    throw std::invalid_argument("net dimensions must be positive");
  }
}

}  // namespace

bool operator==(const DenseNet& a, const DenseNet& b) {
  return a.w1.rows() == b.w1.rows() && a.w1.cols() == b.w1.cols() &&
         a.w2.rows() == b.w2.rows() && a.w2.cols() == b.w2.cols() &&
         a.w1 == b.w1 && a.b1 == b.b1 && a.w2 == b.w2 && a.b2 == b.b2;
}

DenseNet make_net(int in_dim, int hidden_dim, int out_dim, Rng& rng) {
  check_dims(in_dim, hidden_dim, out_dim);
  DenseNet net;
  net.w1 = Matrix(hidden_dim, in_dim);
  net.b1 = Vector::Zero(hidden_dim);
  net.w2 = Matrix(out_dim, hidden_dim);
  net.b2 = Vector::Zero(out_dim);
  const Scalar lim1 = std::sqrt(6.0 / (in_dim + hidden_dim));
  for (int i = 0; i < hidden_dim; ++i) {
    for (int j = 0; j < in_dim; ++j) net.w1(i, j) = rng.uniform_real(-lim1, lim1);
  }
  const Scalar lim2 = std::sqrt(6.0 / (hidden_dim + out_dim));
  for (int i = 0; i < out_dim; ++i) {
    for (int j = 0; j < hidden_dim; ++j) net.w2(i, j) = rng.uniform_real(-lim2, lim2);
  }
  return net;
}

DenseNet make_zero_net(int in_dim, int hidden_dim, int out_dim) {
  check_dims(in_dim, hidden_dim, out_dim);
  DenseNet net;
  net.w1 = Matrix::Zero(hidden_dim, in_dim);
  net.b1 = Vector::Zero(hidden_dim);
  net.w2 = Matrix::Zero(out_dim, hidden_dim);
  net.b2 = Vector::Zero(out_dim);
  return net;
}

Vector net_forward(const DenseNet& net, const VectorRef& x) {
  if (x.size() != net.in_dim()) throw std::invalid_argument("net input size mismatch");
  return net.w2 * (net.w1 * x + net.b1).array().tanh().matrix() + net.b2;
}

ForwardCache net_forward_cache(const DenseNet& net, const VectorRef& x) {
  if (x.size() != net.in_dim()) throw std::invalid_argument("net input size mismatch");
  ForwardCache cache;
  cache.input = x;
  cache.hidden = (net.w1 * x + net.b1).array().tanh().matrix();
  cache.output = net.w2 * cache.hidden + net.b2;
  return cache;
}

NetGrads::NetGrads(const DenseNet& net)
    : w1(Matrix::Zero(net.w1.rows(), net.w1.cols())),
      b1(Vector::Zero(net.b1.size())),
      w2(Matrix::Zero(net.w2.rows(), net.w2.cols())),
      b2(Vector::Zero(net.b2.size())) {}

void NetGrads::set_zero() {
  w1.setZero();
  b1.setZero();
  w2.setZero();
  b2.setZero();
}

void net_backward(const DenseNet& net, const ForwardCache& cache,
                  const VectorRef& output_grad, NetGrads& grads) {
  if (output_grad.size() != net.out_dim()) {
    throw std::invalid_argument("output grad size mismatch");
  }
  grads.w2.noalias() += output_grad * cache.hidden.transpose();
  grads.b2 += output_grad;
  const Vector dh = net.w2.transpose() * output_grad;
  const Vector dz1 =
      (dh.array() * (1.0 - cache.hidden.array().square())).matrix();
  grads.w1.noalias() += dz1 * cache.input.transpose();
  grads.b1 += dz1;
}

Vector softmax(const VectorRef& logits) {
  const Scalar m = logits.maxCoeff();
  const Vector e = (logits.array() - m).exp().matrix();
  return e / e.sum();
}

Vector log_softmax(const VectorRef& logits) {
  const Scalar m = logits.maxCoeff();
  const Scalar lse = std::log((logits.array() - m).exp().sum());
  return (logits.array() - m - lse).matrix();
}

Scalar grad_norm(const NetGrads& grads) {
  return std::sqrt(grads.w1.squaredNorm() + grads.b1.squaredNorm() +
                   grads.w2.squaredNorm() + grads.b2.squaredNorm());
}

void clip_grad_norm(NetGrads& grads, Scalar max_norm) {
  if (!(max_norm > 0)) throw std::invalid_argument("max_norm must be positive");
  if (std::isinf(max_norm)) return;
  const Scalar norm = grad_norm(grads);
  if (norm <= max_norm) return;
  const Scalar scale = max_norm / norm;
  grads.w1 *= scale;
  grads.b1 *= scale;
  grads.w2 *= scale;
  grads.b2 *= scale;
}

RmsPropState::RmsPropState(const DenseNet& net)
    : w1(Matrix::Zero(net.w1.rows(), net.w1.cols())),
      b1(Vector::Zero(net.b1.size())),
      w2(Matrix::Zero(net.w2.rows(), net.w2.cols())),
      b2(Vector::Zero(net.b2.size())) {}

namespace {

void rmsprop_apply(Eigen::Ref<Matrix> param, Eigen::Ref<Matrix> acc,
                   const Matrix& grad, const RmsPropConfig& c) {
  acc.array() = c.rho * acc.array() + (1.0 - c.rho) * grad.array().square();
  param.array() -= c.lr * grad.array() / (acc.array() + c.eps).sqrt();
}

void rmsprop_apply(Eigen::Ref<Vector> param, Eigen::Ref<Vector> acc,
                   const Vector& grad, const RmsPropConfig& c) {
  acc.array() = c.rho * acc.array() + (1.0 - c.rho) * grad.array().square();
  param.array() -= c.lr * grad.array() / (acc.array() + c.eps).sqrt();
}

}  // namespace

void rmsprop_step(DenseNet& net, RmsPropState& state, const NetGrads& grads,
                  const RmsPropConfig& config) {
  rmsprop_apply(net.w1, state.w1, grads.w1, config);
  rmsprop_apply(net.b1, state.b1, grads.b1, config);
  rmsprop_apply(net.w2, state.w2, grads.w2, config);
  rmsprop_apply(net.b2, state.b2, grads.b2, config);
}

bool all_finite(const DenseNet& net) {
  return net.w1.allFinite() && net.b1.allFinite() && net.w2.allFinite() &&
         net.b2.allFinite();
}

bool all_finite(const NetGrads& grads) {
  return grads.w1.allFinite() && grads.b1.allFinite() && grads.w2.allFinite() &&
         grads.b2.allFinite();
}

Scalar grad_check(DenseNet& net, const NetGrads& analytic,
                  const std::function<Scalar(const DenseNet&)>& loss, Scalar eps) {
  struct Block {
    Scalar* param;
    const Scalar* grad;
    Eigen::Index size;
  };
  const Block blocks[] = {
      {net.w1.data(), analytic.w1.data(), net.w1.size()},
      {net.b1.data(), analytic.b1.data(), net.b1.size()},
      {net.w2.data(), analytic.w2.data(), net.w2.size()},
      {net.b2.data(), analytic.b2.data(), net.b2.size()},
  };
  Scalar worst = 0.0;
  for (const Block& block : blocks) {
    for (Eigen::Index i = 0; i < block.size; ++i) {
      const Scalar saved = block.param[i];
      block.param[i] = saved + eps;
      const Scalar up = loss(net);
      block.param[i] = saved - eps;
      const Scalar down = loss(net);
      block.param[i] = saved;
      const Scalar fd = (up - down) / (2.0 * eps);
      const Scalar a = block.grad[i];
      const Scalar denom = std::max(std::abs(a) + std::abs(fd), 1e-10);
      worst = std::max(worst, std::abs(a - fd) / denom);
    }
  }
  return worst;
}

}  // namespace advdialog
