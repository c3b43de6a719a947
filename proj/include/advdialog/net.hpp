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
// Single-hidden-layer tanh networks with hand-rolled backprop and RMSProp.
// Policy, critics and the discriminator all share this machinery; only the
// loss layers differ.

#ifndef ADVDIALOG_NET_HPP_
#define ADVDIALOG_NET_HPP_

#include <functional>

#include "advdialog/types.hpp"

namespace advdialog {

// x -> w2 * tanh(w1 x + b1) + b2. Outputs are pre-activation scores; loss
// layers apply softmax / sigmoid / identity on top.
struct DenseNet {
  Matrix w1;  // hidden x in
  Vector b1;
  Matrix w2;  // out x hidden
  Vector b2;

  int in_dim() const { return static_cast<int>(w1.cols()); }
  int hidden_dim() const { return static_cast<int>(w1.rows()); }
  int out_dim() const { return static_cast<int>(w2.rows()); }
};

// Exact equality of shapes and coefficients.
bool operator==(const DenseNet& a, const DenseNet& b);

// Glorot-uniform weights (+-sqrt(6/(fan_in+fan_out))), zero biases. Weights
// are drawn row by row so the draw order is part of the format.
DenseNet make_net(int in_dim, int hidden_dim, int out_dim, Rng& rng);

// Zero-initialized net of the same shape; sigma(0) = 0.5 everywhere, which
// the frozen-discriminator mode relies on.
DenseNet make_zero_net(int in_dim, int hidden_dim, int out_dim);

struct ForwardCache {
  Vector input;
  Vector hidden;  // tanh activations
  Vector output;
};

Vector net_forward(const DenseNet& net, const VectorRef& x);
ForwardCache net_forward_cache(const DenseNet& net, const VectorRef& x);

struct NetGrads {
  Matrix w1;
  Vector b1;
  Matrix w2;
  Vector b2;

  NetGrads() = default;
  explicit NetGrads(const DenseNet& net);
  void set_zero();
};

// Accumulates d(loss)/d(params) into `grads` given d(loss)/d(output).
void net_backward(const DenseNet& net, const ForwardCache& cache,
                  const VectorRef& output_grad, NetGrads& grads);

Vector softmax(const VectorRef& logits);
Vector log_softmax(const VectorRef& logits);

Scalar grad_norm(const NetGrads& grads);
// Scales grads so their global L2 norm is at most max_norm. Infinity (the
// default config) disables clipping.
void clip_grad_norm(NetGrads& grads, Scalar max_norm);

struct RmsPropConfig {
  Scalar lr = 0.005;
  Scalar rho = 0.9;
  Scalar eps = 1e-8;
};

struct RmsPropState {
  Matrix w1;
  Vector b1;
  Matrix w2;
  Vector b2;

  RmsPropState() = default;
  explicit RmsPropState(const DenseNet& net);
};

// acc <- rho acc + (1-rho) g^2;  p <- p - lr g / sqrt(acc + eps).
void rmsprop_step(DenseNet& net, RmsPropState& state, const NetGrads& grads,
                  const RmsPropConfig& config);

bool all_finite(const DenseNet& net);
bool all_finite(const NetGrads& grads);

// Max relative error between `analytic` and central finite differences of
// `loss` over every parameter; the net is restored before returning.
// Relative error is |a-f| / max(|a|+|f|, 1e-10).
Scalar grad_check(DenseNet& net, const NetGrads& analytic,
                  const std::function<Scalar(const DenseNet&)>& loss,
                  Scalar eps = 1e-5);

}  // namespace advdialog

#endif  // ADVDIALOG_NET_HPP_
