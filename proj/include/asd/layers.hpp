// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "asd/kernels.hpp"
#include "asd/tensor.hpp"

namespace asd {

enum class Activation { none, relu };
enum class LayerKind { conv2d, causal_dilated_conv1d, fully_connected };

struct LayerSpec {
  LayerKind kind = LayerKind::fully_connected;
  int in_channels = 0;
  int out_channels = 0;
  int kernel_h = 1;  // conv2d
  int kernel_w = 1;
  int kernel = 1;  // conv1d
  int stride = 1;
  int pad = 0;
  int dilation = 1;
  Activation activation = Activation::none;

  void validate() const;
};

struct FlopReport {
  std::vector<std::pair<std::string, std::int64_t>> per_layer;
  std::int64_t total = 0;

  void add(const std::string& id, std::int64_t flops) {
    per_layer.emplace_back(id, flops);
    total += flops;
  }
};

// FLOP conventions: 2 x multiply-accumulate for linear ops, 1 per element for
// activations and softmax.
std::int64_t flops_conv2d(const kernels::Conv2dDims& d);
std::int64_t flops_conv1d(const kernels::Conv1dDims& d);
std::int64_t flops_fc(int din, int dout);

/// Seeded Glorot-uniform init in +-sqrt(6/(fan_in+fan_out)).
void init_uniform(Tensor& t, int fan_in, int fan_out, std::mt19937_64& rng);

/// 2-d convolution over a [C,H,W] tensor (optionally activated).
class Conv2dLayer {
 public:
  Conv2dLayer() = default;
  Conv2dLayer(const LayerSpec& spec, std::mt19937_64& rng);

  Tensor forward(const Tensor& in) const;
  // Accumulates into weight/bias grads; returns grad w.r.t. input.
  Tensor backward(const Tensor& in, const Tensor& out, const Tensor& gout);

  kernels::Conv2dDims dims(const Tensor& in) const;
  std::int64_t flops(int hin, int win) const;

  LayerSpec spec;
  Tensor weight;  // [cout, cin, kh, kw]
  Tensor bias;    // [cout]
};

/// Causal dilated 1-d convolution over [C,T]. The convolution itself is
/// "valid"; callers provide (kernel-1)*dilation timesteps of left context
/// (zeros at stream start), so output t never sees input after t.
class CausalConv1dLayer {
 public:
  CausalConv1dLayer() = default;
  CausalConv1dLayer(const LayerSpec& spec, std::mt19937_64& rng);

  Tensor forward(const Tensor& in) const;
  Tensor backward(const Tensor& in, const Tensor& out, const Tensor& gout);

  int left_context() const { return (spec.kernel - 1) * spec.dilation; }
  std::int64_t flops(int tout) const;

  LayerSpec spec;
  Tensor weight;  // [cout, cin, k]
  Tensor bias;    // [cout]
};

/// Affine map over a flat [D] tensor.
class FullyConnectedLayer {
 public:
  FullyConnectedLayer() = default;
  FullyConnectedLayer(int din, int dout, Activation act, std::mt19937_64& rng);

  Tensor forward(const Tensor& in) const;
  Tensor backward(const Tensor& in, const Tensor& out, const Tensor& gout);

  std::int64_t flops() const;

  Activation activation = Activation::none;
  Tensor weight;  // [dout, din]
  Tensor bias;    // [dout]
};

/// -log softmax(logits)[target] for a 2-class head, log-sum-exp stabilized.
/// grad_logits = softmax - onehot(target).
double softmax_ce_loss(const Tensor& logits, int target, Tensor* grad_logits);

/// Probability of class 1 from 2 logits.
double softmax_prob1(const double* logits);

/// SGD with Nesterov momentum: v <- mu*v + g; p <- p - lr*(g + mu*v).
class SgdNesterov {
 public:
  SgdNesterov(double lr, double momentum) : lr_(lr), momentum_(momentum) {}

  void step(const std::vector<Tensor*>& params);

  double lr() const { return lr_; }
  void set_lr(double lr) { lr_ = lr; }

 private:
  double lr_ = 0.01;
  double momentum_ = 0.9;
  std::vector<std::vector<double>> velocity_;
};

}  // namespace asd
