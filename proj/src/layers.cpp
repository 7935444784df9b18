// SPDX-License-Identifier: Apache-2.0
#include "asd/layers.hpp"

#include <cmath>
#include <stdexcept>

namespace asd {

namespace {

void apply_activation(Tensor& t, Activation act) {
  if (act != Activation::relu) return;
  for (double& v : t.data) v = v > 0.0 ? v : 0.0;
}

// gout is d(loss)/d(activated out); converts to d(loss)/d(pre-activation).
Tensor unactivate(const Tensor& out, const Tensor& gout, Activation act) {
  Tensor gz = gout;
  if (act == Activation::relu) {
    for (size_t i = 0; i < gz.data.size(); ++i)
      if (out.data[i] <= 0.0) gz.data[i] = 0.0;
  }
  return gz;
}

void check_shape(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("shape mismatch: ") + what);
}

}  // namespace

void LayerSpec::validate() const {
  if (in_channels <= 0 || out_channels <= 0) throw std::invalid_argument("bad channel counts");
  if (kind == LayerKind::conv2d && (kernel_h <= 0 || kernel_w <= 0 || stride <= 0))
    throw std::invalid_argument("bad conv2d extents");
  if (kind == LayerKind::causal_dilated_conv1d && (kernel <= 0 || dilation < 1))
    throw std::invalid_argument("bad conv1d extents");
}

std::int64_t flops_conv2d(const kernels::Conv2dDims& d) {
  return 2ll * d.cin * d.cout * d.kh * d.kw * d.hout() * d.wout();
}
std::int64_t flops_conv1d(const kernels::Conv1dDims& d) {
  return 2ll * d.cin * d.cout * d.k * d.tout();
}
std::int64_t flops_fc(int din, int dout) { return 2ll * din * dout; }

void init_uniform(Tensor& t, int fan_in, int fan_out, std::mt19937_64& rng) {
  double limit = std::sqrt(6.0 / (fan_in + fan_out));
  std::uniform_real_distribution<double> dist(-limit, limit);
  for (double& v : t.data) v = dist(rng);
}

Conv2dLayer::Conv2dLayer(const LayerSpec& s, std::mt19937_64& rng) : spec(s) {
  spec.validate();
  weight = Tensor({spec.out_channels, spec.in_channels, spec.kernel_h, spec.kernel_w}, true);
  bias = Tensor({spec.out_channels}, true);
  init_uniform(weight, spec.in_channels * spec.kernel_h * spec.kernel_w,
               spec.out_channels * spec.kernel_h * spec.kernel_w, rng);
}

kernels::Conv2dDims Conv2dLayer::dims(const Tensor& in) const {
  check_shape(in.shape.size() == 3 && in.shape[0] == spec.in_channels, "conv2d input");
  return {spec.in_channels, in.shape[1], in.shape[2],
          spec.out_channels, spec.kernel_h, spec.kernel_w,
          spec.stride, spec.pad};
}

Tensor Conv2dLayer::forward(const Tensor& in) const {
  auto d = dims(in);
  check_shape(d.hout() > 0 && d.wout() > 0, "conv2d output extent");
  Tensor out({d.cout, d.hout(), d.wout()});
  kernels::conv2d_forward(in.ptr(), weight.ptr(), bias.ptr(), out.ptr(), d);
  apply_activation(out, spec.activation);
  return out;
}

Tensor Conv2dLayer::backward(const Tensor& in, const Tensor& out, const Tensor& gout) {
  auto d = dims(in);
  Tensor gz = unactivate(out, gout, spec.activation);
  weight.ensure_grad();
  bias.ensure_grad();
  kernels::conv2d_backward_params(gz.ptr(), in.ptr(), weight.gptr(), bias.gptr(), d);
  Tensor gin(in.shape);
  kernels::conv2d_backward_input(gz.ptr(), weight.ptr(), gin.ptr(), d);
  return gin;
}

std::int64_t Conv2dLayer::flops(int hin, int win) const {
  kernels::Conv2dDims d{spec.in_channels, hin, win, spec.out_channels,
                        spec.kernel_h, spec.kernel_w, spec.stride, spec.pad};
  std::int64_t f = flops_conv2d(d);
  if (spec.activation == Activation::relu) f += static_cast<std::int64_t>(d.cout) * d.hout() * d.wout();
  return f;
}

CausalConv1dLayer::CausalConv1dLayer(const LayerSpec& s, std::mt19937_64& rng) : spec(s) {
  spec.validate();
  weight = Tensor({spec.out_channels, spec.in_channels, spec.kernel}, true);
  bias = Tensor({spec.out_channels}, true);
  init_uniform(weight, spec.in_channels * spec.kernel, spec.out_channels * spec.kernel, rng);
}

Tensor CausalConv1dLayer::forward(const Tensor& in) const {
  check_shape(in.shape.size() == 2 && in.shape[0] == spec.in_channels, "conv1d input");
  kernels::Conv1dDims d{spec.in_channels, in.shape[1], spec.out_channels, spec.kernel,
                        spec.dilation};
  check_shape(d.tout() > 0, "conv1d input shorter than receptive span");
  Tensor out({d.cout, d.tout()});
  kernels::conv1d_forward(in.ptr(), weight.ptr(), bias.ptr(), out.ptr(), d);
  apply_activation(out, spec.activation);
  return out;
}

Tensor CausalConv1dLayer::backward(const Tensor& in, const Tensor& out, const Tensor& gout) {
  kernels::Conv1dDims d{spec.in_channels, in.shape[1], spec.out_channels, spec.kernel,
                        spec.dilation};
  Tensor gz = unactivate(out, gout, spec.activation);
  weight.ensure_grad();
  bias.ensure_grad();
  kernels::conv1d_backward_params(gz.ptr(), in.ptr(), weight.gptr(), bias.gptr(), d);
  Tensor gin(in.shape);
  kernels::conv1d_backward_input(gz.ptr(), weight.ptr(), gin.ptr(), d);
  return gin;
}

std::int64_t CausalConv1dLayer::flops(int tout) const {
  kernels::Conv1dDims d{spec.in_channels, tout + left_context(), spec.out_channels, spec.kernel,
                        spec.dilation};
  std::int64_t f = flops_conv1d(d);
  if (spec.activation == Activation::relu) f += static_cast<std::int64_t>(d.cout) * tout;
  return f;
}

FullyConnectedLayer::FullyConnectedLayer(int din, int dout, Activation act, std::mt19937_64& rng)
    : activation(act) {
  if (din <= 0 || dout <= 0) throw std::invalid_argument("bad fc extents");
  weight = Tensor({dout, din}, true);
  bias = Tensor({dout}, true);
  init_uniform(weight, din, dout, rng);
}

Tensor FullyConnectedLayer::forward(const Tensor& in) const {
  int din = weight.shape[1], dout = weight.shape[0];
  check_shape(in.numel() == din, "fc input");
  Tensor out({dout});
  kernels::fc_forward(in.ptr(), weight.ptr(), bias.ptr(), out.ptr(), din, dout);
  apply_activation(out, activation);
  return out;
}

Tensor FullyConnectedLayer::backward(const Tensor& in, const Tensor& out, const Tensor& gout) {
  int din = weight.shape[1], dout = weight.shape[0];
  Tensor gz = unactivate(out, gout, activation);
  weight.ensure_grad();
  bias.ensure_grad();
  kernels::fc_backward_params(gz.ptr(), in.ptr(), weight.gptr(), bias.gptr(), din, dout);
  Tensor gin(in.shape);
  kernels::fc_backward_input(gz.ptr(), weight.ptr(), gin.ptr(), din, dout);
  return gin;
}

std::int64_t FullyConnectedLayer::flops() const {
  std::int64_t f = flops_fc(weight.shape[1], weight.shape[0]);
  if (activation == Activation::relu) f += weight.shape[0];
  return f;
}

double softmax_ce_loss(const Tensor& logits, int target, Tensor* grad_logits) {
  if (logits.numel() != 2) throw std::invalid_argument("expected 2 logits");
  if (target != 0 && target != 1) throw std::invalid_argument("target must be 0 or 1");
  double l0 = logits.data[0], l1 = logits.data[1];
  double m = l0 > l1 ? l0 : l1;
  double e0 = std::exp(l0 - m), e1 = std::exp(l1 - m);
  double lse = m + std::log(e0 + e1);
  double loss = lse - logits.data[target];
  if (grad_logits) {
    *grad_logits = Tensor({2});
    double p0 = e0 / (e0 + e1), p1 = e1 / (e0 + e1);
    grad_logits->data[0] = p0 - (target == 0 ? 1.0 : 0.0);
    grad_logits->data[1] = p1 - (target == 1 ? 1.0 : 0.0);
  }
  return loss;
}

double softmax_prob1(const double* logits) {
  double m = logits[0] > logits[1] ? logits[0] : logits[1];
  double e0 = std::exp(logits[0] - m), e1 = std::exp(logits[1] - m);
  return e1 / (e0 + e1);
}

void SgdNesterov::step(const std::vector<Tensor*>& params) {
  if (velocity_.empty()) {
    velocity_.resize(params.size());
    for (size_t i = 0; i < params.size(); ++i) velocity_[i].assign(params[i]->data.size(), 0.0);
  }
  if (velocity_.size() != params.size()) throw std::invalid_argument("optimizer param set changed");
  for (size_t i = 0; i < params.size(); ++i) {
    Tensor& p = *params[i];
    if (p.grad.size() != p.data.size()) throw std::invalid_argument("param missing grad");
    std::vector<double>& v = velocity_[i];
    if (v.size() != p.data.size()) throw std::invalid_argument("param shape changed");
    for (size_t j = 0; j < p.data.size(); ++j) {
      double g = p.grad[j];
      v[j] = momentum_ * v[j] + g;
      p.data[j] -= lr_ * (g + momentum_ * v[j]);
    }
  }
}

}  // namespace asd
