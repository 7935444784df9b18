// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace asd {

/// Dense row-major f64 tensor with an optional gradient buffer of the same
/// shape. This is the carrier for every encoding in the pipeline.
struct Tensor {
  std::vector<int> shape;
  std::vector<double> data;
  std::vector<double> grad;
  bool requires_grad = false;

  Tensor() = default;
  explicit Tensor(std::vector<int> s, bool rg = false) : shape(std::move(s)), requires_grad(rg) {
    data.assign(static_cast<size_t>(numel()), 0.0);
    if (requires_grad) grad.assign(data.size(), 0.0);
  }

  std::int64_t numel() const {
    std::int64_t n = 1;
    for (int e : shape) {
      if (e <= 0) throw std::invalid_argument("non-positive tensor extent");
      n *= e;
    }
    return n;
  }

  void ensure_grad() {
    requires_grad = true;
    if (grad.size() != data.size()) grad.assign(data.size(), 0.0);
  }
  void zero_grad() {
    if (!grad.empty()) std::fill(grad.begin(), grad.end(), 0.0);
  }

  bool same_shape(const Tensor& o) const { return shape == o.shape; }
  bool all_finite() const;

  double* ptr() { return data.data(); }
  const double* ptr() const { return data.data(); }
  double* gptr() { return grad.data(); }
  const double* gptr() const { return grad.data(); }
};

std::string shape_str(const std::vector<int>& s);

}  // namespace asd
