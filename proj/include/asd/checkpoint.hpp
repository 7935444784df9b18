// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "asd/tensor.hpp"

namespace asd {

// Weight checkpoint: "ASDW" magic, u32 version, u32 parameter count, then per
// parameter a length-prefixed name, u32 rank, u32 dims, and the raw f64
// little-endian payload. Round-trips bit-exactly.
void save_checkpoint(const std::string& path,
                     const std::vector<std::pair<std::string, Tensor*>>& params);

/// Loads into an existing parameter set; names and shapes must match exactly.
void load_checkpoint(const std::string& path,
                     const std::vector<std::pair<std::string, Tensor*>>& params);

}  // namespace asd
