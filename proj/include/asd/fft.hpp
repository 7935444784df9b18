// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace asd::fft {

std::size_t next_pow2(std::size_t n);

/// In-place iterative radix-2 transform; size must be a power of two.
/// inverse=true applies the 1/N scale.
void transform(std::vector<std::complex<double>>& x, bool inverse);

}  // namespace asd::fft
