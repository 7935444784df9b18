// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "asd/geometry.hpp"
#include "asd/tensor.hpp"

namespace asd {

/// Interleaved multichannel PCM; floats match the on-disk meeting format.
struct MultiChannelAudio {
  int sample_rate = 16000;
  int channels = 1;
  std::vector<float> samples;  // frame-major: samples[frame*channels + ch]

  std::int64_t frames() const {
    return channels ? static_cast<std::int64_t>(samples.size()) / channels : 0;
  }
};

struct StftParams {
  int window = 512;
  int hop = 160;
  int fft_bins = 512;

  int freq_bins() const { return fft_bins / 2 + 1; }
  int frame_count(std::int64_t n) const {
    return n < window ? 0 : static_cast<int>((n - window) / hop) + 1;
  }
};

/// Hann-windowed one-sided STFT without center padding (frame f covers
/// samples [f*hop, f*hop+window)). Row-major [T_B, F].
struct Spectrogram {
  int frames = 0;
  int bins = 0;
  std::vector<std::complex<double>> values;

  const std::complex<double>& at(int t, int f) const { return values[static_cast<size_t>(t) * bins + f]; }
};

Spectrogram stft(const std::vector<double>& signal, const StftParams& p);

inline constexpr double kLogMagEpsilon = 1e-6;

/// [2M, T_B, F] feature tensor: plane 2m = log(|S^m|+eps), plane 2m+1 = arg(S^m).
Tensor extract_features(const MultiChannelAudio& audio, const StftParams& p,
                        double eps = kLogMagEpsilon);

/// Last `count` frames of one channel ending at `end_frame` (exclusive),
/// zero-padded on the left before the recording starts.
std::vector<double> channel_slice_ending(const MultiChannelAudio& a, int channel,
                                         std::int64_t end_frame, std::int64_t count);

/// Cyclic ring-mic permutation: output channel m takes input channel
/// (m - k) mod ring_count; center mic stays. The returned azimuth offset
/// 2*pi*k/ring_count must be added to every spatial-query azimuth so the
/// swapped audio reads as the scene rotated by that angle.
struct ChannelSwapResult {
  double azimuth_offset = 0.0;
};

ChannelSwapResult channel_swap(MultiChannelAudio& audio, int k, const ArrayGeometry& g);
ChannelSwapResult channel_swap_features(Tensor& features, int k, const ArrayGeometry& g);

}  // namespace asd
