// SPDX-License-Identifier: Apache-2.0
#include "asd/audio_features.hpp"

#include <cmath>
#include <stdexcept>

#include "asd/fft.hpp"

namespace asd {

Spectrogram stft(const std::vector<double>& signal, const StftParams& p) {
  if (p.window <= 0 || p.hop <= 0 || p.fft_bins < p.window)
    throw std::invalid_argument("bad stft params");
  if (static_cast<std::int64_t>(signal.size()) < p.window)
    throw std::invalid_argument("signal shorter than stft window");

  std::vector<double> hann(static_cast<size_t>(p.window));
  for (int i = 0; i < p.window; ++i)
    hann[i] = 0.5 * (1.0 - std::cos(kTwoPi * i / p.window));

  Spectrogram spec;
  spec.frames = p.frame_count(static_cast<std::int64_t>(signal.size()));
  spec.bins = p.freq_bins();
  spec.values.resize(static_cast<size_t>(spec.frames) * spec.bins);

  std::vector<std::complex<double>> buf(static_cast<size_t>(p.fft_bins));
  for (int t = 0; t < spec.frames; ++t) {
    const double* frame = signal.data() + static_cast<size_t>(t) * p.hop;
    for (int i = 0; i < p.window; ++i) buf[i] = frame[i] * hann[i];
    for (int i = p.window; i < p.fft_bins; ++i) buf[i] = 0.0;
    fft::transform(buf, false);
    for (int f = 0; f < spec.bins; ++f) spec.values[static_cast<size_t>(t) * spec.bins + f] = buf[f];
  }
  return spec;
}

Tensor extract_features(const MultiChannelAudio& audio, const StftParams& p, double eps) {
  const int M = audio.channels;
  if (M <= 0) throw std::invalid_argument("audio has no channels");
  const std::int64_t n = audio.frames();
  if (n < p.window) throw std::invalid_argument("audio shorter than stft window");

  const int tb = p.frame_count(n);
  const int fb = p.freq_bins();
  Tensor out({2 * M, tb, fb});
  std::vector<double> chan(static_cast<size_t>(n));
  for (int m = 0; m < M; ++m) {
    for (std::int64_t i = 0; i < n; ++i)
      chan[static_cast<size_t>(i)] = audio.samples[static_cast<size_t>(i) * M + m];
    Spectrogram s = stft(chan, p);
    double* mag = out.ptr() + static_cast<std::int64_t>(2 * m) * tb * fb;
    double* ph = out.ptr() + static_cast<std::int64_t>(2 * m + 1) * tb * fb;
    for (int t = 0; t < tb; ++t)
      for (int f = 0; f < fb; ++f) {
        const auto& v = s.at(t, f);
        mag[static_cast<std::int64_t>(t) * fb + f] = std::log(std::abs(v) + eps);
        // atan2(0,0) == 0, which is the documented arg(0) convention
        ph[static_cast<std::int64_t>(t) * fb + f] = std::atan2(v.imag(), v.real());
      }
  }
  return out;
}

std::vector<double> channel_slice_ending(const MultiChannelAudio& a, int channel,
                                         std::int64_t end_frame, std::int64_t count) {
  if (channel < 0 || channel >= a.channels) throw std::invalid_argument("bad channel");
  std::vector<double> out(static_cast<size_t>(count), 0.0);
  const std::int64_t n = a.frames();
  for (std::int64_t i = 0; i < count; ++i) {
    std::int64_t src = end_frame - count + i;
    if (src >= 0 && src < n)
      out[static_cast<size_t>(i)] = a.samples[static_cast<size_t>(src) * a.channels + channel];
  }
  return out;
}

namespace {
int ring_perm_src(int m, int k, int ring) { return ((m - k) % ring + ring) % ring; }
}  // namespace

ChannelSwapResult channel_swap(MultiChannelAudio& audio, int k, const ArrayGeometry& g) {
  if (k < 0 || k >= g.ring_count) throw std::invalid_argument("swap index out of range");
  if (audio.channels != g.mic_count()) throw std::invalid_argument("channel count mismatch");
  if (k != 0) {
    const std::int64_t n = audio.frames();
    std::vector<float> ring(static_cast<size_t>(g.ring_count));
    for (std::int64_t i = 0; i < n; ++i) {
      float* fr = audio.samples.data() + static_cast<size_t>(i) * audio.channels;
      for (int m = 0; m < g.ring_count; ++m) ring[m] = fr[ring_perm_src(m, k, g.ring_count)];
      for (int m = 0; m < g.ring_count; ++m) fr[m] = ring[m];
    }
  }
  return {kTwoPi * k / g.ring_count};
}

ChannelSwapResult channel_swap_features(Tensor& features, int k, const ArrayGeometry& g) {
  if (k < 0 || k >= g.ring_count) throw std::invalid_argument("swap index out of range");
  const int M = g.mic_count();
  if (features.shape.size() != 3 || features.shape[0] != 2 * M)
    throw std::invalid_argument("feature tensor shape mismatch");
  if (k != 0) {
    const std::int64_t plane = static_cast<std::int64_t>(features.shape[1]) * features.shape[2];
    std::vector<double> tmp(features.data);
    for (int m = 0; m < g.ring_count; ++m) {
      int src = ring_perm_src(m, k, g.ring_count);
      for (int half = 0; half < 2; ++half)
        std::copy_n(tmp.begin() + (2 * src + half) * plane, plane,
                    features.data.begin() + (2 * m + half) * plane);
    }
  }
  return {kTwoPi * k / g.ring_count};
}

}  // namespace asd
