// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "asd/layers.hpp"
#include "asd/spatial_query.hpp"
#include "asd/tensor.hpp"

namespace asd {

struct ModelConfig {
  // modality toggles (the ablation axes)
  bool use_visual = true;
  bool use_audio = true;
  bool single_channel_audio = false;
  bool use_query = true;
  bool use_background = true;
  bool use_aux_losses = true;

  // visual branch
  int patch_stack = 3;  // l
  int patch_h = 120;
  int patch_w = 192;
  std::vector<int> visual_channels = {8, 16, 32, 64};  // stride-2 conv stages

  // audio branch
  int mic_count = 7;  // M; feature planes are 2M (or 2 in mono mode)
  int audio_tb = 27;
  int audio_fb = 257;
  std::vector<int> audio_channels = {8, 16, 32, 64};

  // spatial query branch
  int query_hidden = 16;
  int query_dim = 16;     // D_s
  int max_background = 3; // N

  // fusion + heads
  int tcn_channels = 64;
  int tcn_kernel = 3;
  std::vector<int> tcn_dilations = {1, 2, 4};
  std::vector<int> head_hidden = {32, 16};  // FC bottleneck before 2 logits
  double lambda_v = 0.3;
  double lambda_as = 0.3;

  std::uint64_t init_seed = 1;

  int visual_dim() const { return use_visual ? visual_channels.back() : 0; }
  int audio_dim() const { return use_audio ? audio_channels.back() : 0; }
  int query_out_dim() const { return use_query ? query_dim : 0; }
  int embed_dim() const { return visual_dim() + audio_dim() + query_out_dim(); }
  int aux_as_dim() const { return audio_dim() + query_out_dim(); }
  int audio_in_planes() const { return single_channel_audio ? 2 : 2 * mic_count; }
  int receptive_field() const {
    int r = 1;
    for (int d : tcn_dilations) r += (tcn_kernel - 1) * d;
    return r;
  }
  void validate() const;
};

struct ConvStackTrace {
  std::vector<Tensor> acts;  // acts[0] = input, then each stage's output
};

/// Stack of stride-2 conv stages followed by a global average pool.
class ConvBackbone {
 public:
  ConvBackbone() = default;
  ConvBackbone(int in_channels, const std::vector<int>& stage_channels, std::mt19937_64& rng);

  Tensor forward(const Tensor& in, ConvStackTrace* trace) const;
  void backward(const ConvStackTrace& trace, const Tensor& gpooled);

  int out_dim() const { return stages.empty() ? 0 : stages.back().spec.out_channels; }

  std::vector<Conv2dLayer> stages;
};

struct QueryEncodeTrace {
  Tensor ref_in, ref_h1, ref_h2;
  std::vector<Tensor> bg_in, bg_h1, bg_h2;
  Tensor mean, comb_in, out;
};

/// f_comb(f_ref(v_ref) (+) mean_j f_bg(v_bg_j)); the mean runs over the
/// available background heads and is the zero vector when there are none.
class QueryEncoder {
 public:
  QueryEncoder() = default;
  QueryEncoder(int hidden, int out_dim, std::mt19937_64& rng);

  Tensor forward(const SpatialQuery& q, bool use_background, QueryEncodeTrace* trace) const;
  void backward(const QueryEncodeTrace& trace, const Tensor& gout);

  FullyConnectedLayer ref1, ref2, bg1, bg2, comb;
};

struct HeadTrace {
  std::vector<Tensor> acts;  // acts[0] = embedding sequence [C,T]
};

/// TCN (causal dilated convs) + per-timestep FC bottleneck + 2 logits.
/// Sequences passed in must already carry receptive_field()-1 timesteps of
/// left context (zeros at stream start); output column t' maps to input
/// column t' + receptive_field() - 1.
class PredictionHead {
 public:
  PredictionHead() = default;
  PredictionHead(int in_dim, const ModelConfig& cfg, std::mt19937_64& rng);

  Tensor forward(const Tensor& seq, HeadTrace* trace) const;  // [2, T']
  Tensor backward(const HeadTrace& trace, const Tensor& glogits);

  int receptive_field() const;

  std::vector<CausalConv1dLayer> layers;  // TCN layers then kernel-1 FC layers
};

class Model {
 public:
  Model() = default;
  explicit Model(const ModelConfig& cfg);

  ModelConfig config;
  ConvBackbone visual;
  ConvBackbone audio;
  QueryEncoder query;
  PredictionHead main_head;
  PredictionHead aux_v_head;
  PredictionHead aux_as_head;

  Tensor encode_visual(const Tensor& patch_stack, ConvStackTrace* trace) const;
  Tensor encode_audio(const Tensor& features, ConvStackTrace* trace) const;
  Tensor encode_query(const SpatialQuery& q, QueryEncodeTrace* trace) const;

  /// e = v_e (+) a_e (+) s_e over the enabled modalities.
  Tensor concat_embedding(const Tensor* v_e, const Tensor* a_e, const Tensor* s_e) const;
  Tensor concat_aux_as(const Tensor* a_e, const Tensor* s_e) const;

  /// Speech probability from the last <=R embeddings (oldest first); shorter
  /// windows are zero-padded on the left (stream cold start).
  double predict_window(const std::vector<const Tensor*>& window) const;

  /// Full-history batch inference: probability at every timestep, equivalent
  /// to running predict_window tick by tick.
  std::vector<double> predict_sequence(const std::vector<Tensor>& embeddings) const;

  std::vector<std::pair<std::string, Tensor*>> parameters();
  void zero_grad();

  FlopReport count_flops() const;

  // number of audio-backbone forward passes, for the reuse-once-per-tick
  // accounting checks
  mutable std::int64_t audio_forward_count = 0;

 private:
  Tensor pad_window_seq(const std::vector<const Tensor*>& window) const;
};

/// Builds [C, T + pad_left] from per-tick embedding columns with zero left pad.
Tensor embeddings_to_sequence(const std::vector<const Tensor*>& cols, int pad_left);

}  // namespace asd
