// SPDX-License-Identifier: Apache-2.0
#include "asd/model.hpp"

#include <cmath>
#include <stdexcept>

namespace asd {

void ModelConfig::validate() const {
  if (!use_visual && !use_audio) throw std::invalid_argument("at least one modality required");
  if (single_channel_audio && !use_audio)
    throw std::invalid_argument("single_channel_audio implies audio");
  if (use_background && !use_query)
    throw std::invalid_argument("background encoding requires the query");
  if (visual_channels.empty() || audio_channels.empty()) throw std::invalid_argument("empty backbone");
  if (tcn_dilations.empty()) throw std::invalid_argument("empty TCN");
  if (patch_stack < 1) throw std::invalid_argument("patch_stack must be >= 1");
}

ConvBackbone::ConvBackbone(int in_channels, const std::vector<int>& stage_channels,
                           std::mt19937_64& rng) {
  int cin = in_channels;
  for (int cout : stage_channels) {
    LayerSpec s;
    s.kind = LayerKind::conv2d;
    s.in_channels = cin;
    s.out_channels = cout;
    s.kernel_h = s.kernel_w = 3;
    s.stride = 2;
    s.pad = 1;
    s.activation = Activation::relu;
    stages.emplace_back(s, rng);
    cin = cout;
  }
}

Tensor ConvBackbone::forward(const Tensor& in, ConvStackTrace* trace) const {
  Tensor cur = in;
  if (trace) trace->acts.clear(), trace->acts.push_back(cur);
  for (const auto& st : stages) {
    cur = st.forward(cur);
    if (trace) trace->acts.push_back(cur);
  }
  // global average pool
  const int c = cur.shape[0];
  const std::int64_t plane = static_cast<std::int64_t>(cur.shape[1]) * cur.shape[2];
  Tensor pooled({c});
  for (int i = 0; i < c; ++i) {
    double acc = 0.0;
    const double* p = cur.ptr() + i * plane;
    for (std::int64_t j = 0; j < plane; ++j) acc += p[j];
    pooled.data[i] = acc / static_cast<double>(plane);
  }
  return pooled;
}

void ConvBackbone::backward(const ConvStackTrace& trace, const Tensor& gpooled) {
  const Tensor& last = trace.acts.back();
  const int c = last.shape[0];
  const std::int64_t plane = static_cast<std::int64_t>(last.shape[1]) * last.shape[2];
  Tensor g(last.shape);
  for (int i = 0; i < c; ++i) {
    double v = gpooled.data[i] / static_cast<double>(plane);
    double* p = g.ptr() + i * plane;
    for (std::int64_t j = 0; j < plane; ++j) p[j] = v;
  }
  for (int s = static_cast<int>(stages.size()) - 1; s >= 0; --s)
    g = stages[s].backward(trace.acts[s], trace.acts[s + 1], g);
}

QueryEncoder::QueryEncoder(int hidden, int out_dim, std::mt19937_64& rng) {
  ref1 = FullyConnectedLayer(6, hidden, Activation::relu, rng);
  ref2 = FullyConnectedLayer(hidden, hidden, Activation::relu, rng);
  bg1 = FullyConnectedLayer(6, hidden, Activation::relu, rng);
  bg2 = FullyConnectedLayer(hidden, hidden, Activation::relu, rng);
  comb = FullyConnectedLayer(2 * hidden, out_dim, Activation::none, rng);
}

namespace {
Tensor query_to_tensor(const QueryVector& v) {
  Tensor t({6});
  t.data = {v.sin_az, v.cos_az, v.sin_alt, v.cos_alt, v.width, v.dist};
  return t;
}
}  // namespace

Tensor QueryEncoder::forward(const SpatialQuery& q, bool use_background,
                             QueryEncodeTrace* trace) const {
  QueryEncodeTrace local;
  QueryEncodeTrace& t = trace ? *trace : local;
  t.bg_in.clear(), t.bg_h1.clear(), t.bg_h2.clear();

  t.ref_in = query_to_tensor(q.reference);
  t.ref_h1 = ref1.forward(t.ref_in);
  t.ref_h2 = ref2.forward(t.ref_h1);

  const int hidden = ref2.weight.shape[0];
  t.mean = Tensor({hidden});
  if (use_background && !q.background.empty()) {
    for (const auto& bv : q.background) {
      t.bg_in.push_back(query_to_tensor(bv));
      t.bg_h1.push_back(bg1.forward(t.bg_in.back()));
      t.bg_h2.push_back(bg2.forward(t.bg_h1.back()));
      for (int i = 0; i < hidden; ++i) t.mean.data[i] += t.bg_h2.back().data[i];
    }
    const double inv = 1.0 / static_cast<double>(q.background.size());
    for (double& v : t.mean.data) v *= inv;
  }

  t.comb_in = Tensor({2 * hidden});
  std::copy(t.ref_h2.data.begin(), t.ref_h2.data.end(), t.comb_in.data.begin());
  std::copy(t.mean.data.begin(), t.mean.data.end(), t.comb_in.data.begin() + hidden);
  t.out = comb.forward(t.comb_in);
  return t.out;
}

void QueryEncoder::backward(const QueryEncodeTrace& t, const Tensor& gout) {
  Tensor gcomb_in = comb.backward(t.comb_in, t.out, gout);
  const int hidden = ref2.weight.shape[0];
  Tensor gref_h2({hidden}), gmean({hidden});
  std::copy(gcomb_in.data.begin(), gcomb_in.data.begin() + hidden, gref_h2.data.begin());
  std::copy(gcomb_in.data.begin() + hidden, gcomb_in.data.end(), gmean.data.begin());

  Tensor gref_h1 = ref2.backward(t.ref_h1, t.ref_h2, gref_h2);
  ref1.backward(t.ref_in, t.ref_h1, gref_h1);

  if (!t.bg_in.empty()) {
    const double inv = 1.0 / static_cast<double>(t.bg_in.size());
    Tensor gh2({hidden});
    for (int i = 0; i < hidden; ++i) gh2.data[i] = gmean.data[i] * inv;
    for (size_t j = 0; j < t.bg_in.size(); ++j) {
      Tensor gh1 = bg2.backward(t.bg_h1[j], t.bg_h2[j], gh2);
      bg1.backward(t.bg_in[j], t.bg_h1[j], gh1);
    }
  }
}

PredictionHead::PredictionHead(int in_dim, const ModelConfig& cfg, std::mt19937_64& rng) {
  int cin = in_dim;
  for (int dil : cfg.tcn_dilations) {
    LayerSpec s;
    s.kind = LayerKind::causal_dilated_conv1d;
    s.in_channels = cin;
    s.out_channels = cfg.tcn_channels;
    s.kernel = cfg.tcn_kernel;
    s.dilation = dil;
    s.activation = Activation::relu;
    layers.emplace_back(s, rng);
    cin = cfg.tcn_channels;
  }
  std::vector<int> fc_dims = cfg.head_hidden;
  fc_dims.push_back(2);
  for (size_t i = 0; i < fc_dims.size(); ++i) {
    LayerSpec s;
    s.kind = LayerKind::causal_dilated_conv1d;  // kernel-1 conv == per-timestep FC
    s.in_channels = cin;
    s.out_channels = fc_dims[i];
    s.kernel = 1;
    s.dilation = 1;
    s.activation = i + 1 == fc_dims.size() ? Activation::none : Activation::relu;
    layers.emplace_back(s, rng);
    cin = fc_dims[i];
  }
}

int PredictionHead::receptive_field() const {
  int r = 1;
  for (const auto& l : layers) r += (l.spec.kernel - 1) * l.spec.dilation;
  return r;
}

Tensor PredictionHead::forward(const Tensor& seq, HeadTrace* trace) const {
  HeadTrace local;
  HeadTrace& t = trace ? *trace : local;
  t.acts.clear();
  t.acts.push_back(seq);
  for (const auto& l : layers) t.acts.push_back(l.forward(t.acts.back()));
  return t.acts.back();
}

Tensor PredictionHead::backward(const HeadTrace& t, const Tensor& glogits) {
  Tensor g = glogits;
  for (int i = static_cast<int>(layers.size()) - 1; i >= 0; --i)
    g = layers[i].backward(t.acts[i], t.acts[i + 1], g);
  return g;
}

Model::Model(const ModelConfig& cfg) : config(cfg) {
  config.validate();
  std::mt19937_64 rng(config.init_seed);
  // construction order is fixed; it defines the parameter layout
  if (config.use_visual) visual = ConvBackbone(config.patch_stack, config.visual_channels, rng);
  if (config.use_audio) audio = ConvBackbone(config.audio_in_planes(), config.audio_channels, rng);
  if (config.use_query) query = QueryEncoder(config.query_hidden, config.query_dim, rng);
  main_head = PredictionHead(config.embed_dim(), config, rng);
  // auxiliary heads only make sense when both modality groups are present;
  // otherwise they would duplicate the main head
  const bool aux = config.use_aux_losses && config.use_visual && config.aux_as_dim() > 0;
  if (aux) {
    aux_v_head = PredictionHead(config.visual_dim(), config, rng);
    aux_as_head = PredictionHead(config.aux_as_dim(), config, rng);
  }
}

Tensor Model::encode_visual(const Tensor& patch_stack, ConvStackTrace* trace) const {
  return visual.forward(patch_stack, trace);
}

Tensor Model::encode_audio(const Tensor& features, ConvStackTrace* trace) const {
  ++audio_forward_count;
  return audio.forward(features, trace);
}

Tensor Model::encode_query(const SpatialQuery& q, QueryEncodeTrace* trace) const {
  return query.forward(q, config.use_background, trace);
}

Tensor Model::concat_embedding(const Tensor* v_e, const Tensor* a_e, const Tensor* s_e) const {
  Tensor e({config.embed_dim()});
  double* dst = e.ptr();
  auto put = [&dst](const Tensor* t) {
    if (!t) return;
    std::copy(t->data.begin(), t->data.end(), dst);
    dst += t->data.size();
  };
  put(config.use_visual ? v_e : nullptr);
  put(config.use_audio ? a_e : nullptr);
  put(config.use_query ? s_e : nullptr);
  if (dst != e.ptr() + e.data.size()) throw std::invalid_argument("embedding parts missing");
  return e;
}

Tensor Model::concat_aux_as(const Tensor* a_e, const Tensor* s_e) const {
  Tensor e({config.aux_as_dim()});
  double* dst = e.ptr();
  auto put = [&dst](const Tensor* t) {
    if (!t) return;
    std::copy(t->data.begin(), t->data.end(), dst);
    dst += t->data.size();
  };
  put(config.use_audio ? a_e : nullptr);
  put(config.use_query ? s_e : nullptr);
  if (dst != e.ptr() + e.data.size()) throw std::invalid_argument("aux embedding parts missing");
  return e;
}

Tensor embeddings_to_sequence(const std::vector<const Tensor*>& cols, int pad_left) {
  if (cols.empty()) throw std::invalid_argument("empty embedding window");
  const int dim = static_cast<int>(cols[0]->numel());
  const int t_total = static_cast<int>(cols.size()) + pad_left;
  Tensor seq({dim, t_total});
  for (size_t i = 0; i < cols.size(); ++i) {
    if (static_cast<int>(cols[i]->numel()) != dim)
      throw std::invalid_argument("embedding dim mismatch in window");
    for (int d = 0; d < dim; ++d)
      seq.data[static_cast<std::int64_t>(d) * t_total + pad_left + static_cast<int>(i)] =
          cols[i]->data[d];
  }
  return seq;
}

Tensor Model::pad_window_seq(const std::vector<const Tensor*>& window) const {
  const int r = config.receptive_field();
  const int n = static_cast<int>(window.size());
  std::vector<const Tensor*> cols = window;
  if (n > r) cols.erase(cols.begin(), cols.begin() + (n - r));
  return embeddings_to_sequence(cols, r - static_cast<int>(cols.size()));
}

double Model::predict_window(const std::vector<const Tensor*>& window) const {
  Tensor seq = pad_window_seq(window);
  Tensor logits = main_head.forward(seq, nullptr);  // [2, 1]
  return softmax_prob1(logits.ptr());
}

std::vector<double> Model::predict_sequence(const std::vector<Tensor>& embeddings) const {
  const int r = config.receptive_field();
  std::vector<const Tensor*> cols;
  cols.reserve(embeddings.size());
  for (const auto& e : embeddings) cols.push_back(&e);
  Tensor seq = embeddings_to_sequence(cols, r - 1);
  Tensor logits = main_head.forward(seq, nullptr);  // [2, T]
  std::vector<double> probs(static_cast<size_t>(logits.shape[1]));
  const int t_total = logits.shape[1];
  for (int t = 0; t < t_total; ++t) {
    double pair[2] = {logits.data[t], logits.data[t_total + t]};
    probs[static_cast<size_t>(t)] = softmax_prob1(pair);
  }
  return probs;
}

std::vector<std::pair<std::string, Tensor*>> Model::parameters() {
  std::vector<std::pair<std::string, Tensor*>> out;
  auto add_backbone = [&out](const std::string& name, ConvBackbone& b) {
    for (size_t i = 0; i < b.stages.size(); ++i) {
      out.emplace_back(name + ".conv" + std::to_string(i) + ".weight", &b.stages[i].weight);
      out.emplace_back(name + ".conv" + std::to_string(i) + ".bias", &b.stages[i].bias);
    }
  };
  auto add_head = [&out](const std::string& name, PredictionHead& h) {
    for (size_t i = 0; i < h.layers.size(); ++i) {
      out.emplace_back(name + ".layer" + std::to_string(i) + ".weight", &h.layers[i].weight);
      out.emplace_back(name + ".layer" + std::to_string(i) + ".bias", &h.layers[i].bias);
    }
  };
  if (config.use_visual) add_backbone("visual", visual);
  if (config.use_audio) add_backbone("audio", audio);
  if (config.use_query) {
    auto add_fc = [&out](const std::string& name, FullyConnectedLayer& l) {
      out.emplace_back(name + ".weight", &l.weight);
      out.emplace_back(name + ".bias", &l.bias);
    };
    add_fc("query.ref1", query.ref1);
    add_fc("query.ref2", query.ref2);
    add_fc("query.bg1", query.bg1);
    add_fc("query.bg2", query.bg2);
    add_fc("query.comb", query.comb);
  }
  add_head("main_head", main_head);
  if (!aux_v_head.layers.empty()) add_head("aux_v_head", aux_v_head);
  if (!aux_as_head.layers.empty()) add_head("aux_as_head", aux_as_head);
  return out;
}

void Model::zero_grad() {
  for (auto& [name, t] : parameters()) {
    t->ensure_grad();
    t->zero_grad();
  }
}

FlopReport Model::count_flops() const {
  // steady-state cost of one participant prediction at one tick; the TCN and
  // FC layers produce one new timestep each
  FlopReport rep;
  if (config.use_visual) {
    int h = config.patch_h, w = config.patch_w;
    for (size_t i = 0; i < visual.stages.size(); ++i) {
      const auto& st = visual.stages[i];
      rep.add("visual.conv" + std::to_string(i), st.flops(h, w));
      kernels::Conv2dDims d{st.spec.in_channels, h, w, st.spec.out_channels, 3, 3, 2, 1};
      h = d.hout();
      w = d.wout();
    }
    rep.add("visual.pool", static_cast<std::int64_t>(visual.out_dim()) * h * w);
  }
  if (config.use_audio) {
    int h = config.audio_tb, w = config.audio_fb;
    for (size_t i = 0; i < audio.stages.size(); ++i) {
      const auto& st = audio.stages[i];
      rep.add("audio.conv" + std::to_string(i), st.flops(h, w));
      kernels::Conv2dDims d{st.spec.in_channels, h, w, st.spec.out_channels, 3, 3, 2, 1};
      h = d.hout();
      w = d.wout();
    }
    rep.add("audio.pool", static_cast<std::int64_t>(audio.out_dim()) * h * w);
  }
  if (config.use_query) {
    std::int64_t f = query.ref1.flops() + query.ref2.flops();
    f += (query.bg1.flops() + query.bg2.flops()) * config.max_background;
    f += config.query_hidden * config.max_background;  // background mean
    f += query.comb.flops();
    rep.add("query", f);
  }
  auto head_flops = [](const PredictionHead& h) {
    std::int64_t f = 0;
    for (const auto& l : h.layers) f += l.flops(1);
    f += 2;  // softmax over 2 logits
    return f;
  };
  rep.add("main_head", head_flops(main_head));
  if (!aux_v_head.layers.empty()) rep.add("aux_v_head", head_flops(aux_v_head));
  if (!aux_as_head.layers.empty()) rep.add("aux_as_head", head_flops(aux_as_head));
  return rep;
}

}  // namespace asd
