// Copyright 2026 The tweetmeds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TWEETMEDS_MODEL_TRANSFORMER_HPP
#define TWEETMEDS_MODEL_TRANSFORMER_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tweetmeds/model/nn.hpp"
#include "tweetmeds/types.hpp"

// Post-norm transformer encoder (learned token + position embeddings; per
// layer multi-head self-attention and a position-wise feed-forward block,
// each with residual + layer norm) plus a sigmoid head on the CLS position
// and a per-token softmax tag head. One unpadded sequence per forward pass;
// batching is gradient accumulation.

namespace tweetmeds::model {

template <class T>
struct Linear {
  MatX<T> w;  // in x out
  MatX<T> b;  // 1 x out
};

template <class T>
struct LayerNormP {
  MatX<T> gamma;  // 1 x d
  MatX<T> beta;   // 1 x d
};

template <class T>
struct EncoderLayerP {
  Linear<T> wq, wk, wv, wo;
  LayerNormP<T> ln1;
  Linear<T> ff1, ff2;
  LayerNormP<T> ln2;
};

template <class T>
struct EncoderParams {
  MatX<T> tok_emb;  // vocab x d
  MatX<T> pos_emb;  // max_seq_len x d
  std::vector<EncoderLayerP<T>> layers;
  Linear<T> bin_head;  // d x 1
  Linear<T> tag_head;  // d x tag_set_size
};

/// Applies f(name, matrix) to every parameter tensor in a fixed order; the
/// same order drives the optimizer state, the checkpoint format and the
/// gradient check. P is EncoderParams<T> or const EncoderParams<T>.
template <class P, class F>
void visit_params(P& p, F&& f) {
  f("tok_emb", p.tok_emb);
  f("pos_emb", p.pos_emb);
  for (std::size_t l = 0; l < p.layers.size(); ++l) {
    const std::string pre = "layer" + std::to_string(l) + ".";
    auto& lp = p.layers[l];
    f(pre + "wq.w", lp.wq.w);   f(pre + "wq.b", lp.wq.b);
    f(pre + "wk.w", lp.wk.w);   f(pre + "wk.b", lp.wk.b);
    f(pre + "wv.w", lp.wv.w);   f(pre + "wv.b", lp.wv.b);
    f(pre + "wo.w", lp.wo.w);   f(pre + "wo.b", lp.wo.b);
    f(pre + "ln1.gamma", lp.ln1.gamma);
    f(pre + "ln1.beta", lp.ln1.beta);
    f(pre + "ff1.w", lp.ff1.w); f(pre + "ff1.b", lp.ff1.b);
    f(pre + "ff2.w", lp.ff2.w); f(pre + "ff2.b", lp.ff2.b);
    f(pre + "ln2.gamma", lp.ln2.gamma);
    f(pre + "ln2.beta", lp.ln2.beta);
  }
  f("bin_head.w", p.bin_head.w);
  f("bin_head.b", p.bin_head.b);
  f("tag_head.w", p.tag_head.w);
  f("tag_head.b", p.tag_head.b);
}

template <class T>
std::vector<std::pair<std::string, MatX<T>*>> param_list(EncoderParams<T>& p) {
  std::vector<std::pair<std::string, MatX<T>*>> out;
  visit_params(p, [&](const std::string& name, MatX<T>& m) {
    out.emplace_back(name, &m);
  });
  return out;
}

struct EncoderShape {
  int vocab_size = 0;
  int d_model = 64;
  int n_layers = 2;
  int n_heads = 2;
  int d_ff = 128;
  int max_seq_len = 128;
  int tag_set_size = 3;
  double dropout = 0.0;
};

namespace detail {

inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller; avoids std::normal_distribution so the stream does not
// depend on the standard library implementation
inline double unit_normal(std::mt19937_64& rng) {
  double u1 = unit_uniform(rng);
  while (u1 <= 0.0) u1 = unit_uniform(rng);
  const double u2 = unit_uniform(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

template <class T>
void xavier_init(MatX<T>& m, Eigen::Index rows, Eigen::Index cols,
                 std::mt19937_64& rng) {
  m.resize(rows, cols);
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = static_cast<T>((2.0 * unit_uniform(rng) - 1.0) * limit);
}

}  // namespace detail

/// Xavier-initialized projections, N(0, 0.02) embeddings, identity layer
/// norms and zero heads (so a fresh model outputs 0.5 / uniform tags).
template <class T>
EncoderParams<T> init_encoder(const EncoderShape& s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  EncoderParams<T> p;
  p.tok_emb.resize(s.vocab_size, s.d_model);
  for (Eigen::Index r = 0; r < p.tok_emb.rows(); ++r)
    for (Eigen::Index c = 0; c < p.tok_emb.cols(); ++c)
      p.tok_emb(r, c) = static_cast<T>(0.02 * detail::unit_normal(rng));
  p.pos_emb.resize(s.max_seq_len, s.d_model);
  for (Eigen::Index r = 0; r < p.pos_emb.rows(); ++r)
    for (Eigen::Index c = 0; c < p.pos_emb.cols(); ++c)
      p.pos_emb(r, c) = static_cast<T>(0.02 * detail::unit_normal(rng));

  p.layers.resize(s.n_layers);
  for (auto& lp : p.layers) {
    for (Linear<T>* lin : {&lp.wq, &lp.wk, &lp.wv, &lp.wo}) {
      detail::xavier_init(lin->w, s.d_model, s.d_model, rng);
      lin->b = MatX<T>::Zero(1, s.d_model);
    }
    detail::xavier_init(lp.ff1.w, s.d_model, s.d_ff, rng);
    lp.ff1.b = MatX<T>::Zero(1, s.d_ff);
    detail::xavier_init(lp.ff2.w, s.d_ff, s.d_model, rng);
    lp.ff2.b = MatX<T>::Zero(1, s.d_model);
    lp.ln1.gamma = MatX<T>::Ones(1, s.d_model);
    lp.ln1.beta = MatX<T>::Zero(1, s.d_model);
    lp.ln2.gamma = MatX<T>::Ones(1, s.d_model);
    lp.ln2.beta = MatX<T>::Zero(1, s.d_model);
  }
  p.bin_head.w = MatX<T>::Zero(s.d_model, 1);
  p.bin_head.b = MatX<T>::Zero(1, 1);
  p.tag_head.w = MatX<T>::Zero(s.d_model, s.tag_set_size);
  p.tag_head.b = MatX<T>::Zero(1, s.tag_set_size);
  return p;
}

template <class T>
EncoderParams<T> zeros_like(const EncoderParams<T>& p) {
  EncoderParams<T> z = p;
  visit_params(z, [](const std::string&, MatX<T>& m) { m.setZero(); });
  return z;
}

template <class T>
struct LayerActs {
  MatX<T> x_in;
  MatX<T> q, k, v;
  std::vector<MatX<T>> att;  // per-head attention probabilities, L x L
  MatX<T> concat, attn_proj, attn_mask, res1;
  LayerNormCache<T> ln1c;
  MatX<T> ln1_out;
  MatX<T> ff_pre, ff_act, ff_out, ff_mask, res2;
  LayerNormCache<T> ln2c;
  MatX<T> ln2_out;
};

template <class T>
struct EncoderActs {
  MatX<T> emb;       // token + position embeddings
  MatX<T> emb_mask;  // dropout mask (empty in eval mode)
  std::vector<LayerActs<T>> layers;

  const MatX<T>& out() const {
    return layers.empty() ? emb_dropped : layers.back().ln2_out;
  }
  MatX<T> emb_dropped;  // encoder input after embedding dropout
};

namespace detail {

template <class T>
MatX<T> dropout_mask(Eigen::Index rows, Eigen::Index cols, double rate,
                     std::mt19937_64& rng) {
  MatX<T> mask(rows, cols);
  const T scale = static_cast<T>(1.0 / (1.0 - rate));
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      mask(r, c) = unit_uniform(rng) < rate ? T(0) : scale;
  return mask;
}

template <class T>
MatX<T> linear_forward(const Linear<T>& lin, const MatX<T>& x) {
  return (x * lin.w).rowwise() + lin.b.row(0);
}

template <class T>
MatX<T> linear_backward(const Linear<T>& lin, const MatX<T>& x,
                        const MatX<T>& dy, Linear<T>& grad) {
  grad.w += x.transpose() * dy;
  grad.b.row(0) += dy.colwise().sum();
  return dy * lin.w.transpose();
}

}  // namespace detail

/// Forward pass over one sequence of embedded ids. `rng` non-null enables
/// dropout (training mode). Returns the final hidden states via acts.out().
template <class T>
const MatX<T>& encoder_forward(const EncoderParams<T>& p,
                               const EncoderShape& shape,
                               const std::vector<int>& ids,
                               std::mt19937_64* rng, EncoderActs<T>& acts) {
  const auto L = static_cast<Eigen::Index>(ids.size());
  const int dh = shape.d_model / shape.n_heads;
  const T scale = static_cast<T>(1.0 / std::sqrt(static_cast<double>(dh)));
  const bool drop = rng != nullptr && shape.dropout > 0.0;

  acts.emb.resize(L, shape.d_model);
  for (Eigen::Index i = 0; i < L; ++i)
    acts.emb.row(i) = p.tok_emb.row(ids[i]) + p.pos_emb.row(i);
  if (drop) {
    acts.emb_mask =
        detail::dropout_mask<T>(L, shape.d_model, shape.dropout, *rng);
    acts.emb_dropped = acts.emb.cwiseProduct(acts.emb_mask);
  } else {
    acts.emb_mask.resize(0, 0);
    acts.emb_dropped = acts.emb;
  }

  acts.layers.assign(shape.n_layers, LayerActs<T>{});
  const MatX<T>* x = &acts.emb_dropped;
  for (int l = 0; l < shape.n_layers; ++l) {
    LayerActs<T>& a = acts.layers[l];
    const EncoderLayerP<T>& lp = p.layers[l];
    a.x_in = *x;
    a.q = detail::linear_forward(lp.wq, a.x_in);
    a.k = detail::linear_forward(lp.wk, a.x_in);
    a.v = detail::linear_forward(lp.wv, a.x_in);
    a.att.resize(shape.n_heads);
    a.concat.resize(L, shape.d_model);
    for (int h = 0; h < shape.n_heads; ++h) {
      const auto qh = a.q.middleCols(h * dh, dh);
      const auto kh = a.k.middleCols(h * dh, dh);
      const auto vh = a.v.middleCols(h * dh, dh);
      const MatX<T> scores = qh * kh.transpose() * scale;
      a.att[h] = softmax_rows(scores);
      a.concat.middleCols(h * dh, dh) = a.att[h] * vh;
    }
    a.attn_proj = detail::linear_forward(lp.wo, a.concat);
    if (drop) {
      a.attn_mask =
          detail::dropout_mask<T>(L, shape.d_model, shape.dropout, *rng);
      a.res1 = a.x_in + a.attn_proj.cwiseProduct(a.attn_mask);
    } else {
      a.res1 = a.x_in + a.attn_proj;
    }
    a.ln1_out = layer_norm_forward(a.res1, lp.ln1.gamma, lp.ln1.beta, a.ln1c);

    a.ff_pre = detail::linear_forward(lp.ff1, a.ln1_out);
    a.ff_act = a.ff_pre.unaryExpr([](T v) { return gelu(v); });
    a.ff_out = detail::linear_forward(lp.ff2, a.ff_act);
    if (drop) {
      a.ff_mask =
          detail::dropout_mask<T>(L, shape.d_model, shape.dropout, *rng);
      a.res2 = a.ln1_out + a.ff_out.cwiseProduct(a.ff_mask);
    } else {
      a.res2 = a.ln1_out + a.ff_out;
    }
    a.ln2_out = layer_norm_forward(a.res2, lp.ln2.gamma, lp.ln2.beta, a.ln2c);
    x = &a.ln2_out;
  }
  return acts.out();
}

/// Accumulates parameter gradients for d(loss)/d(hidden states).
template <class T>
void encoder_backward(const EncoderParams<T>& p, const EncoderShape& shape,
                      const std::vector<int>& ids, const EncoderActs<T>& acts,
                      const MatX<T>& d_out, EncoderParams<T>& grads) {
  const auto L = static_cast<Eigen::Index>(ids.size());
  const int dh = shape.d_model / shape.n_heads;
  const T scale = static_cast<T>(1.0 / std::sqrt(static_cast<double>(dh)));

  MatX<T> dx = d_out;
  for (int l = shape.n_layers - 1; l >= 0; --l) {
    const LayerActs<T>& a = acts.layers[l];
    const EncoderLayerP<T>& lp = p.layers[l];
    EncoderLayerP<T>& lg = grads.layers[l];

    MatX<T> dres2 = layer_norm_backward(a.ln2c, lp.ln2.gamma, dx,
                                        lg.ln2.gamma, lg.ln2.beta);
    MatX<T> dln1_out = dres2;
    const MatX<T> dff_out =
        a.ff_mask.size() ? dres2.cwiseProduct(a.ff_mask).eval() : dres2;
    MatX<T> dff_act = detail::linear_backward(lp.ff2, a.ff_act, dff_out, lg.ff2);
    const MatX<T> dff_pre = dff_act.cwiseProduct(
        a.ff_pre.unaryExpr([](T v) { return gelu_grad(v); }));
    dln1_out += detail::linear_backward(lp.ff1, a.ln1_out, dff_pre, lg.ff1);

    MatX<T> dres1 = layer_norm_backward(a.ln1c, lp.ln1.gamma, dln1_out,
                                        lg.ln1.gamma, lg.ln1.beta);
    MatX<T> dx_in = dres1;
    const MatX<T> dattn_proj =
        a.attn_mask.size() ? dres1.cwiseProduct(a.attn_mask).eval() : dres1;
    const MatX<T> dconcat =
        detail::linear_backward(lp.wo, a.concat, dattn_proj, lg.wo);

    MatX<T> dq = MatX<T>::Zero(L, shape.d_model);
    MatX<T> dk = MatX<T>::Zero(L, shape.d_model);
    MatX<T> dv = MatX<T>::Zero(L, shape.d_model);
    for (int h = 0; h < shape.n_heads; ++h) {
      const auto vh = a.v.middleCols(h * dh, dh);
      const auto qh = a.q.middleCols(h * dh, dh);
      const auto kh = a.k.middleCols(h * dh, dh);
      const MatX<T> doh = dconcat.middleCols(h * dh, dh);
      const MatX<T> datt = doh * vh.transpose();
      dv.middleCols(h * dh, dh) = a.att[h].transpose() * doh;
      const MatX<T> dscores = softmax_rows_backward(a.att[h], datt);
      dq.middleCols(h * dh, dh) = dscores * kh * scale;
      dk.middleCols(h * dh, dh) = dscores.transpose() * qh * scale;
    }
    dx_in += detail::linear_backward(lp.wq, a.x_in, dq, lg.wq);
    dx_in += detail::linear_backward(lp.wk, a.x_in, dk, lg.wk);
    dx_in += detail::linear_backward(lp.wv, a.x_in, dv, lg.wv);
    dx = std::move(dx_in);
  }

  const MatX<T> demb =
      acts.emb_mask.size() ? dx.cwiseProduct(acts.emb_mask).eval() : dx;
  for (Eigen::Index i = 0; i < L; ++i) {
    grads.tok_emb.row(ids[i]) += demb.row(i);
    grads.pos_emb.row(i) += demb.row(i);
  }
}

}  // namespace tweetmeds::model

#endif  // TWEETMEDS_MODEL_TRANSFORMER_HPP
