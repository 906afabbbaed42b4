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

#ifndef TWEETMEDS_MODEL_NN_HPP
#define TWEETMEDS_MODEL_NN_HPP

#include <cmath>

#include "tweetmeds/types.hpp"

// Scalar-templated building blocks with hand-written backward passes.
// Every backward here is validated against central finite differences by
// the gradient-check tests.

namespace tweetmeds::model {

template <class T>
T sigmoid(T x) {
  return x >= T(0) ? T(1) / (T(1) + std::exp(-x))
                   : std::exp(x) / (T(1) + std::exp(x));
}

/// log(1 + e^x) without overflow.
template <class T>
T softplus(T x) {
  return x > T(0) ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

/// -log sigmoid(z) if y == 1 else -log(1 - sigmoid(z)).
template <class T>
T bce_from_logit(T z, int y) {
  return y ? softplus(-z) : softplus(z);
}

/// d/dz of bce_from_logit: sigmoid(z) - y.
template <class T>
T bce_grad(T z, int y) {
  return sigmoid(z) - T(y);
}

/// Exact GELU, x * Phi(x).
template <class T>
T gelu(T x) {
  return T(0.5) * x * (T(1) + std::erf(x * T(M_SQRT1_2)));
}

template <class T>
T gelu_grad(T x) {
  const T phi = std::exp(T(-0.5) * x * x) * T(0.3989422804014326779);
  return T(0.5) * (T(1) + std::erf(x * T(M_SQRT1_2))) + x * phi;
}

/// Row-wise softmax with max subtraction.
template <class T>
MatX<T> softmax_rows(const MatX<T>& logits) {
  MatX<T> out(logits.rows(), logits.cols());
  for (Eigen::Index r = 0; r < logits.rows(); ++r) {
    const T m = logits.row(r).maxCoeff();
    out.row(r) = (logits.row(r).array() - m).exp();
    out.row(r) /= out.row(r).sum();
  }
  return out;
}

/// Given probs = softmax_rows(logits) and d(loss)/d(probs), returns
/// d(loss)/d(logits).
template <class T>
MatX<T> softmax_rows_backward(const MatX<T>& probs, const MatX<T>& dprobs) {
  MatX<T> out(probs.rows(), probs.cols());
  for (Eigen::Index r = 0; r < probs.rows(); ++r) {
    const T dot = probs.row(r).cwiseProduct(dprobs.row(r)).sum();
    out.row(r) = probs.row(r).cwiseProduct(dprobs.row(r).array() - dot);
  }
  return out;
}

template <class T>
struct LayerNormCache {
  MatX<T> xhat;     // normalized rows
  VecX<T> inv_std;  // per row
};

inline constexpr double kLayerNormEps = 1e-5;

/// Per-row layer norm: gamma .* (x - mean)/sqrt(var + eps) + beta.
template <class T>
MatX<T> layer_norm_forward(const MatX<T>& x, const MatX<T>& gamma,
                           const MatX<T>& beta, LayerNormCache<T>& cache) {
  const Eigen::Index d = x.cols();
  cache.xhat.resize(x.rows(), d);
  cache.inv_std.resize(x.rows());
  MatX<T> out(x.rows(), d);
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const T mean = x.row(r).mean();
    const T var = (x.row(r).array() - mean).square().sum() / T(d);
    const T istd = T(1) / std::sqrt(var + T(kLayerNormEps));
    cache.inv_std(r) = istd;
    cache.xhat.row(r) = (x.row(r).array() - mean) * istd;
    out.row(r) =
        cache.xhat.row(r).cwiseProduct(gamma.row(0)) + beta.row(0);
  }
  return out;
}

template <class T>
MatX<T> layer_norm_backward(const LayerNormCache<T>& cache,
                            const MatX<T>& gamma, const MatX<T>& dy,
                            MatX<T>& dgamma, MatX<T>& dbeta) {
  const Eigen::Index d = dy.cols();
  MatX<T> dx(dy.rows(), d);
  for (Eigen::Index r = 0; r < dy.rows(); ++r) {
    dgamma.row(0) += dy.row(r).cwiseProduct(cache.xhat.row(r));
    dbeta.row(0) += dy.row(r);
    const RowVecX<T> dxhat = dy.row(r).cwiseProduct(gamma.row(0));
    const T m1 = dxhat.mean();
    const T m2 = dxhat.cwiseProduct(cache.xhat.row(r)).mean();
    dx.row(r) = cache.inv_std(r) *
                (dxhat.array() - m1 - cache.xhat.row(r).array() * m2);
  }
  return dx;
}

}  // namespace tweetmeds::model

#endif  // TWEETMEDS_MODEL_NN_HPP
