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

#ifndef TWEETMEDS_MODEL_MODEL_HPP
#define TWEETMEDS_MODEL_MODEL_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "tweetmeds/bio.hpp"
#include "tweetmeds/corpus.hpp"
#include "tweetmeds/metrics.hpp"
#include "tweetmeds/model/transformer.hpp"
#include "tweetmeds/preprocess.hpp"

// Desk-scale multi-task tagger: one shared encoder, a sigmoid binary head
// on the CLS position and a per-token softmax BIO head, trained on the sum
// of both losses. A word-level vocabulary stands in for subword pieces.
// Inference uses only the tag head for spans; the binary head is an
// auxiliary training signal and its probability is reported, not used to
// gate spans.

namespace tweetmeds::model {

struct Vocab {
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kCls = 2;

  std::vector<std::string> id_to_token;  // reserved markers first
  std::unordered_map<std::string, int> token_to_id;
  bool lowercased = false;

  int size() const { return static_cast<int>(id_to_token.size()); }
  /// UNK fallback; applies the vocabulary's case policy.
  int id(const std::string& surface) const;
};

/// Deterministic vocabulary over the dataset's normalized tokens, ordered
/// by frequency then lexicographically; tokens below min_freq map to UNK.
/// Throws on an empty dataset (or one with no tokens at all).
Vocab build_vocab(const Dataset& ds, std::size_t min_freq, bool case_sensitive);

struct ModelConfig {
  int d_model = 64;
  int n_layers = 2;
  int n_heads = 2;
  int d_ff = 128;
  int max_seq_len = 128;
  double dropout = 0.1;
  int tag_set_size = 3;
  bool case_sensitive = false;

  void validate() const;
  EncoderShape shape(int vocab_size) const;
};

struct TrainConfig {
  std::size_t epochs = 10;
  double lr = 1e-3;            // toy-scale default; 3e-5 at paper scale
  std::size_t batch_size = 16;  // 64 at paper scale
  std::uint64_t seed = 0;
  bool multi_task = true;
  bool tag_loss_sum = false;  // token-sum CE instead of token-mean

  void validate() const;
};

struct ForwardOutput {
  double binary_prob = 0.5;
  Matd tag_dists;  // one row per non-CLS token, rows sum to 1
};

struct Prediction {
  std::vector<Span> spans;  // offsets into the normalized text, with scores
  double binary_prob = 0.5;
};

struct LossBreakdown {
  double total = 0.0;
  double bce = 0.0;  // zero contribution when multi_task is off
  double ce = 0.0;
};

/// Loss of a forward output against the labels: BCE(binary) + CE(tags),
/// CE averaged over real tokens unless tag_loss_sum. Single-task drops the
/// BCE term, so L_multi - L_single is exactly the BCE term.
LossBreakdown compute_loss(const ForwardOutput& out, int binary_label,
                           const bio::TagSequence& tags, bool multi_task,
                           bool tag_loss_sum = false);

class TaggerModel {
 public:
  ModelConfig cfg;
  Vocab vocab;
  EncoderParams<double> params;

  /// CLS id followed by the tokens' vocabulary ids, truncated to
  /// max_seq_len.
  std::vector<int> encode_tokens(
      const std::vector<preprocess::Token>& tokens) const;

  /// Deterministic inference pass (no dropout). Throws on an id outside
  /// the vocabulary range.
  ForwardOutput forward(const std::vector<int>& ids) const;

  /// Argmax tags decoded to spans; span score is the geometric mean of the
  /// chosen tags' probabilities over the span's tokens.
  Prediction predict(const preprocess::NormalizedTweet& nt) const;

  /// Versioned JSON checkpoint (config + vocab + parameters); reloading
  /// yields bit-exact parameters and identical predictions.
  void save(const std::string& path) const;
  static TaggerModel load(const std::string& path);
};

TaggerModel init_model(const ModelConfig& cfg, const Vocab& vocab,
                       std::uint64_t seed);

/// A tweet prepared for training. Spans beyond the truncation point are
/// dropped from supervision; the binary label keeps the pre-truncation
/// value.
struct Example {
  std::string tweet_id;
  std::vector<int> ids;  // CLS first
  int binary_label = 0;
  bio::TagSequence tags;  // aligned with ids[1..]
};

std::vector<Example> prepare_examples(const Dataset& ds,
                                      const TaggerModel& model,
                                      std::vector<std::string>* warnings);

struct TrainLogEntry {
  std::size_t epoch = 0;
  double mean_loss = 0.0;
  double dev_strict_f1 = 0.0;
};

/// Minibatch Adam on the summed (or tag-only) loss; the checkpoint with
/// the best strict F1 on `dev` is returned. Deterministic given the seed.
/// Throws on a non-finite loss.
TaggerModel train(const Dataset& train_set, const Dataset& dev_set,
                  const ModelConfig& mcfg, const TrainConfig& tcfg,
                  std::size_t min_freq = 1,
                  std::vector<TrainLogEntry>* log = nullptr,
                  std::vector<std::string>* warnings = nullptr);

/// Strict-F1 of the model's predictions against a dataset's gold spans.
double strict_f1_on(const TaggerModel& model, const Dataset& ds);

/// Prediction map over a whole (normalized) dataset.
metrics::PredictionMap predict_dataset(const TaggerModel& model,
                                       const Dataset& ds);

/// Compares the analytic gradient of the loss w.r.t. every parameter
/// against central finite differences (step 1e-4, double precision) and
/// returns the max relative error; entries where both gradients are below
/// 1e-8 in magnitude are skipped.
double grad_check(TaggerModel& model, const std::vector<int>& ids,
                  int binary_label, const bio::TagSequence& tags,
                  bool multi_task = true);

}  // namespace tweetmeds::model

#endif  // TWEETMEDS_MODEL_MODEL_HPP
