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

#ifndef TWEETMEDS_ENSEMBLE_HPP
#define TWEETMEDS_ENSEMBLE_HPP

#include <string>
#include <vector>

#include "tweetmeds/corpus.hpp"
#include "tweetmeds/metrics.hpp"

// Span-level ensemble voting: a span is kept when at least k of the M
// models predict it with identical character offsets. Tweets missing from
// a prediction set count as "predicts nothing", so heterogeneous model
// outputs compose.

namespace tweetmeds::ensemble {

struct PredictionSet {
  std::string model_name;
  metrics::PredictionMap predictions;
};

struct EnsembleConfig {
  std::size_t k = 1;  // agreement threshold, 1 <= k <= M
};

/// Keeps span keys (tweet_id, start, end) appearing in >= k sets; the kept
/// span's score is the mean of the contributing scores. Overlapping
/// survivors are resolved by higher vote count, then longer span.
/// vote(k=1) is the union of the sets, vote(k=M) their intersection.
metrics::PredictionMap vote(const std::vector<PredictionSet>& sets,
                            const EnsembleConfig& cfg);

struct TuneResult {
  std::size_t best_k = 1;
  metrics::Metrics best;  // strict metrics at best_k
  std::vector<std::pair<std::size_t, metrics::Metrics>> sweep;
};

/// Evaluates vote() under strict F1 for every k in 1..M; ties break toward
/// larger k (higher precision).
TuneResult tune_k(const std::vector<PredictionSet>& sets, const Dataset& gold);

/// Prediction-set JSONL: one {"model", "tweet_id", "spans": [...]} object
/// per tweet, so the ensemble can also consume predictions from external
/// systems.
PredictionSet load_prediction_jsonl(const std::string& path);
void save_prediction_jsonl(const PredictionSet& set, const std::string& path);

}  // namespace tweetmeds::ensemble

#endif  // TWEETMEDS_ENSEMBLE_HPP
