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

#ifndef TWEETMEDS_METRICS_HPP
#define TWEETMEDS_METRICS_HPP

#include <map>
#include <string>
#include <vector>

#include "tweetmeds/corpus.hpp"

// Strict and overlap precision/recall/F1 over span predictions. A predicted
// span counts under strict matching only with identical boundaries, under
// overlap matching when it shares at least one character with a gold span;
// pairs are matched one-to-one (maximum bipartite matching) and counts are
// micro-aggregated over tweets.

namespace tweetmeds::metrics {

enum class Mode { strict, overlap };

struct Metrics {
  double precision = 0.0;  // tp/(tp+fp), 0 when the denominator is 0
  double recall = 0.0;     // tp/(tp+fn), 0 when the denominator is 0
  double f1 = 0.0;         // 2PR/(P+R), 0 when P+R = 0
  std::size_t tp = 0, fp = 0, fn = 0;
  Mode mode = Mode::strict;
};

/// Harmonic mean of precision and recall; 0 when p + r = 0.
double f1_score(double p, double r);

Metrics metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn,
                            Mode mode);

using PredictionMap = std::map<std::string, std::vector<Span>>;

/// Micro-averaged metrics of `pred` against `gold`. Predictions for tweet
/// ids absent from gold are an error; gold tweets without predictions count
/// as empty prediction lists. Exact-boundary pairs are matched first, then
/// longest intersection, but the matching is always maximum cardinality.
Metrics evaluate(const Dataset& gold, const PredictionMap& pred, Mode mode);

struct TableRow {
  std::string name;
  Metrics strict;
  Metrics overlap;
};

/// Aligned-text report with strict + overlap P/R/F1 as percentages with
/// one decimal.
std::string format_table(const std::vector<TableRow>& rows);

/// The same report as a JSON string.
std::string to_json(const std::vector<TableRow>& rows);

}  // namespace tweetmeds::metrics

#endif  // TWEETMEDS_METRICS_HPP
