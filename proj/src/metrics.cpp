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

#include "tweetmeds/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace tweetmeds::metrics {

double f1_score(double p, double r) {
  const double denom = p + r;
  return denom == 0.0 ? 0.0 : 2.0 * p * r / denom;
}

Metrics metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn,
                            Mode mode) {
  Metrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.mode = mode;
  m.precision = tp + fp == 0 ? 0.0
                             : static_cast<double>(tp) /
                                   static_cast<double>(tp + fp);
  m.recall = tp + fn == 0 ? 0.0
                          : static_cast<double>(tp) /
                                static_cast<double>(tp + fn);
  m.f1 = f1_score(m.precision, m.recall);
  return m;
}

namespace {

std::uint64_t intersection(const Span& a, const Span& b) {
  const std::uint32_t lo = std::max(a.start, b.start);
  const std::uint32_t hi = std::min(a.end, b.end);
  return hi > lo ? hi - lo : 0;
}

// One-to-one maximum matching between gold and predicted spans of a single
// tweet. Deterministic pair preference (exact boundaries, then longest
// intersection) followed by augmenting paths for maximum cardinality.
std::size_t match_tweet(const std::vector<Span>& gold,
                        const std::vector<Span>& pred, Mode mode) {
  const std::size_t ng = gold.size(), np = pred.size();
  std::vector<std::vector<std::size_t>> adj(ng);
  struct Pair {
    std::size_t g, p;
    bool exact;
    std::uint64_t inter;
  };
  std::vector<Pair> pairs;
  for (std::size_t g = 0; g < ng; ++g)
    for (std::size_t p = 0; p < np; ++p) {
      const bool exact =
          gold[g].start == pred[p].start && gold[g].end == pred[p].end;
      const std::uint64_t inter = intersection(gold[g], pred[p]);
      const bool edge = mode == Mode::strict ? exact : inter > 0;
      if (!edge) continue;
      adj[g].push_back(p);
      pairs.push_back({g, p, exact, inter});
    }

  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.exact != b.exact) return a.exact;
    if (a.inter != b.inter) return a.inter > b.inter;
    if (a.g != b.g) return a.g < b.g;
    return a.p < b.p;
  });
  std::vector<std::size_t> gold_match(ng, SIZE_MAX), pred_match(np, SIZE_MAX);
  for (const Pair& pr : pairs)
    if (gold_match[pr.g] == SIZE_MAX && pred_match[pr.p] == SIZE_MAX) {
      gold_match[pr.g] = pr.p;
      pred_match[pr.p] = pr.g;
    }

  // Kuhn's augmenting paths on the remaining unmatched gold spans
  std::vector<char> visited(np);
  const auto try_augment = [&](auto&& self, std::size_t g) -> bool {
    for (std::size_t p : adj[g]) {
      if (visited[p]) continue;
      visited[p] = 1;
      if (pred_match[p] == SIZE_MAX || self(self, pred_match[p])) {
        gold_match[g] = p;
        pred_match[p] = g;
        return true;
      }
    }
    return false;
  };
  for (std::size_t g = 0; g < ng; ++g) {
    if (gold_match[g] != SIZE_MAX) continue;
    std::fill(visited.begin(), visited.end(), 0);
    try_augment(try_augment, g);
  }
  return static_cast<std::size_t>(
      std::count_if(gold_match.begin(), gold_match.end(),
                    [](std::size_t m) { return m != SIZE_MAX; }));
}

}  // namespace

Metrics evaluate(const Dataset& gold, const PredictionMap& pred, Mode mode) {
  std::map<std::string, const AnnotatedTweet*> by_id;
  for (const auto& at : gold.tweets) by_id.emplace(at.tweet.id, &at);
  for (const auto& [id, spans] : pred)
    if (!by_id.count(id))
      throw std::runtime_error("prediction for unknown tweet id " + id);

  std::size_t tp = 0, fp = 0, fn = 0;
  static const std::vector<Span> kNone;
  for (const auto& [id, at] : by_id) {
    const auto it = pred.find(id);
    const std::vector<Span>& p = it == pred.end() ? kNone : it->second;
    const std::size_t matched = match_tweet(at->spans, p, mode);
    tp += matched;
    fp += p.size() - matched;
    fn += at->spans.size() - matched;
  }
  return metrics_from_counts(tp, fp, fn, mode);
}

namespace {

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%5.1f", 100.0 * v);
  return buf;
}

}  // namespace

std::string format_table(const std::vector<TableRow>& rows) {
  std::size_t width = 12;
  for (const auto& r : rows) width = std::max(width, r.name.size() + 2);
  std::string out;
  out += std::string(width, ' ') + "  Strict                 Overlap\n";
  out += std::string(width, ' ') + "  P      R      F1       P      R      F1\n";
  for (const auto& r : rows) {
    out += r.name + std::string(width - r.name.size(), ' ');
    out += "  " + pct(r.strict.precision) + "  " + pct(r.strict.recall) +
           "  " + pct(r.strict.f1);
    out += "    " + pct(r.overlap.precision) + "  " + pct(r.overlap.recall) +
           "  " + pct(r.overlap.f1) + "\n";
  }
  return out;
}

std::string to_json(const std::vector<TableRow>& rows) {
  nlohmann::json j = nlohmann::json::array();
  const auto one = [](const Metrics& m) {
    return nlohmann::json{{"precision", m.precision}, {"recall", m.recall},
                          {"f1", m.f1},               {"tp", m.tp},
                          {"fp", m.fp},               {"fn", m.fn}};
  };
  for (const auto& r : rows)
    j.push_back({{"name", r.name},
                 {"strict", one(r.strict)},
                 {"overlap", one(r.overlap)}});
  return j.dump(2);
}

}  // namespace tweetmeds::metrics
