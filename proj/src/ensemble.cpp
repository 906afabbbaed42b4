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

#include "tweetmeds/ensemble.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace tweetmeds::ensemble {

using nlohmann::json;

metrics::PredictionMap vote(const std::vector<PredictionSet>& sets,
                            const EnsembleConfig& cfg) {
  if (sets.empty()) throw std::invalid_argument("vote needs at least one set");
  if (cfg.k < 1 || cfg.k > sets.size())
    throw std::invalid_argument("agreement threshold k=" +
                                std::to_string(cfg.k) +
                                " outside 1.." + std::to_string(sets.size()));

  struct Candidate {
    Span span;
    std::size_t votes = 0;
    double score_sum = 0.0;
    std::size_t score_n = 0;
  };
  // tweet_id -> span key -> candidate
  std::map<std::string, std::map<std::pair<std::uint32_t, std::uint32_t>,
                                 Candidate>>
      tally;
  for (const auto& set : sets) {
    for (const auto& [id, spans] : set.predictions) {
      auto& per_tweet = tally[id];
      std::set<std::pair<std::uint32_t, std::uint32_t>> seen;  // one vote per model
      for (const Span& s : spans) {
        const auto key = std::make_pair(s.start, s.end);
        if (!seen.insert(key).second) continue;
        Candidate& c = per_tweet[key];
        c.span = s;
        ++c.votes;
        if (s.score) {
          c.score_sum += *s.score;
          ++c.score_n;
        }
      }
    }
  }

  metrics::PredictionMap out;
  for (auto& [id, per_tweet] : tally) {
    std::vector<Candidate> kept;
    for (auto& [key, c] : per_tweet)
      if (c.votes >= cfg.k) kept.push_back(c);
    // higher vote count first, then longer span, then position
    std::sort(kept.begin(), kept.end(), [](const Candidate& a,
                                           const Candidate& b) {
      if (a.votes != b.votes) return a.votes > b.votes;
      const auto la = a.span.end - a.span.start, lb = b.span.end - b.span.start;
      if (la != lb) return la > lb;
      if (a.span.start != b.span.start) return a.span.start < b.span.start;
      return a.span.end < b.span.end;
    });
    std::vector<Span> winners;
    for (const Candidate& c : kept) {
      bool overlaps = false;
      for (const Span& w : winners)
        if (c.span.start < w.end && w.start < c.span.end) {
          overlaps = true;
          break;
        }
      if (overlaps) continue;
      Span s = c.span;
      if (c.score_n > 0)
        s.score = c.score_sum / static_cast<double>(c.score_n);
      else
        s.score.reset();
      winners.push_back(std::move(s));
    }
    std::sort(winners.begin(), winners.end(),
              [](const Span& a, const Span& b) { return a.start < b.start; });
    out.emplace(id, std::move(winners));
  }
  // tweets seen in any set but with nothing kept still define the universe
  for (const auto& set : sets)
    for (const auto& [id, spans] : set.predictions)
      out.try_emplace(id);
  return out;
}

TuneResult tune_k(const std::vector<PredictionSet>& sets,
                  const Dataset& gold) {
  TuneResult res;
  for (std::size_t k = 1; k <= sets.size(); ++k) {
    const metrics::Metrics m =
        metrics::evaluate(gold, vote(sets, EnsembleConfig{k}),
                          metrics::Mode::strict);
    res.sweep.emplace_back(k, m);
    if (k == 1 || m.f1 >= res.best.f1) {  // ties break toward larger k
      res.best_k = k;
      res.best = m;
    }
  }
  return res;
}

PredictionSet load_prediction_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  PredictionSet set;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": bad JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("model") || !j.contains("tweet_id") ||
        !j.contains("spans") || !j["spans"].is_array())
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected {model, tweet_id, spans}");
    const std::string model = j["model"].get<std::string>();
    if (set.model_name.empty())
      set.model_name = model;
    else if (set.model_name != model)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": mixed model names in one prediction set");
    const std::string id = j["tweet_id"].get<std::string>();
    std::vector<Span> spans;
    for (const auto& sj : j["spans"]) {
      Span s;
      s.start = sj.at("start").get<std::uint32_t>();
      s.end = sj.at("end").get<std::uint32_t>();
      s.surface = sj.value("surface", "");
      if (sj.contains("score") && !sj["score"].is_null())
        s.score = sj["score"].get<double>();
      if (s.start >= s.end)
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": empty span for tweet " + id);
      spans.push_back(std::move(s));
    }
    std::sort(spans.begin(), spans.end(),
              [](const Span& a, const Span& b) { return a.start < b.start; });
    for (std::size_t i = 1; i < spans.size(); ++i)
      if (spans[i].start < spans[i - 1].end)
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": overlapping predicted spans for tweet " +
                                 id);
    if (!set.predictions.emplace(id, std::move(spans)).second)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": duplicate tweet id " + id);
  }
  return set;
}

void save_prediction_jsonl(const PredictionSet& set, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  for (const auto& [id, spans] : set.predictions) {
    json j{{"model", set.model_name}, {"tweet_id", id}};
    j["spans"] = json::array();
    for (const Span& s : spans) {
      json sj{{"start", s.start}, {"end", s.end}, {"surface", s.surface}};
      if (s.score) sj["score"] = *s.score;
      j["spans"].push_back(std::move(sj));
    }
    out << j.dump() << '\n';
  }
  if (!out) throw std::runtime_error("write failure on " + path);
}

}  // namespace tweetmeds::ensemble
