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

#include <random>
#include <set>

#include "doctest.h"
#include "test_util.hpp"

using namespace tweetmeds;
using namespace tweetmeds::ensemble;

namespace {

Span mk(std::uint32_t s, std::uint32_t e, std::optional<double> score = {}) {
  return Span{s, e, std::string(e - s, 'x'), score};
}

using Key = std::pair<std::uint32_t, std::uint32_t>;

std::set<Key> keys_of(const std::vector<Span>& spans) {
  std::set<Key> out;
  for (const Span& s : spans) out.insert({s.start, s.end});
  return out;
}

// models pick subsets of a shared non-overlapping span grid, the realistic
// setting where union/intersection laws are exact
std::vector<PredictionSet> grid_sets(std::mt19937_64& rng, std::size_t n_models,
                                     std::size_t n_tweets) {
  std::vector<std::vector<Span>> grid(n_tweets);
  for (auto& g : grid) {
    std::uint32_t pos = 0;
    const std::size_t n = rng() % 5;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t len = 1 + rng() % 4;
      g.push_back(mk(pos, pos + len, 0.5 + 0.1 * (rng() % 5)));
      pos += len + 1 + rng() % 3;
    }
  }
  std::vector<PredictionSet> sets(n_models);
  for (std::size_t m = 0; m < n_models; ++m) {
    sets[m].model_name = "m" + std::to_string(m);
    for (std::size_t t = 0; t < n_tweets; ++t) {
      std::vector<Span> spans;
      for (const Span& s : grid[t])
        if (rng() % 2) spans.push_back(s);
      if (!spans.empty() || rng() % 2)
        sets[m].predictions.emplace("t" + std::to_string(t), std::move(spans));
    }
  }
  return sets;
}

}  // namespace

TEST_SUITE("ensemble") {

TEST_CASE("vote keeps spans agreed by at least k models") {
  const Span s = mk(3, 9, 0.8);
  std::vector<PredictionSet> sets(8);
  for (std::size_t m = 0; m < 8; ++m) {
    sets[m].model_name = "m" + std::to_string(m);
    sets[m].predictions.emplace("t1", std::vector<Span>{s});
  }
  const auto kept = vote(sets, EnsembleConfig{6});
  REQUIRE(kept.count("t1"));
  REQUIRE(kept.at("t1").size() == 1);
  CHECK(kept.at("t1")[0].start == 3);
}

TEST_CASE("the run-1 vs run-2 distinction: five of eight models") {
  const Span s = mk(0, 4, 0.9);
  std::vector<PredictionSet> sets(8);
  for (std::size_t m = 0; m < 8; ++m) {
    sets[m].model_name = "m" + std::to_string(m);
    sets[m].predictions.emplace(
        "t1", m < 5 ? std::vector<Span>{s} : std::vector<Span>{});
  }
  CHECK(vote(sets, EnsembleConfig{5}).at("t1").size() == 1);
  CHECK(vote(sets, EnsembleConfig{6}).at("t1").empty());
}

TEST_CASE("k=1 is the union, k=M the intersection (grid fuzz)") {
  std::mt19937_64 rng(88);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t M = 2 + rng() % 4;
    const auto sets = grid_sets(rng, M, 1 + rng() % 3);

    std::set<std::string> ids;
    for (const auto& s : sets)
      for (const auto& [id, spans] : s.predictions) ids.insert(id);

    const auto u = vote(sets, EnsembleConfig{1});
    const auto inter = vote(sets, EnsembleConfig{M});
    for (const auto& id : ids) {
      std::set<Key> union_keys, inter_keys;
      bool first = true;
      for (const auto& s : sets) {
        const auto it = s.predictions.find(id);
        const std::set<Key> k =
            it == s.predictions.end() ? std::set<Key>{} : keys_of(it->second);
        for (const Key& x : k) union_keys.insert(x);
        if (first) {
          inter_keys = k;
          first = false;
        } else {
          std::set<Key> merged;
          for (const Key& x : inter_keys)
            if (k.count(x)) merged.insert(x);
          inter_keys = merged;
        }
      }
      CHECK(keys_of(u.at(id)) == union_keys);
      CHECK(keys_of(inter.at(id)) == inter_keys);
    }
  }
}

TEST_CASE("vote(k2) is contained in vote(k1) for k1 < k2 (fuzz)") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t M = 2 + rng() % 5;
    const auto sets = grid_sets(rng, M, 2);
    for (std::size_t k1 = 1; k1 < M; ++k1)
      for (std::size_t k2 = k1 + 1; k2 <= M; ++k2) {
        const auto a = vote(sets, EnsembleConfig{k1});
        const auto b = vote(sets, EnsembleConfig{k2});
        for (const auto& [id, spans] : b) {
          const auto ka = keys_of(a.at(id));
          for (const Key& key : keys_of(spans)) CHECK(ka.count(key));
        }
      }
  }
}

TEST_CASE("vote is invariant under the order of prediction sets") {
  std::mt19937_64 rng(19);
  auto sets = grid_sets(rng, 4, 3);
  const auto base = vote(sets, EnsembleConfig{2});
  std::swap(sets[0], sets[3]);
  std::swap(sets[1], sets[2]);
  const auto after = vote(sets, EnsembleConfig{2});
  REQUIRE(base.size() == after.size());
  for (const auto& [id, spans] : base) {
    REQUIRE(after.count(id));
    CHECK(keys_of(spans) == keys_of(after.at(id)));
  }
}

TEST_CASE("kept span score is the mean of contributing scores") {
  std::vector<PredictionSet> sets(2);
  sets[0].model_name = "a";
  sets[0].predictions.emplace("t", std::vector<Span>{mk(0, 3, 0.8)});
  sets[1].model_name = "b";
  sets[1].predictions.emplace("t", std::vector<Span>{mk(0, 3, 0.6)});
  const auto kept = vote(sets, EnsembleConfig{2});
  REQUIRE(kept.at("t").size() == 1);
  CHECK(*kept.at("t")[0].score == doctest::Approx(0.7));
}

TEST_CASE("overlapping survivors resolve by votes then length") {
  const Span A = mk(0, 5), B = mk(3, 9);
  const auto make_sets = [&](std::vector<std::vector<Span>> per_model) {
    std::vector<PredictionSet> sets(per_model.size());
    for (std::size_t m = 0; m < per_model.size(); ++m) {
      sets[m].model_name = "m" + std::to_string(m);
      sets[m].predictions.emplace("t", std::move(per_model[m]));
    }
    return sets;
  };

  // equal votes (A=2, B=2): the longer span wins
  const auto tie = vote(make_sets({{A}, {B}, {A}, {B}}), EnsembleConfig{2});
  REQUIRE(tie.at("t").size() == 1);
  CHECK(tie.at("t")[0].start == 3);
  CHECK(tie.at("t")[0].end == 9);

  // A=3 votes vs B=1: the higher vote count wins despite B being longer
  const auto beat = vote(make_sets({{A}, {A}, {A}, {B}}), EnsembleConfig{1});
  REQUIRE(beat.at("t").size() == 1);
  CHECK(beat.at("t")[0].start == 0);
  CHECK(beat.at("t")[0].end == 5);
}

TEST_CASE("k out of range is rejected") {
  std::mt19937_64 rng(3);
  const auto sets = grid_sets(rng, 3, 1);
  CHECK_THROWS_AS(vote(sets, EnsembleConfig{0}), std::invalid_argument);
  CHECK_THROWS_AS(vote(sets, EnsembleConfig{4}), std::invalid_argument);
}

TEST_CASE("tune_k") {
  const auto gold_tweet = [](const std::string& id, std::vector<Span> spans) {
    AnnotatedTweet at;
    at.tweet = {id, "u", std::string(32, 'x')};
    at.spans = std::move(spans);
    return at;
  };

  SUBCASE("single model picks k=1") {
    PredictionSet s;
    s.model_name = "only";
    s.predictions.emplace("t", std::vector<Span>{mk(0, 3)});
    Dataset gold;
    gold.tweets.push_back(gold_tweet("t", {mk(0, 3)}));
    const auto res = tune_k({s}, gold);
    CHECK(res.best_k == 1);
    CHECK(res.best.f1 == doctest::Approx(1.0));
  }

  SUBCASE("identical models tie and the tie breaks toward k = M") {
    std::vector<PredictionSet> sets(4);
    for (std::size_t m = 0; m < 4; ++m) {
      sets[m].model_name = "m" + std::to_string(m);
      sets[m].predictions.emplace("t", std::vector<Span>{mk(0, 3)});
    }
    Dataset gold;
    gold.tweets.push_back(gold_tweet("t", {mk(0, 3)}));
    const auto res = tune_k(sets, gold);
    CHECK(res.best_k == 4);
    CHECK(res.sweep.size() == 4);
  }

  SUBCASE("a middle k can win, verified against the exhaustive sweep") {
    // gold = {A}; A has two votes, the spurious B only one, so k=2 keeps
    // exactly {A} while k=1 adds the false positive and k=3 keeps nothing
    const Span A = mk(0, 4), B = mk(10, 14);
    std::vector<PredictionSet> sets(3);
    sets[0].model_name = "m0";
    sets[0].predictions.emplace("t", std::vector<Span>{A});
    sets[1].model_name = "m1";
    sets[1].predictions.emplace("t", std::vector<Span>{A});
    sets[2].model_name = "m2";
    sets[2].predictions.emplace("t", std::vector<Span>{B});
    Dataset gold;
    gold.tweets.push_back(gold_tweet("t", {A}));

    const auto res = tune_k(sets, gold);
    CHECK(res.best_k == 2);
    CHECK(res.best.f1 == doctest::Approx(1.0));
    double best = -1;
    std::size_t best_k = 0;
    for (const auto& [k, m] : res.sweep)
      if (m.f1 >= best) {
        best = m.f1;
        best_k = k;
      }
    CHECK(res.best_k == best_k);
  }
}

}  // TEST_SUITE
