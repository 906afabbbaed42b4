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

// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "tweetmeds/augment.hpp"
#include "tweetmeds/bio.hpp"
#include "tweetmeds/corpus.hpp"
#include "tweetmeds/ensemble.hpp"
#include "tweetmeds/metrics.hpp"
#include "tweetmeds/model/model.hpp"
#include "tweetmeds/preprocess.hpp"
#include "tweetmeds/text.hpp"
#include "tweetmeds/weaklabel.hpp"

namespace tm = tweetmeds;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass,
            const std::string& detail = "") {
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << number << ": "
            << name;
  if (!detail.empty()) std::cout << " -- " << detail;
  std::cout << std::endl;
  if (!pass) ++g_failures;
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("tweetmeds-acceptance-" + std::to_string(::getpid())) /
                   name;
  std::filesystem::create_directories(dir);
  return dir;
}

// --------------------------------------------------------------------------
// 1. F1 arithmetic consistency with the reported result table

void criterion_f1_arithmetic() {
  struct Case {
    double p, r, expected;
  };
  const std::vector<Case> cases = {
      {79.9, 81.0, 80.4},  // run 2 strict
      {83.0, 76.2, 79.4},  // run 1 strict
      {89.0, 66.0, 75.8},  // baseline strict
      {84.5, 81.6, 83.0},  // run 3 overlap
  };
  bool all = true;
  std::ostringstream detail;
  for (const auto& c : cases) {
    const double pct = 100.0 * tm::metrics::f1_score(c.p / 100.0, c.r / 100.0);
    const double rounded = std::round(pct * 10.0) / 10.0;
    const bool ok = std::abs(rounded - c.expected) <= 0.05;
    if (!ok) {
      all = false;
      detail << "f1(" << c.p << "," << c.r << ") = " << pct << " rounds to "
             << rounded << ", table says " << c.expected << "; ";
    }
  }
  report(1, "F1 arithmetic consistency", all, detail.str());
}

// --------------------------------------------------------------------------
// 2. gradient correctness on random tiny configurations

void criterion_grad_check() {
  std::mt19937_64 rng(20240115);
  double worst = 0.0;
  int n_configs = 0;
  for (int iter = 0; iter < 22; ++iter) {
    tm::model::ModelConfig cfg;
    const int widths[] = {4, 8, 12, 16};
    cfg.d_model = widths[rng() % 4];
    cfg.n_heads = (rng() % 2 == 0) ? 2 : 1;
    cfg.n_layers = 1 + static_cast<int>(rng() % 2);
    cfg.d_ff = 6 + static_cast<int>(rng() % 10);
    cfg.max_seq_len = 12;
    cfg.dropout = 0.0;

    tm::Dataset ds;
    ds.tweets.push_back({{"1", "u", "a b c d e f g h"}, {}});
    const tm::model::Vocab vocab = tm::model::build_vocab(ds, 1, false);
    tm::model::TaggerModel model = tm::model::init_model(cfg, vocab, rng());
    tm::model::visit_params(model.params, [&](const std::string& name,
                                              tm::Matd& m) {
      if (name.rfind("bin_head", 0) == 0 || name.rfind("tag_head", 0) == 0)
        for (Eigen::Index r = 0; r < m.rows(); ++r)
          for (Eigen::Index c = 0; c < m.cols(); ++c)
            m(r, c) = 0.4 * (static_cast<double>(rng() % 200) / 100.0 - 1.0);
    });

    std::vector<int> ids{tm::model::Vocab::kCls};
    tm::bio::TagSequence tags;
    const std::size_t n = 2 + rng() % 6;
    for (std::size_t i = 0; i < n; ++i) {
      ids.push_back(static_cast<int>(3 + rng() % (vocab.size() - 3)));
      tags.push_back(static_cast<tm::bio::Tag>(rng() % 3));
    }
    const double err = tm::model::grad_check(
        model, ids, static_cast<int>(rng() % 2), tags, true);
    worst = std::max(worst, err);
    ++n_configs;
  }
  std::ostringstream detail;
  detail << n_configs << " configurations, max relative error " << worst;
  report(2, "gradient correctness (central differences)", worst <= 1e-3,
         detail.str());
}

// --------------------------------------------------------------------------
// 3. overfitting oracle on the bundled 50-tweet corpus

void criterion_overfit() {
  const std::string path = std::string(TWEETMEDS_DATA_DIR) +
                           "/synth/train.jsonl";
  tm::Dataset raw = tm::load_jsonl(path);
  tm::Dataset train_set = tm::preprocess::normalize_dataset(raw, nullptr);

  tm::model::ModelConfig cfg;
  cfg.d_model = 32;
  cfg.n_layers = 2;
  cfg.n_heads = 2;
  cfg.d_ff = 64;
  cfg.max_seq_len = 64;
  cfg.dropout = 0.0;
  tm::model::TrainConfig tcfg;
  tcfg.epochs = 200;
  tcfg.lr = 2e-3;
  tcfg.batch_size = 8;
  tcfg.seed = 7;

  const auto t0 = std::chrono::steady_clock::now();
  const tm::model::TaggerModel a =
      tm::model::train(train_set, train_set, cfg, tcfg, 1);
  const double f1_a = tm::model::strict_f1_on(a, train_set);
  const tm::model::TaggerModel b =
      tm::model::train(train_set, train_set, cfg, tcfg, 1);
  const double f1_b = tm::model::strict_f1_on(b, train_set);
  const auto secs = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0)
                        .count();

  std::ostringstream detail;
  detail << raw.tweets.size() << " tweets, training strict F1 " << f1_a
         << " (repeat run " << f1_b << "), " << secs << "s";
  report(3, "overfitting oracle reaches strict F1 >= 0.95 within 200 epochs",
         raw.tweets.size() == 50 && f1_a >= 0.95 && f1_a == f1_b &&
             secs <= 300.0,
         detail.str());
}

// --------------------------------------------------------------------------
// 4. multi-task loss mechanics and the comparison harness

void criterion_multitask() {
  std::mt19937_64 rng(555);
  bool identity_ok = true;
  for (int iter = 0; iter < 200 && identity_ok; ++iter) {
    tm::model::ForwardOutput out;
    out.binary_prob = 0.02 + 0.96 * static_cast<double>(rng() % 1000) / 1000.0;
    const Eigen::Index n = 1 + rng() % 8;
    out.tag_dists.resize(n, 3);
    tm::bio::TagSequence tags;
    for (Eigen::Index r = 0; r < n; ++r) {
      const double a = 1 + rng() % 20, b = 1 + rng() % 20, c = 1 + rng() % 20;
      out.tag_dists(r, 0) = a / (a + b + c);
      out.tag_dists(r, 1) = b / (a + b + c);
      out.tag_dists(r, 2) = c / (a + b + c);
      tags.push_back(static_cast<tm::bio::Tag>(rng() % 3));
    }
    const int label = static_cast<int>(rng() % 2);
    const auto multi = tm::model::compute_loss(out, label, tags, true);
    const auto single = tm::model::compute_loss(out, label, tags, false);
    const double diff = multi.total - single.total;
    if (std::abs(diff - multi.bce) >
        1e-9 * std::max(1.0, std::abs(multi.bce)))
      identity_ok = false;
  }

  // comparison harness: both arms run and land in one report
  const auto out_dir = scratch_dir("ablation");
  const std::string cmd =
      "TWEETMEDS_BIN='" + std::string(TWEETMEDS_CLI_PATH) + "' DATA_DIR='" +
      std::string(TWEETMEDS_DATA_DIR) + "/synth' OUT_DIR='" +
      out_dir.string() + "' bash '" + std::string(TWEETMEDS_SCRIPTS_DIR) +
      "/run_ablation.sh' > '" + (out_dir / "log.txt").string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  bool harness_ok = WEXITSTATUS(status) == 0;
  std::string harness_detail;
  if (harness_ok) {
    std::ifstream in(out_dir / "ablation.txt");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string table = ss.str();
    harness_ok = table.find("multi-task") != std::string::npos &&
                 table.find("single-task") != std::string::npos;
    harness_detail = "side-by-side report written";
  } else {
    harness_detail = "ablation script failed, see " +
                     (out_dir / "log.txt").string();
  }
  report(4, "multi-task loss additivity and ablation harness",
         identity_ok && harness_ok,
         std::string(identity_ok ? "identity <= 1e-9" : "identity broken") +
             "; " + harness_detail);
}

// --------------------------------------------------------------------------
// 5. BIO round trip on 10,000 fuzzed instances

void criterion_bio_roundtrip() {
  std::mt19937_64 rng(606);
  static const std::vector<std::string> words = {"a",  "ab", "b",   "ba",
                                                 "abc", "xy", "x1", "meds"};
  std::size_t checked = 0;
  bool ok = true;
  for (int iter = 0; iter < 10000 && ok; ++iter) {
    std::string text;
    const std::size_t n = 1 + rng() % 12;
    for (std::size_t i = 0; i < n; ++i) {
      if (i) text += ' ';
      text += words[rng() % words.size()];
    }
    const auto tokens = tm::preprocess::tokenize(text);
    const auto u = tm::decode_utf8(text);
    std::vector<tm::Span> spans;
    std::size_t t = 0;
    while (t < tokens.size()) {
      if (rng() % 3 == 0) {
        const std::size_t last = std::min(t + rng() % 3, tokens.size() - 1);
        tm::Span s;
        s.start = tokens[t].start;
        s.end = tokens[last].end;
        s.surface = tm::encode_utf8(
            std::u32string_view(u).substr(s.start, s.end - s.start));
        spans.push_back(std::move(s));
        t = last + 2;
      } else {
        ++t;
      }
    }
    const auto tags = tm::bio::encode(tokens, spans);
    if (!tm::bio::is_valid(tags)) ok = false;
    const auto back = tm::bio::decode(text, tokens, tags);
    if (back.repairs != 0 || back.spans.size() != spans.size()) ok = false;
    if (ok)
      for (std::size_t i = 0; i < spans.size(); ++i)
        if (!(back.spans[i] == spans[i])) ok = false;
    ++checked;
  }
  report(5, "BIO round trip on 10,000 fuzzed instances", ok,
         std::to_string(checked) + " instances");
}

// --------------------------------------------------------------------------
// 6. ensemble voting laws on 1,000 fuzzed prediction sets

tm::Span grid_span(std::uint32_t s, std::uint32_t e) {
  return tm::Span{s, e, std::string(e - s, 'x'), 0.9};
}

void criterion_ensemble_laws() {
  std::mt19937_64 rng(707);
  bool ok = true;
  using Key = std::pair<std::uint32_t, std::uint32_t>;
  for (int iter = 0; iter < 1000 && ok; ++iter) {
    const std::size_t M = 2 + rng() % 5;
    const std::size_t n_tweets = 1 + rng() % 3;
    std::vector<std::vector<tm::Span>> grid(n_tweets);
    for (auto& g : grid) {
      std::uint32_t pos = 0;
      const std::size_t n = rng() % 5;
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t len = 1 + rng() % 4;
        g.push_back(grid_span(pos, pos + len));
        pos += len + 1 + rng() % 3;
      }
    }
    std::vector<tm::ensemble::PredictionSet> sets(M);
    for (std::size_t m = 0; m < M; ++m) {
      sets[m].model_name = "m" + std::to_string(m);
      for (std::size_t t = 0; t < n_tweets; ++t) {
        std::vector<tm::Span> spans;
        for (const auto& s : grid[t])
          if (rng() % 2) spans.push_back(s);
        sets[m].predictions.emplace("t" + std::to_string(t),
                                    std::move(spans));
      }
    }

    // gold: a random subset of the grid, so recall is well defined
    tm::Dataset gold;
    for (std::size_t t = 0; t < n_tweets; ++t) {
      tm::AnnotatedTweet at;
      at.tweet = {"t" + std::to_string(t), "u", std::string(64, 'x')};
      for (const auto& s : grid[t])
        if (rng() % 2) at.spans.push_back(s);
      gold.tweets.push_back(std::move(at));
    }

    const auto keys_of = [](const std::vector<tm::Span>& spans) {
      std::set<Key> out;
      for (const auto& s : spans) out.insert({s.start, s.end});
      return out;
    };

    std::vector<tm::metrics::PredictionMap> votes;
    for (std::size_t k = 1; k <= M; ++k)
      votes.push_back(tm::ensemble::vote(sets, tm::ensemble::EnsembleConfig{k}));

    for (std::size_t t = 0; t < n_tweets && ok; ++t) {
      const std::string id = "t" + std::to_string(t);
      std::set<Key> uni, inter;
      bool first = true;
      for (const auto& s : sets) {
        const auto k = keys_of(s.predictions.at(id));
        for (const auto& x : k) uni.insert(x);
        if (first) {
          inter = k;
          first = false;
        } else {
          std::set<Key> merged;
          for (const auto& x : inter)
            if (k.count(x)) merged.insert(x);
          inter = merged;
        }
      }
      if (keys_of(votes.front().at(id)) != uni) ok = false;
      if (keys_of(votes.back().at(id)) != inter) ok = false;
      for (std::size_t k = 1; k < M && ok; ++k) {
        const auto lo = keys_of(votes[k - 1].at(id));
        for (const auto& x : keys_of(votes[k].at(id)))
          if (!lo.count(x)) ok = false;
      }
    }

    double prev_recall = 1.0 + 1e-12;
    for (std::size_t k = 1; k <= M && ok; ++k) {
      const auto m =
          tm::metrics::evaluate(gold, votes[k - 1], tm::metrics::Mode::strict);
      if (m.recall > prev_recall + 1e-12) ok = false;
      prev_recall = m.recall;
    }
  }
  report(6, "ensemble voting laws on 1,000 fuzzed prediction sets", ok);
}

// --------------------------------------------------------------------------
// 7. metric ordering and exhaustive matching agreement

std::size_t brute_matching(const std::vector<tm::Span>& gold,
                           const std::vector<tm::Span>& pred,
                           tm::metrics::Mode mode, std::size_t g = 0,
                           std::uint64_t used = 0) {
  if (g == gold.size()) return 0;
  std::size_t best = brute_matching(gold, pred, mode, g + 1, used);
  for (std::size_t p = 0; p < pred.size(); ++p) {
    if (used & (1ULL << p)) continue;
    const bool exact =
        gold[g].start == pred[p].start && gold[g].end == pred[p].end;
    const bool inter =
        gold[g].start < pred[p].end && pred[p].start < gold[g].end;
    if (mode == tm::metrics::Mode::strict ? !exact : !inter) continue;
    best = std::max(
        best, 1 + brute_matching(gold, pred, mode, g + 1, used | (1ULL << p)));
  }
  return best;
}

void criterion_metric_ordering() {
  std::mt19937_64 rng(808);
  bool ok = true;
  for (int iter = 0; iter < 1000 && ok; ++iter) {
    tm::Dataset gold;
    tm::metrics::PredictionMap pred;
    const std::size_t n_tweets = 1 + rng() % 3;
    for (std::size_t t = 0; t < n_tweets; ++t) {
      const std::string id = "t" + std::to_string(t);
      tm::AnnotatedTweet at;
      at.tweet = {id, "u", std::string(64, 'x')};
      std::uint32_t pos = rng() % 3;
      while (at.spans.size() < 6 && pos < 58) {
        const std::uint32_t len = 1 + rng() % 5;
        if (rng() % 2)
          at.spans.push_back(grid_span(pos, std::min<std::uint32_t>(pos + len, 63)));
        pos += len + 1 + rng() % 3;
      }
      gold.tweets.push_back(at);
      std::vector<tm::Span> ps;
      const std::size_t n = rng() % 6;
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t s = rng() % 60;
        ps.push_back(grid_span(s, s + 1 + rng() % 4));
      }
      pred.emplace(id, std::move(ps));
    }
    const auto strict =
        tm::metrics::evaluate(gold, pred, tm::metrics::Mode::strict);
    const auto overlap =
        tm::metrics::evaluate(gold, pred, tm::metrics::Mode::overlap);
    if (strict.tp > overlap.tp) ok = false;
    if (strict.f1 > overlap.f1 + 1e-12) ok = false;

    for (const auto& at : gold.tweets) {
      tm::Dataset one;
      one.tweets.push_back(at);
      tm::metrics::PredictionMap pone{{at.tweet.id, pred[at.tweet.id]}};
      for (auto mode : {tm::metrics::Mode::strict, tm::metrics::Mode::overlap}) {
        const auto m = tm::metrics::evaluate(one, pone, mode);
        if (m.tp != brute_matching(at.spans, pred[at.tweet.id], mode))
          ok = false;
      }
    }
  }
  report(7, "metric ordering and exhaustive matching on 1,000 fuzzed sets", ok);
}

// --------------------------------------------------------------------------
// 8. weak labeling oracle equivalence

void criterion_weaklabel_oracle() {
  std::mt19937_64 rng(909);
  static const std::vector<std::string> words = {"a", "ab", "b", "ba", "abc"};
  bool ok = true;
  for (int iter = 0; iter < 1000 && ok; ++iter) {
    std::string text;
    const std::size_t n = 1 + rng() % 8;
    for (std::size_t i = 0; i < n; ++i) {
      if (i) text += ' ';
      text += words[rng() % words.size()];
    }
    std::string name = words[rng() % words.size()];
    if (rng() % 2) name += " " + words[rng() % words.size()];

    // oracle: naive scan over token-boundary-aligned positions
    const auto u = tm::decode_utf8(text);
    const auto needle = tm::lower(tm::decode_utf8(name));
    std::set<std::uint32_t> starts, ends;
    for (const auto& t : tm::preprocess::tokenize(text)) {
      starts.insert(t.start);
      ends.insert(t.end);
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> expected;
    std::size_t i = 0;
    const auto hay = tm::lower(u);
    while (i + needle.size() <= hay.size()) {
      const auto s = static_cast<std::uint32_t>(i);
      const auto e = static_cast<std::uint32_t>(i + needle.size());
      if (starts.count(s) && ends.count(e) &&
          hay.compare(i, needle.size(), needle) == 0) {
        expected.emplace_back(s, e);
        i += needle.size();
      } else {
        ++i;
      }
    }

    const auto got = tm::weaklabel::match_exact(text, name);
    if (got.size() != expected.size()) ok = false;
    for (std::size_t k = 0; ok && k < got.size(); ++k)
      if (got[k].start != expected[k].first || got[k].end != expected[k].second)
        ok = false;

    const auto partial =
        tm::weaklabel::match_partial(text, name, tm::weaklabel::MatchPolicy{});
    for (const auto& e : got) {
      bool covered = false;
      for (const auto& p : partial)
        if (p.start <= e.start && p.end >= e.end) covered = true;
      if (!covered) ok = false;
    }
  }
  report(8, "weak-labeling oracle equivalence on 1,000 fuzzed pairs", ok);
}

// --------------------------------------------------------------------------
// 9. augmentation determinism, splice correctness and the arithmetic bound

void criterion_augmentation() {
  const std::vector<std::string> categories = {"pain",   "heartburn",
                                               "cold",   "vitamin",
                                               "sleep",  "allergy"};
  std::vector<tm::DrugLexiconEntry> lexicon;
  for (int i = 0; i < 326; ++i)
    lexicon.push_back({"drug" + std::to_string(i),
                       categories[i % categories.size()]});

  std::map<std::string, std::string> source_categories;
  std::vector<tm::AnnotatedTweet> pool;
  std::mt19937_64 rng(111);
  for (int i = 0; i < 240; ++i) {
    const std::string mention = "med" + std::to_string(i % 30);
    source_categories[mention] = categories[(i % 30) % categories.size()];
    const std::string pre = "day " + std::to_string(i) + " taking ";
    tm::AnnotatedTweet at;
    at.tweet = {"p" + std::to_string(i), "u", pre + mention + " as usual"};
    tm::Span s;
    s.start = static_cast<std::uint32_t>(tm::length_utf8(pre));
    s.end = s.start + static_cast<std::uint32_t>(tm::length_utf8(mention));
    s.surface = mention;
    s.score = 0.95;
    at.spans.push_back(std::move(s));
    pool.push_back(std::move(at));
  }

  tm::augment::SubstitutionConfig cfg;
  cfg.per_drug = 4;
  cfg.seed = 13;
  tm::augment::SubstitutionReport rep;
  const auto a =
      tm::augment::substitute_drugs(pool, lexicon, source_categories, cfg, &rep);
  const auto b =
      tm::augment::substitute_drugs(pool, lexicon, source_categories, cfg);

  bool ok = a.size() <= 1304 && !a.empty();
  if (!(a == b)) ok = false;
  for (const auto& at : a) {
    const auto dot = at.tweet.id.rfind(".aug");
    const std::string src_id = at.tweet.id.substr(0, dot);
    const auto src =
        std::find_if(pool.begin(), pool.end(), [&](const tm::AnnotatedTweet& p) {
          return p.tweet.id == src_id;
        });
    if (src == pool.end()) {
      ok = false;
      break;
    }
    const auto out_u = tm::decode_utf8(at.tweet.text);
    const auto src_u = tm::decode_utf8(src->tweet.text);
    const tm::Span& ns = at.spans.at(0);
    const tm::Span& os = src->spans.at(0);
    if (tm::encode_utf8(std::u32string_view(out_u).substr(
            ns.start, ns.end - ns.start)) != ns.surface)
      ok = false;
    if (out_u.substr(0, ns.start) != src_u.substr(0, os.start)) ok = false;
    if (out_u.substr(ns.end) != src_u.substr(os.end)) ok = false;
  }
  std::ostringstream detail;
  detail << "326 drugs x 4 -> " << a.size() << " tweets (bound 1304)";
  report(9, "augmentation determinism and splice correctness", ok,
         detail.str());
}

// --------------------------------------------------------------------------
// 10. end-to-end pipeline on the bundled synthetic corpus

void criterion_end_to_end() {
  const auto out_dir = scratch_dir("pipeline");
  const std::string cmd =
      "TWEETMEDS_BIN='" + std::string(TWEETMEDS_CLI_PATH) + "' DATA_DIR='" +
      std::string(TWEETMEDS_DATA_DIR) + "/synth' OUT_DIR='" +
      out_dir.string() + "' bash '" + std::string(TWEETMEDS_SCRIPTS_DIR) +
      "/run_pipeline.sh' > '" + (out_dir / "log.txt").string() + "' 2>&1";

  const auto t0 = std::chrono::steady_clock::now();
  const int status = std::system(cmd.c_str());
  const auto secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  bool ok = WEXITSTATUS(status) == 0 && secs <= 600.0;
  std::string detail = "exit " + std::to_string(WEXITSTATUS(status)) + ", " +
                       std::to_string(secs) + "s";
  if (ok) {
    try {
      std::ifstream in(out_dir / "report.json");
      const auto j = nlohmann::json::parse(in);
      ok = j.is_array() && !j.empty() && j[0].contains("strict") &&
           j[0].contains("overlap") && j[0]["strict"].contains("f1");
      detail += ", report rows: " + std::to_string(j.size());
      if (ok)
        detail += ", ensemble strict F1 " +
                  std::to_string(j[0]["strict"]["f1"].get<double>());
    } catch (const std::exception& e) {
      ok = false;
      detail += std::string(", report unreadable: ") + e.what();
    }
  } else {
    detail += ", log: " + (out_dir / "log.txt").string();
  }
  report(10, "end-to-end pipeline emits a result-table-shaped report", ok,
         detail);
}

}  // namespace

int main() {
  std::cout << "tweetmeds acceptance suite" << std::endl;
  criterion_f1_arithmetic();
  criterion_grad_check();
  criterion_overfit();
  criterion_multitask();
  criterion_bio_roundtrip();
  criterion_ensemble_laws();
  criterion_metric_ordering();
  criterion_weaklabel_oracle();
  criterion_augmentation();
  criterion_end_to_end();
  std::cout << (10 - g_failures) << "/10 criteria passed" << std::endl;
  return g_failures == 0 ? 0 : 1;
}
