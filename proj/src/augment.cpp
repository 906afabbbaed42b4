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

#include "tweetmeds/augment.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"
#include "tweetmeds/preprocess.hpp"
#include "tweetmeds/text.hpp"

namespace tweetmeds::augment {

void SelfTrainFilterConfig::validate() const {
  if (score_threshold < 0.0 || score_threshold > 1.0)
    throw std::invalid_argument("score_threshold must be in [0,1]");
  if (max_chars < 1) throw std::invalid_argument("max_chars must be >= 1");
}

void SubstitutionConfig::validate() const {
  if (per_drug < 1) throw std::invalid_argument("per_drug must be >= 1");
}

std::vector<AnnotatedTweet> self_train_filter(
    const std::vector<AnnotatedTweet>& predicted,
    const SelfTrainFilterConfig& cfg) {
  cfg.validate();
  std::vector<AnnotatedTweet> kept;
  for (const AnnotatedTweet& at : predicted) {
    for (const Span& s : at.spans)
      if (!s.score)
        throw std::runtime_error("tweet " + at.tweet.id +
                                 ": predicted span without a score");
    if (length_utf8(at.tweet.text) > cfg.max_chars) continue;
    if (cfg.require_single_mention && at.spans.size() != 1) continue;
    // strict >: a score of exactly score_threshold is not confident enough
    const bool confident =
        std::all_of(at.spans.begin(), at.spans.end(),
                    [&](const Span& s) { return *s.score > cfg.score_threshold; });
    if (confident) kept.push_back(at);
  }
  return kept;
}

namespace {

// selection sampling without replacement; avoids std::sample so the result
// does not depend on the standard library implementation
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t want,
                                        std::mt19937_64& rng) {
  std::vector<std::size_t> out;
  std::size_t need = std::min(want, n);
  for (std::size_t i = 0; i < n && need > 0; ++i) {
    const std::size_t remaining = n - i;
    if (rng() % remaining < need) {
      out.push_back(i);
      --need;
    }
  }
  return out;
}

std::string dedup_key(const std::string& text) {
  Tweet t{"k", "k", text};
  return preprocess::normalize(t).normalized_text;
}

}  // namespace

std::vector<AnnotatedTweet> substitute_drugs(
    const std::vector<AnnotatedTweet>& pool,
    const std::vector<DrugLexiconEntry>& lexicon,
    const std::map<std::string, std::string>& source_categories,
    const SubstitutionConfig& cfg, SubstitutionReport* report) {
  cfg.validate();

  std::map<std::string, std::string> categories_low;
  for (const auto& [name, cat] : source_categories)
    categories_low[lower_utf8(name)] = lower_utf8(cat);

  std::map<std::string, std::vector<std::size_t>> pool_by_category;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const AnnotatedTweet& at = pool[i];
    if (at.spans.size() != 1)
      throw std::invalid_argument("pool tweet " + at.tweet.id +
                                  " must have exactly one span, has " +
                                  std::to_string(at.spans.size()));
    const auto it = categories_low.find(lower_utf8(at.spans[0].surface));
    if (it == categories_low.end())
      throw std::invalid_argument("pool tweet " + at.tweet.id + ": mention \"" +
                                  at.spans[0].surface +
                                  "\" has no known use category");
    pool_by_category[it->second].push_back(i);
  }
  if (report)
    for (const auto& [cat, idxs] : pool_by_category)
      report->category_pool_sizes[cat] = idxs.size();

  std::mt19937_64 rng(cfg.seed);
  std::vector<AnnotatedTweet> out;
  std::unordered_set<std::string> seen_texts;
  std::size_t counter = 0;
  for (const DrugLexiconEntry& drug : lexicon) {
    const auto it = pool_by_category.find(lower_utf8(drug.use_category));
    if (it == pool_by_category.end() || it->second.empty()) {
      if (report) report->skipped_drugs.push_back(drug.name);
      continue;
    }
    const std::vector<std::size_t>& cands = it->second;
    if (cands.size() < cfg.per_drug && report)
      report->short_pool_drugs.push_back(drug.name);
    for (const std::size_t ci : sample_indices(cands.size(), cfg.per_drug, rng)) {
      const AnnotatedTweet& src = pool[cands[ci]];
      const Span& old = src.spans[0];
      const std::u32string text = decode_utf8(src.tweet.text);
      const std::u32string name = decode_utf8(drug.name);
      std::u32string spliced = text.substr(0, old.start);
      spliced += name;
      spliced += text.substr(old.end);

      AnnotatedTweet at;
      at.tweet.id = src.tweet.id + ".aug" + std::to_string(counter++);
      at.tweet.user_id = src.tweet.user_id;
      at.tweet.text = encode_utf8(spliced);
      Span s;
      s.start = old.start;
      s.end = old.start + static_cast<std::uint32_t>(name.size());
      s.surface = drug.name;
      at.spans.push_back(std::move(s));
      if (report) ++report->n_generated;

      if (cfg.dedup && !seen_texts.insert(dedup_key(at.tweet.text)).second)
        continue;
      out.push_back(std::move(at));
    }
  }
  if (report) report->n_after_dedup = out.size();
  return out;
}

std::vector<std::pair<std::string, std::size_t>> top_mentions(
    const Dataset& ds, std::size_t k) {
  std::map<std::string, std::size_t> counts;
  for (const auto& at : ds.tweets)
    for (const Span& s : at.spans) ++counts[lower_utf8(s.surface)];
  std::vector<std::pair<std::string, std::size_t>> out(counts.begin(),
                                                       counts.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (out.size() > k) out.resize(k);
  return out;
}

std::string substitution_report_json(const SubstitutionReport& report) {
  nlohmann::json j;
  j["category_pool_sizes"] = report.category_pool_sizes;
  j["skipped_drugs"] = report.skipped_drugs;
  j["short_pool_drugs"] = report.short_pool_drugs;
  j["n_generated"] = report.n_generated;
  j["n_after_dedup"] = report.n_after_dedup;
  return j.dump(2);
}

}  // namespace tweetmeds::augment
