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

#ifndef TWEETMEDS_AUGMENT_HPP
#define TWEETMEDS_AUGMENT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tweetmeds/corpus.hpp"

// Self-training selection of confidently labeled tweets, plus
// use-category-matched drug substitution to widen mention coverage.

namespace tweetmeds::augment {

struct SelfTrainFilterConfig {
  double score_threshold = 0.9;  // strict >, a score of exactly 0.9 is dropped
  std::size_t max_chars = 128;   // code points
  bool require_single_mention = true;

  void validate() const;
};

struct SubstitutionConfig {
  std::size_t per_drug = 4;
  std::uint64_t seed = 0;
  bool dedup = true;  // key: normalized text equality

  void validate() const;
};

/// Keeps tweets whose text fits in max_chars, with exactly one span when
/// required, and with every span score strictly above the threshold.
/// Order-stable and idempotent. A span without a score is an error.
std::vector<AnnotatedTweet> self_train_filter(
    const std::vector<AnnotatedTweet>& predicted,
    const SelfTrainFilterConfig& cfg);

struct SubstitutionReport {
  std::map<std::string, std::size_t> category_pool_sizes;
  std::vector<std::string> skipped_drugs;     // category had no pool tweets
  std::vector<std::string> short_pool_drugs;  // pool smaller than per_drug
  std::size_t n_generated = 0;
  std::size_t n_after_dedup = 0;
};

/// For each lexicon drug, samples per_drug pool tweets (without
/// replacement, seeded) whose single mention shares the drug's use
/// category, and splices the drug name over the original span. Every pool
/// tweet must have exactly one span and a mention resolvable through
/// `source_categories` (keys matched case-insensitively).
std::vector<AnnotatedTweet> substitute_drugs(
    const std::vector<AnnotatedTweet>& pool,
    const std::vector<DrugLexiconEntry>& lexicon,
    const std::map<std::string, std::string>& source_categories,
    const SubstitutionConfig& cfg, SubstitutionReport* report = nullptr);

/// Mention surfaces (lowercased) by frequency, most frequent first; ties
/// break lexicographically. The trivial stand-in for keyword harvesting.
std::vector<std::pair<std::string, std::size_t>> top_mentions(
    const Dataset& ds, std::size_t k);

std::string substitution_report_json(const SubstitutionReport& report);

}  // namespace tweetmeds::augment

#endif  // TWEETMEDS_AUGMENT_HPP
