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

#ifndef TWEETMEDS_WEAKLABEL_HPP
#define TWEETMEDS_WEAKLABEL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tweetmeds/corpus.hpp"

// Recovers character-offset spans from normalized drug names, turning
// binary-labeled data (tweet + names) into span-labeled data. Matching runs
// on the raw, pre-normalization text so the offsets land in the original
// tweet.

namespace tweetmeds::weaklabel {

enum class MatchMode { exact, partial };

struct MatchPolicy {
  MatchMode mode = MatchMode::partial;  // partial = exact first, then fuzzy
  std::size_t max_token_gap = 0;        // unmatched tokens allowed inside a hit group
  double min_token_overlap_fraction = 0.5;  // of the name's tokens, in (0,1]
  std::size_t edit_distance_per_token = 1;

  void validate() const;
};

struct Report {
  std::size_t n_input = 0;          // tweets that needed span recovery
  std::size_t n_matched_exact = 0;  // every name found exactly
  std::size_t n_matched_partial = 0;  // at least one name needed fuzzy matching
  std::size_t n_unmatched = 0;      // some name found nowhere
};

/// All case-insensitive, token-boundary-aligned occurrences of `name`,
/// greedy left-to-right and non-overlapping.
std::vector<Span> match_exact(const std::string& text, const std::string& name);

/// Fuzzy matching: text tokens within `edit_distance_per_token` of some
/// name token are hits; maximal hit groups (consecutive hits separated by
/// at most `max_token_gap` non-hits) that cover at least
/// `min_token_overlap_fraction` of the name's tokens yield the minimal
/// span over their hit tokens.
std::vector<Span> match_partial(const std::string& text,
                                const std::string& name,
                                const MatchPolicy& policy);

struct RecoverResult {
  AnnotatedTweet tweet;
  bool matched = false;       // every name produced at least one span
  bool used_partial = false;  // some name fell back to fuzzy matching
  std::vector<std::string> unmatched_names;
};

/// Exact matching first per name; fuzzy only when exact fails (and the
/// policy allows it). Overlapping results across names are merged keeping
/// the longer span.
RecoverResult recover_spans(const Tweet& tweet,
                            const std::vector<std::string>& names,
                            const MatchPolicy& policy);

/// A 2018-style binary-labeled record.
struct BinaryLabeledTweet {
  Tweet tweet;
  bool positive = false;
  std::vector<std::string> names;  // normalized drug names, empty when negative
};

/// TSV format: tweet_id<TAB>user_id<TAB>text<TAB>label(0/1)<TAB>names
/// with names ;-separated and empty when label=0. No header row.
std::vector<BinaryLabeledTweet> load_binary_tsv(const std::string& path);
void save_binary_tsv(const std::vector<BinaryLabeledTweet>& rows,
                     const std::string& path);

}  // namespace tweetmeds::weaklabel

#endif  // TWEETMEDS_WEAKLABEL_HPP
