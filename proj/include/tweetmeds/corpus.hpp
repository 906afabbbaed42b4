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

#ifndef TWEETMEDS_CORPUS_HPP
#define TWEETMEDS_CORPUS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Data model and on-disk formats for tweets, mention spans and the drug
// lexicon. Datasets are immutable after loading and safe to share across
// threads.

namespace tweetmeds {

/// A medication mention as half-open [start, end) code-point offsets into
/// the owning tweet's text. `surface` must equal the text slice.
struct Span {
  std::uint32_t start = 0;
  std::uint32_t end = 0;
  std::string surface;
  std::optional<double> score;  // prediction confidence, absent on gold

  friend bool operator==(const Span& a, const Span& b) {
    return a.start == b.start && a.end == b.end && a.surface == b.surface &&
           a.score == b.score;
  }
};

struct Tweet {
  std::string id;
  std::string user_id;
  std::string text;  // UTF-8, length >= 1

  friend bool operator==(const Tweet&, const Tweet&) = default;
};

/// A tweet plus its (gold or predicted) mention spans, sorted by start and
/// non-overlapping.
struct AnnotatedTweet {
  Tweet tweet;
  std::vector<Span> spans;

  friend bool operator==(const AnnotatedTweet&, const AnnotatedTweet&) = default;
};

struct Dataset {
  std::string name;
  std::vector<AnnotatedTweet> tweets;  // ids unique

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

struct DrugLexiconEntry {
  std::string name;
  std::string use_category;  // e.g. "pain", "heartburn", "birth control"
};

struct CorpusStats {
  std::size_t n_tweets = 0;
  std::size_t n_positive = 0;  // tweets with at least one span
  std::size_t n_spans = 0;
  double positive_rate = 0.0;  // 0 for an empty dataset
};

/// Checks the Span invariants against the owning text (as code points).
/// Throws std::runtime_error naming `owner_id` on violation.
void validate_span(const Span& span, const std::u32string& text,
                   const std::string& owner_id);

/// Sorts spans by start and checks all AnnotatedTweet invariants.
void validate_annotated_tweet(AnnotatedTweet& at);

/// Validates a whole dataset (per-tweet invariants plus id uniqueness).
void validate_dataset(Dataset& ds);

/// Loads a JSONL dataset: one object per line with fields `id`, `user_id`,
/// `text`, `spans: [{start, end, surface, score?}]`. Malformed lines are
/// reported with their line number, span violations with the tweet id.
Dataset load_jsonl(const std::string& path);

/// Inverse of load_jsonl; load_jsonl(save_jsonl(d)) == d for valid d.
void save_jsonl(const Dataset& ds, const std::string& path);

CorpusStats stats(const Dataset& ds);

/// Drug lexicon TSV: header row `name<TAB>use_category`, UTF-8.
std::vector<DrugLexiconEntry> load_lexicon_tsv(const std::string& path);
void save_lexicon_tsv(const std::vector<DrugLexiconEntry>& lex,
                      const std::string& path);

}  // namespace tweetmeds

#endif  // TWEETMEDS_CORPUS_HPP
