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

#ifndef TWEETMEDS_PREPROCESS_HPP
#define TWEETMEDS_PREPROCESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tweetmeds/corpus.hpp"

// Rule-based tweet tokenization and normalization, with an offset map so
// gold spans found in raw text can be projected into the normalized text.
//
// Tokenizer rule set, applied at each non-whitespace position with the
// first matching rule winning:
//   1. URL: a http://, https:// or www. prefix (case-insensitive), taken up
//      to the next whitespace.
//   2. Emoticon: longest match from a fixed ~50-entry table (see
//      emoticon_table()).
//   3. @-mention: '@' followed by a run of word characters.
//   4. Hashtag: '#' followed by a run of word characters (one token here;
//      normalize() splits it into "#" + tag).
//   5. Word: maximal run of word characters (ASCII alphanumerics plus
//      common European letters, see is_word_cp()).
//   6. Anything else: a single code point is one token.

namespace tweetmeds::preprocess {

/// A token's surface plus its half-open code-point offsets into the text it
/// was produced from.
struct Token {
  std::string surface;
  std::uint32_t start = 0;
  std::uint32_t end = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

/// Monotone map from original code-point offsets to normalized offsets.
/// Offsets interior to a URL/@USER replacement do not survive; spans that
/// touch them are dropped by project_spans.
struct OffsetMap {
  std::vector<std::uint32_t> new_pos;  // size = original length + 1
  std::vector<std::uint8_t> replaced;  // size = original length

  std::uint32_t map(std::uint32_t orig) const { return new_pos.at(orig); }
  bool identity() const;
};

struct NormalizedTweet {
  Tweet original;
  std::string normalized_text;
  std::vector<Token> tokens;  // hashtags split into "#" + tag
  OffsetMap offset_map;
};

struct SpanProjection {
  std::vector<Span> spans;
  std::vector<Span> dropped;  // erased by normalization, for warning logs
};

const std::vector<std::string>& emoticon_table();

/// Total tokenizer over valid UTF-8; offsets are code points into `text`.
std::vector<Token> tokenize(const std::string& text);

/// Replaces URL tokens with "URL" and @-mentions with "@USER", deletes
/// characters outside the allowed set (letters, digits, ASCII punctuation,
/// whitespace), splits hashtags into "#" + tag, and records the offset map.
/// Idempotent on its own output.
NormalizedTweet normalize(const Tweet& tweet);

/// Maps spans (valid against nt.original.text) through the offset map.
/// Spans erased by normalization or touching a replacement are dropped.
SpanProjection project_spans(const std::vector<Span>& spans,
                             const NormalizedTweet& nt);

/// normalize + project_spans over a whole dataset; dropped spans are
/// reported as "<tweet_id>\t<surface>" strings when `warnings` is given.
Dataset normalize_dataset(const Dataset& ds,
                          std::vector<std::string>* warnings = nullptr);

}  // namespace tweetmeds::preprocess

#endif  // TWEETMEDS_PREPROCESS_HPP
