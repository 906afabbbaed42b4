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

#ifndef TWEETMEDS_BIO_HPP
#define TWEETMEDS_BIO_HPP

#include <string>
#include <vector>

#include "tweetmeds/corpus.hpp"
#include "tweetmeds/preprocess.hpp"

// Lossless conversion between character-offset spans and per-token BIO
// tags. The task has a single entity class (drugs and supplements merged),
// so tags are plain B/I/O without type suffixes.

namespace tweetmeds::bio {

enum class Tag : std::uint8_t { O = 0, B = 1, I = 2 };

using TagSequence = std::vector<Tag>;

char to_char(Tag t);
Tag from_char(char c);

/// Valid iff no I follows an O or the sequence start without an
/// intervening B..I chain.
bool is_valid(const TagSequence& tags);

/// Tokens covered by a span get B on the first and I on the rest; all
/// others O. Spans must be non-overlapping and sorted. Throws
/// std::runtime_error if a span starts or ends strictly inside a token
/// (annotation/tokenizer drift) or covers no token at all.
TagSequence encode(const std::vector<preprocess::Token>& tokens,
                   const std::vector<Span>& spans);

struct DecodeResult {
  std::vector<Span> spans;
  std::size_t repairs = 0;  // I-after-O tags treated as B
};

/// Maximal B(I)* runs become spans from the first token's start to the
/// last token's end. An I with no preceding B is repaired as B (model
/// outputs are unconstrained); repairs are counted, never fatal.
/// Throws std::runtime_error on a tags/tokens length mismatch.
DecodeResult decode(const std::string& text,
                    const std::vector<preprocess::Token>& tokens,
                    const TagSequence& tags);

}  // namespace tweetmeds::bio

#endif  // TWEETMEDS_BIO_HPP
