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

#ifndef TWEETMEDS_TEXT_HPP
#define TWEETMEDS_TEXT_HPP

#include <cstdint>
#include <string>
#include <string_view>

// UTF-8 helpers. All character offsets in this project are Unicode scalar
// value offsets (code points), never bytes, so spans survive emoji.

namespace tweetmeds {

/// Decodes UTF-8 into code points. Throws std::invalid_argument on
/// malformed input (overlong forms, stray continuation bytes, surrogates).
std::u32string decode_utf8(std::string_view s);

std::string encode_utf8(std::u32string_view s);
std::string encode_utf8(char32_t c);

/// Code point count of a UTF-8 string.
std::size_t length_utf8(std::string_view s);

bool is_space_cp(char32_t c);

/// Word characters: ASCII alphanumerics, underscore, and letters from the
/// Latin-1/Latin-Extended, Greek and Cyrillic blocks. Everything else is
/// treated as punctuation or symbol by the tokenizer.
bool is_word_cp(char32_t c);

bool is_ascii_punct_cp(char32_t c);

/// Lowercasing over the same ranges is_word_cp knows about; other code
/// points pass through unchanged.
char32_t lower_cp(char32_t c);
std::u32string lower(std::u32string_view s);
std::string lower_utf8(std::string_view s);

/// Levenshtein distance over code points.
std::size_t edit_distance(std::u32string_view a, std::u32string_view b);

}  // namespace tweetmeds

#endif  // TWEETMEDS_TEXT_HPP
