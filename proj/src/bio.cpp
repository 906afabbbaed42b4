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

#include "tweetmeds/bio.hpp"

#include <stdexcept>

#include "tweetmeds/text.hpp"

namespace tweetmeds::bio {

char to_char(Tag t) {
  switch (t) {
    case Tag::B: return 'B';
    case Tag::I: return 'I';
    default: return 'O';
  }
}

Tag from_char(char c) {
  switch (c) {
    case 'B': return Tag::B;
    case 'I': return Tag::I;
    case 'O': return Tag::O;
    default: throw std::runtime_error(std::string("bad BIO tag '") + c + "'");
  }
}

bool is_valid(const TagSequence& tags) {
  Tag prev = Tag::O;
  for (Tag t : tags) {
    if (t == Tag::I && prev == Tag::O) return false;
    prev = t;
  }
  return true;
}

TagSequence encode(const std::vector<preprocess::Token>& tokens,
                   const std::vector<Span>& spans) {
  TagSequence tags(tokens.size(), Tag::O);
  for (const Span& s : spans) {
    bool first = true;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      const auto& tok = tokens[t];
      if (tok.end <= s.start || tok.start >= s.end) continue;
      // overlapping token: must be fully covered, else the span boundary
      // cuts through it
      if (tok.start < s.start || tok.end > s.end)
        throw std::runtime_error(
            "span [" + std::to_string(s.start) + "," + std::to_string(s.end) +
            ") \"" + s.surface + "\" is misaligned with token \"" +
            tok.surface + "\" [" + std::to_string(tok.start) + "," +
            std::to_string(tok.end) + ")");
      tags[t] = first ? Tag::B : Tag::I;
      first = false;
    }
    if (first)
      throw std::runtime_error("span [" + std::to_string(s.start) + "," +
                               std::to_string(s.end) + ") \"" + s.surface +
                               "\" covers no token");
  }
  return tags;
}

DecodeResult decode(const std::string& text,
                    const std::vector<preprocess::Token>& tokens,
                    const TagSequence& tags) {
  if (tokens.size() != tags.size())
    throw std::runtime_error("tag/token length mismatch: " +
                             std::to_string(tags.size()) + " tags vs " +
                             std::to_string(tokens.size()) + " tokens");
  const std::u32string u = decode_utf8(text);
  DecodeResult out;
  std::size_t t = 0;
  Tag prev = Tag::O;
  while (t < tokens.size()) {
    Tag cur = tags[t];
    if (cur == Tag::I && prev == Tag::O) {
      cur = Tag::B;  // repair policy: orphan I starts a new span
      ++out.repairs;
    }
    if (cur != Tag::B) {
      prev = tags[t];
      ++t;
      continue;
    }
    const std::uint32_t start = tokens[t].start;
    std::uint32_t end = tokens[t].end;
    prev = tags[t];
    ++t;
    while (t < tokens.size() && tags[t] == Tag::I) {
      end = tokens[t].end;
      prev = tags[t];
      ++t;
    }
    Span s;
    s.start = start;
    s.end = end;
    s.surface = encode_utf8(std::u32string_view(u).substr(start, end - start));
    out.spans.push_back(std::move(s));
  }
  return out;
}

}  // namespace tweetmeds::bio
