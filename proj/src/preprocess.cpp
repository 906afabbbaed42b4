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

#include "tweetmeds/preprocess.hpp"

#include <algorithm>
#include <unordered_map>

#include "tweetmeds/text.hpp"

namespace tweetmeds::preprocess {

namespace {

enum class TokenKind { url, mention, hashtag, other };

struct RawToken {
  std::uint32_t start;
  std::uint32_t end;
  TokenKind kind;
};

const std::vector<std::u32string>& emoticon_table_u32() {
  static const std::vector<std::u32string> table = [] {
    std::vector<std::u32string> t;
    for (const auto& e : emoticon_table()) t.push_back(decode_utf8(e));
    // longest first so the scanner can take the first hit
    std::stable_sort(t.begin(), t.end(),
                     [](const auto& a, const auto& b) {
                       return a.size() > b.size();
                     });
    return t;
  }();
  return table;
}

bool prefix_matches_ci(const std::u32string& text, std::size_t pos,
                       std::u32string_view prefix) {
  if (pos + prefix.size() > text.size()) return false;
  for (std::size_t k = 0; k < prefix.size(); ++k)
    if (lower_cp(text[pos + k]) != prefix[k]) return false;
  return true;
}

std::size_t match_emoticon(const std::u32string& text, std::size_t pos) {
  for (const auto& e : emoticon_table_u32()) {
    if (pos + e.size() > text.size()) continue;
    if (text.compare(pos, e.size(), e) == 0) return e.size();
  }
  return 0;
}

std::vector<RawToken> scan(const std::u32string& text) {
  std::vector<RawToken> tokens;
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    if (is_space_cp(text[i])) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (prefix_matches_ci(text, i, U"http://") ||
        prefix_matches_ci(text, i, U"https://") ||
        prefix_matches_ci(text, i, U"www.")) {
      while (i < n && !is_space_cp(text[i])) ++i;
      tokens.push_back({static_cast<std::uint32_t>(start),
                        static_cast<std::uint32_t>(i), TokenKind::url});
      continue;
    }
    if (const std::size_t len = match_emoticon(text, i); len > 0) {
      i += len;
      tokens.push_back({static_cast<std::uint32_t>(start),
                        static_cast<std::uint32_t>(i), TokenKind::other});
      continue;
    }
    if ((text[i] == U'@' || text[i] == U'#') && i + 1 < n &&
        is_word_cp(text[i + 1])) {
      const TokenKind kind =
          text[i] == U'@' ? TokenKind::mention : TokenKind::hashtag;
      ++i;
      while (i < n && is_word_cp(text[i])) ++i;
      tokens.push_back({static_cast<std::uint32_t>(start),
                        static_cast<std::uint32_t>(i), kind});
      continue;
    }
    if (is_word_cp(text[i])) {
      while (i < n && is_word_cp(text[i])) ++i;
      tokens.push_back({static_cast<std::uint32_t>(start),
                        static_cast<std::uint32_t>(i), TokenKind::other});
      continue;
    }
    ++i;  // single punctuation mark or symbol
    tokens.push_back({static_cast<std::uint32_t>(start),
                      static_cast<std::uint32_t>(i), TokenKind::other});
  }
  return tokens;
}

bool allowed_cp(char32_t c) {
  return is_word_cp(c) || is_ascii_punct_cp(c) || is_space_cp(c);
}

Token make_token(const std::u32string& text, std::uint32_t s, std::uint32_t e) {
  return Token{encode_utf8(std::u32string_view(text).substr(s, e - s)), s, e};
}

}  // namespace

const std::vector<std::string>& emoticon_table() {
  static const std::vector<std::string> table = {
      ":)",  ":-)", ":]",  ":-]", ":}",  "=)",  "=]",  ":D",  ":-D", "=D",
      "xD",  "XD",  ":P",  ":-P", ":p",  ":-p", "=P",  ";)",  ";-)", ";P",
      ";p",  ":(",  ":-(", ":[",  ":-[", ":{",  "=(",  "=[",  ":'(", ":')",
      ":/",  ":-/", ":\\", ":-\\", ":|", ":-|", ":O",  ":-O", ":o",  ":-o",
      ":*",  ":-*", ":3",  "<3",  "</3", "^_^", "-_-", "o_O", "O_o", "8)",
      "8-)", "B)",  ">:(", ">:)"};
  return table;
}

bool OffsetMap::identity() const {
  for (std::size_t i = 0; i < new_pos.size(); ++i)
    if (new_pos[i] != i) return false;
  return true;
}

std::vector<Token> tokenize(const std::string& text) {
  const std::u32string u = decode_utf8(text);
  std::vector<Token> out;
  for (const RawToken& rt : scan(u)) out.push_back(make_token(u, rt.start, rt.end));
  return out;
}

NormalizedTweet normalize(const Tweet& tweet) {
  const std::u32string orig = decode_utf8(tweet.text);
  const std::vector<RawToken> raw = scan(orig);
  std::unordered_map<std::uint32_t, RawToken> replacements;
  for (const RawToken& rt : raw)
    if (rt.kind == TokenKind::url || rt.kind == TokenKind::mention)
      replacements.emplace(rt.start, rt);

  std::u32string out;
  OffsetMap map;
  map.new_pos.assign(orig.size() + 1, 0);
  map.replaced.assign(orig.size(), 0);

  std::size_t i = 0;
  while (i < orig.size()) {
    map.new_pos[i] = static_cast<std::uint32_t>(out.size());
    if (auto it = replacements.find(static_cast<std::uint32_t>(i));
        it != replacements.end()) {
      const RawToken& rt = it->second;
      out += rt.kind == TokenKind::url ? U"URL" : U"@USER";
      // interior boundaries map to the replacement start; spans touching
      // them are dropped by project_spans anyway
      for (std::size_t k = i; k < rt.end; ++k) {
        map.replaced[k] = 1;
        if (k > i) map.new_pos[k] = map.new_pos[i];
      }
      i = rt.end;
      continue;
    }
    if (allowed_cp(orig[i])) out.push_back(orig[i]);
    ++i;
  }
  map.new_pos[orig.size()] = static_cast<std::uint32_t>(out.size());

  NormalizedTweet nt;
  nt.original = tweet;
  nt.normalized_text = encode_utf8(out);
  nt.offset_map = std::move(map);
  for (const RawToken& rt : scan(out)) {
    if (rt.kind == TokenKind::hashtag) {
      nt.tokens.push_back(make_token(out, rt.start, rt.start + 1));
      nt.tokens.push_back(make_token(out, rt.start + 1, rt.end));
    } else {
      nt.tokens.push_back(make_token(out, rt.start, rt.end));
    }
  }
  return nt;
}

SpanProjection project_spans(const std::vector<Span>& spans,
                             const NormalizedTweet& nt) {
  const std::u32string norm = decode_utf8(nt.normalized_text);
  SpanProjection out;
  for (const Span& s : spans) {
    bool touches_replacement = false;
    for (std::uint32_t k = s.start; k < s.end; ++k)
      if (nt.offset_map.replaced.at(k)) {
        touches_replacement = true;
        break;
      }
    const std::uint32_t ns = nt.offset_map.map(s.start);
    const std::uint32_t ne = nt.offset_map.map(s.end);
    if (touches_replacement || ns >= ne) {
      out.dropped.push_back(s);
      continue;
    }
    Span p;
    p.start = ns;
    p.end = ne;
    p.surface = encode_utf8(std::u32string_view(norm).substr(ns, ne - ns));
    p.score = s.score;
    out.spans.push_back(std::move(p));
  }
  return out;
}

Dataset normalize_dataset(const Dataset& ds, std::vector<std::string>* warnings) {
  Dataset out;
  out.name = ds.name;
  for (const auto& at : ds.tweets) {
    NormalizedTweet nt = normalize(at.tweet);
    if (nt.normalized_text.empty()) {
      if (warnings)
        warnings->push_back(at.tweet.id + "\ttweet empty after normalization");
      continue;
    }
    SpanProjection proj = project_spans(at.spans, nt);
    if (warnings)
      for (const Span& d : proj.dropped)
        warnings->push_back(at.tweet.id + "\tdropped span \"" + d.surface +
                            "\" erased by normalization");
    AnnotatedTweet nat;
    nat.tweet = Tweet{at.tweet.id, at.tweet.user_id, nt.normalized_text};
    nat.spans = std::move(proj.spans);
    out.tweets.push_back(std::move(nat));
  }
  return out;
}

}  // namespace tweetmeds::preprocess
