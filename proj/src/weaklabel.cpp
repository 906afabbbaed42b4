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

#include "tweetmeds/weaklabel.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

#include "tweetmeds/preprocess.hpp"
#include "tweetmeds/text.hpp"

namespace tweetmeds::weaklabel {

void MatchPolicy::validate() const {
  if (min_token_overlap_fraction <= 0.0 || min_token_overlap_fraction > 1.0)
    throw std::invalid_argument(
        "min_token_overlap_fraction must be in (0,1]");
}

namespace {

Span make_span(const std::u32string& text, std::uint32_t s, std::uint32_t e) {
  Span out;
  out.start = s;
  out.end = e;
  out.surface = encode_utf8(std::u32string_view(text).substr(s, e - s));
  return out;
}

}  // namespace

std::vector<Span> match_exact(const std::string& text,
                              const std::string& name) {
  std::vector<Span> out;
  const std::u32string utext = decode_utf8(text);
  const std::u32string needle = lower(decode_utf8(name));
  if (needle.empty() || needle.size() > utext.size()) return out;

  std::set<std::uint32_t> starts, ends;
  for (const auto& tok : preprocess::tokenize(text)) {
    starts.insert(tok.start);
    ends.insert(tok.end);
  }
  const std::u32string hay = lower(utext);
  std::size_t i = 0;
  while (i + needle.size() <= hay.size()) {
    const auto s = static_cast<std::uint32_t>(i);
    const auto e = static_cast<std::uint32_t>(i + needle.size());
    if (starts.count(s) && ends.count(e) &&
        hay.compare(i, needle.size(), needle) == 0) {
      out.push_back(make_span(utext, s, e));
      i += needle.size();  // greedy, non-overlapping
    } else {
      ++i;
    }
  }
  return out;
}

std::vector<Span> match_partial(const std::string& text,
                                const std::string& name,
                                const MatchPolicy& policy) {
  policy.validate();
  std::vector<Span> out;
  const std::u32string utext = decode_utf8(text);
  const std::vector<preprocess::Token> text_tokens = preprocess::tokenize(text);
  const std::vector<preprocess::Token> name_tokens = preprocess::tokenize(name);
  if (name_tokens.empty() || text_tokens.empty()) return out;

  std::vector<std::u32string> name_low;
  for (const auto& nt : name_tokens) name_low.push_back(lower(decode_utf8(nt.surface)));

  // per text token, the set of name tokens it is close to
  const std::size_t m = name_low.size();
  std::vector<std::vector<bool>> close(text_tokens.size(),
                                       std::vector<bool>(m, false));
  std::vector<bool> hit(text_tokens.size(), false);
  for (std::size_t i = 0; i < text_tokens.size(); ++i) {
    const std::u32string low = lower(decode_utf8(text_tokens[i].surface));
    for (std::size_t j = 0; j < m; ++j) {
      if (edit_distance(low, name_low[j]) <= policy.edit_distance_per_token) {
        close[i][j] = true;
        hit[i] = true;
      }
    }
  }

  // maximal groups of hit tokens separated by at most max_token_gap non-hits
  std::size_t group_begin = 0;
  std::size_t last_hit = 0;
  bool open = false;
  const auto flush = [&](std::size_t first, std::size_t last) {
    std::vector<bool> covered(m, false);
    for (std::size_t i = first; i <= last; ++i)
      if (hit[i])
        for (std::size_t j = 0; j < m; ++j)
          if (close[i][j]) covered[j] = true;
    const std::size_t n_covered =
        static_cast<std::size_t>(std::count(covered.begin(), covered.end(), true));
    const double fraction = static_cast<double>(n_covered) / static_cast<double>(m);
    if (fraction + 1e-12 >= policy.min_token_overlap_fraction)
      out.push_back(
          make_span(utext, text_tokens[first].start, text_tokens[last].end));
  };
  for (std::size_t i = 0; i < text_tokens.size(); ++i) {
    if (!hit[i]) continue;
    if (!open) {
      group_begin = i;
      open = true;
    } else if (i - last_hit - 1 > policy.max_token_gap) {
      flush(group_begin, last_hit);
      group_begin = i;
    }
    last_hit = i;
  }
  if (open) flush(group_begin, last_hit);
  return out;
}

RecoverResult recover_spans(const Tweet& tweet,
                            const std::vector<std::string>& names,
                            const MatchPolicy& policy) {
  policy.validate();
  RecoverResult res;
  res.tweet.tweet = tweet;
  std::vector<Span> candidates;
  for (const std::string& name : names) {
    if (name.empty()) continue;
    std::vector<Span> found = match_exact(tweet.text, name);
    if (found.empty() && policy.mode == MatchMode::partial) {
      found = match_partial(tweet.text, name, policy);
      if (!found.empty()) res.used_partial = true;
    }
    if (found.empty()) {
      res.unmatched_names.push_back(name);
      continue;
    }
    candidates.insert(candidates.end(), found.begin(), found.end());
  }
  res.matched = res.unmatched_names.empty();

  // merge overlaps across names, longer span wins
  std::sort(candidates.begin(), candidates.end(),
            [](const Span& a, const Span& b) {
              const auto la = a.end - a.start, lb = b.end - b.start;
              if (la != lb) return la > lb;
              if (a.start != b.start) return a.start < b.start;
              return a.end < b.end;
            });
  std::vector<Span> kept;
  for (const Span& c : candidates) {
    bool overlaps = false;
    for (const Span& k : kept)
      if (c.start < k.end && k.start < c.end) {
        overlaps = true;
        break;
      }
    if (!overlaps) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end(),
            [](const Span& a, const Span& b) { return a.start < b.start; });
  res.tweet.spans = std::move(kept);
  return res;
}

std::vector<BinaryLabeledTweet> load_binary_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<BinaryLabeledTweet> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      const auto tab = line.find('\t', pos);
      if (tab == std::string::npos) {
        fields.push_back(line.substr(pos));
        break;
      }
      fields.push_back(line.substr(pos, tab - pos));
      pos = tab + 1;
    }
    if (fields.size() != 5)
      throw std::runtime_error(
          path + ":" + std::to_string(lineno) +
          ": expected tweet_id<TAB>user_id<TAB>text<TAB>label<TAB>names");
    BinaryLabeledTweet row;
    row.tweet.id = fields[0];
    row.tweet.user_id = fields[1];
    row.tweet.text = fields[2];
    if (fields[3] == "1")
      row.positive = true;
    else if (fields[3] == "0")
      row.positive = false;
    else
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": label must be 0 or 1, got \"" + fields[3] +
                               "\"");
    if (row.positive) {
      std::size_t p = 0;
      while (p <= fields[4].size() && !fields[4].empty()) {
        const auto semi = fields[4].find(';', p);
        const std::string name =
            semi == std::string::npos ? fields[4].substr(p)
                                      : fields[4].substr(p, semi - p);
        if (!name.empty()) row.names.push_back(name);
        if (semi == std::string::npos) break;
        p = semi + 1;
      }
      if (row.names.empty())
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": positive row without names");
    } else if (!fields[4].empty()) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": negative row must have empty names");
    }
    if (row.tweet.id.empty() || row.tweet.text.empty())
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": empty tweet id or text");
    rows.push_back(std::move(row));
  }
  return rows;
}

void save_binary_tsv(const std::vector<BinaryLabeledTweet>& rows,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  for (const auto& r : rows) {
    out << r.tweet.id << '\t' << r.tweet.user_id << '\t' << r.tweet.text
        << '\t' << (r.positive ? '1' : '0') << '\t';
    for (std::size_t i = 0; i < r.names.size(); ++i) {
      if (i) out << ';';
      out << r.names[i];
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failure on " + path);
}

}  // namespace tweetmeds::weaklabel
