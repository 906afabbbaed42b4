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

#include "tweetmeds/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"
#include "tweetmeds/text.hpp"

namespace tweetmeds {

using nlohmann::json;

void validate_span(const Span& span, const std::u32string& text,
                   const std::string& owner_id) {
  const auto fail = [&](const std::string& what) {
    throw std::runtime_error("tweet " + owner_id + ": invalid span [" +
                             std::to_string(span.start) + "," +
                             std::to_string(span.end) + "): " + what);
  };
  if (span.start >= span.end) fail("start must be < end");
  if (span.end > text.size()) fail("end beyond text length");
  const std::string slice =
      encode_utf8(text.substr(span.start, span.end - span.start));
  if (slice != span.surface)
    fail("surface \"" + span.surface + "\" != text slice \"" + slice + "\"");
  if (span.score && (*span.score < 0.0 || *span.score > 1.0))
    fail("score outside [0,1]");
}

void validate_annotated_tweet(AnnotatedTweet& at) {
  if (at.tweet.id.empty()) throw std::runtime_error("tweet with empty id");
  if (at.tweet.text.empty())
    throw std::runtime_error("tweet " + at.tweet.id + ": empty text");
  const std::u32string text = decode_utf8(at.tweet.text);
  std::sort(at.spans.begin(), at.spans.end(),
            [](const Span& a, const Span& b) {
              return a.start != b.start ? a.start < b.start : a.end < b.end;
            });
  for (std::size_t i = 0; i < at.spans.size(); ++i) {
    validate_span(at.spans[i], text, at.tweet.id);
    if (i > 0 && at.spans[i].start < at.spans[i - 1].end)
      throw std::runtime_error("tweet " + at.tweet.id +
                               ": overlapping spans (the BIO schema cannot "
                               "represent overlaps)");
  }
}

void validate_dataset(Dataset& ds) {
  std::unordered_set<std::string> ids;
  for (auto& at : ds.tweets) {
    validate_annotated_tweet(at);
    if (!ids.insert(at.tweet.id).second)
      throw std::runtime_error("duplicate tweet id " + at.tweet.id);
  }
}

namespace {

Span span_from_json(const json& j, const std::string& owner_id) {
  if (!j.is_object() || !j.contains("start") || !j.contains("end") ||
      !j.contains("surface"))
    throw std::runtime_error("tweet " + owner_id +
                             ": span must be an object with start, end, "
                             "surface");
  if (!j["start"].is_number_unsigned() || !j["end"].is_number_unsigned())
    throw std::runtime_error("tweet " + owner_id +
                             ": span offsets must be non-negative integers");
  Span s;
  s.start = j["start"].get<std::uint32_t>();
  s.end = j["end"].get<std::uint32_t>();
  s.surface = j["surface"].get<std::string>();
  if (j.contains("score") && !j["score"].is_null())
    s.score = j["score"].get<double>();
  return s;
}

json span_to_json(const Span& s) {
  json j{{"start", s.start}, {"end", s.end}, {"surface", s.surface}};
  if (s.score) j["score"] = *s.score;
  return j;
}

}  // namespace

Dataset load_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Dataset ds;
  ds.name = path;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": bad JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j.contains("user_id") ||
        !j.contains("text") || !j.contains("spans") ||
        !j["spans"].is_array() || !j["id"].is_string() ||
        !j["user_id"].is_string() || !j["text"].is_string())
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": object must have string id, user_id, text "
                               "and array spans");
    AnnotatedTweet at;
    at.tweet.id = j["id"].get<std::string>();
    at.tweet.user_id = j["user_id"].get<std::string>();
    at.tweet.text = j["text"].get<std::string>();
    for (const auto& sj : j["spans"])
      at.spans.push_back(span_from_json(sj, at.tweet.id));
    try {
      validate_annotated_tweet(at);
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " +
                               e.what());
    }
    ds.tweets.push_back(std::move(at));
  }
  std::unordered_set<std::string> ids;
  for (const auto& at : ds.tweets)
    if (!ids.insert(at.tweet.id).second)
      throw std::runtime_error(path + ": duplicate tweet id " + at.tweet.id);
  return ds;
}

void save_jsonl(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  for (const auto& at : ds.tweets) {
    json j{{"id", at.tweet.id},
           {"user_id", at.tweet.user_id},
           {"text", at.tweet.text}};
    j["spans"] = json::array();
    for (const auto& s : at.spans) j["spans"].push_back(span_to_json(s));
    out << j.dump() << '\n';
  }
  if (!out) throw std::runtime_error("write failure on " + path);
}

CorpusStats stats(const Dataset& ds) {
  CorpusStats st;
  st.n_tweets = ds.tweets.size();
  for (const auto& at : ds.tweets) {
    if (!at.spans.empty()) ++st.n_positive;
    st.n_spans += at.spans.size();
  }
  st.positive_rate =
      st.n_tweets == 0
          ? 0.0
          : static_cast<double>(st.n_positive) / static_cast<double>(st.n_tweets);
  return st;
}

std::vector<DrugLexiconEntry> load_lexicon_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path + ": missing header row");
  if (line.rfind("name\tuse_category", 0) != 0)
    throw std::runtime_error(path + ": header must be name<TAB>use_category");
  std::vector<DrugLexiconEntry> lex;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected name<TAB>use_category");
    DrugLexiconEntry e{line.substr(0, tab), line.substr(tab + 1)};
    if (e.name.empty() || e.use_category.empty())
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": empty name or use_category");
    lex.push_back(std::move(e));
  }
  return lex;
}

void save_lexicon_tsv(const std::vector<DrugLexiconEntry>& lex,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "name\tuse_category\n";
  for (const auto& e : lex) out << e.name << '\t' << e.use_category << '\n';
  if (!out) throw std::runtime_error("write failure on " + path);
}

}  // namespace tweetmeds
