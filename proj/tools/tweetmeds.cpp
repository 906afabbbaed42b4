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

// Command-line surface for the medication-mention pipeline:
//   preprocess -> weak-label -> augment -> train -> predict -> ensemble ->
//   evaluate, plus the synthetic-corpus generator and a top-mentions helper.
// Exit codes: 0 success, 1 validation/runtime error, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tweetmeds/augment.hpp"
#include "tweetmeds/bio.hpp"
#include "tweetmeds/corpus.hpp"
#include "tweetmeds/ensemble.hpp"
#include "tweetmeds/metrics.hpp"
#include "tweetmeds/model/model.hpp"
#include "tweetmeds/preprocess.hpp"
#include "tweetmeds/text.hpp"
#include "tweetmeds/weaklabel.hpp"

namespace tm = tweetmeds;
using nlohmann::json;

namespace {

void write_lines(const std::vector<std::string>& lines,
                 const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  for (const auto& l : lines) out << l << '\n';
}

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

tm::Dataset load_concat(const std::vector<std::string>& paths,
                        const std::string& name) {
  tm::Dataset all;
  all.name = name;
  for (const auto& p : paths) {
    tm::Dataset ds = tm::load_jsonl(p);
    for (auto& at : ds.tweets) all.tweets.push_back(std::move(at));
  }
  tm::validate_dataset(all);  // catches id collisions across files
  return all;
}

// ---------------------------------------------------------------------------
// preprocess

struct PreprocessArgs {
  std::string in, out, warnings_path;
};

void run_preprocess(const PreprocessArgs& a) {
  tm::Dataset ds = tm::load_jsonl(a.in);
  std::vector<std::string> warnings;
  tm::Dataset norm = tm::preprocess::normalize_dataset(ds, &warnings);
  // BIO validation: every projected span must align with token boundaries
  for (const auto& at : norm.tweets) {
    const auto nt = tm::preprocess::normalize(at.tweet);
    try {
      tm::bio::encode(nt.tokens, at.spans);
    } catch (const std::exception& e) {
      throw std::runtime_error("tweet " + at.tweet.id + ": " + e.what());
    }
  }
  tm::save_jsonl(norm, a.out);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  if (!a.warnings_path.empty()) write_lines(warnings, a.warnings_path);
  std::cout << "preprocessed " << norm.tweets.size() << " tweets ("
            << warnings.size() << " warnings)\n";
}

// ---------------------------------------------------------------------------
// weak-label

struct WeakLabelArgs {
  std::string in, out, report_path;
  std::string mode = "partial";
  std::size_t max_token_gap = 0;
  double min_overlap = 0.5;
  std::size_t edit_distance = 1;
  bool keep_unmatched = false;
};

void run_weak_label(const WeakLabelArgs& a) {
  tm::weaklabel::MatchPolicy policy;
  policy.mode = a.mode == "exact" ? tm::weaklabel::MatchMode::exact
                                  : tm::weaklabel::MatchMode::partial;
  policy.max_token_gap = a.max_token_gap;
  policy.min_token_overlap_fraction = a.min_overlap;
  policy.edit_distance_per_token = a.edit_distance;
  policy.validate();

  const auto rows = tm::weaklabel::load_binary_tsv(a.in);
  tm::weaklabel::Report report;
  std::vector<std::string> unmatched_ids;
  tm::Dataset out;
  out.name = a.out;
  for (const auto& row : rows) {
    if (!row.positive) {
      out.tweets.push_back({row.tweet, {}});  // kept as all-O training data
      continue;
    }
    ++report.n_input;
    auto rec = tm::weaklabel::recover_spans(row.tweet, row.names, policy);
    if (!rec.matched) {
      ++report.n_unmatched;
      unmatched_ids.push_back(row.tweet.id);
      if (!a.keep_unmatched) continue;  // flagged for exclusion
    } else if (rec.used_partial) {
      ++report.n_matched_partial;
    } else {
      ++report.n_matched_exact;
    }
    out.tweets.push_back(std::move(rec.tweet));
  }
  tm::validate_dataset(out);
  tm::save_jsonl(out, a.out);

  json rj{{"n_input", report.n_input},
          {"n_matched_exact", report.n_matched_exact},
          {"n_matched_partial", report.n_matched_partial},
          {"n_unmatched", report.n_unmatched},
          {"unmatched_tweet_ids", unmatched_ids}};
  if (!a.report_path.empty()) write_text(rj.dump(2), a.report_path);
  std::cout << rj.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// augment

struct AugmentArgs {
  std::string pool, pred, lexicon, categories, out, report_path;
  double threshold = 0.9;
  std::size_t max_chars = 128;
  bool allow_multi_mention = false;
  std::size_t per_drug = 4;
  std::uint64_t seed = 0;
  bool no_dedup = false;
};

void run_augment(const AugmentArgs& a) {
  tm::Dataset pool_ds = tm::load_jsonl(a.pool);
  const tm::ensemble::PredictionSet preds =
      tm::ensemble::load_prediction_jsonl(a.pred);

  // join predictions onto the pool tweets
  std::vector<tm::AnnotatedTweet> joined;
  for (const auto& at : pool_ds.tweets) {
    tm::AnnotatedTweet j;
    j.tweet = at.tweet;
    const auto it = preds.predictions.find(at.tweet.id);
    if (it != preds.predictions.end()) j.spans = it->second;
    tm::validate_annotated_tweet(j);  // predictions must match this text
    joined.push_back(std::move(j));
  }

  tm::augment::SelfTrainFilterConfig fcfg;
  fcfg.score_threshold = a.threshold;
  fcfg.max_chars = a.max_chars;
  fcfg.require_single_mention = !a.allow_multi_mention;
  std::vector<tm::AnnotatedTweet> filtered =
      tm::augment::self_train_filter(joined, fcfg);

  const auto lexicon = tm::load_lexicon_tsv(a.lexicon);
  const auto cat_entries = tm::load_lexicon_tsv(
      a.categories.empty() ? a.lexicon : a.categories);
  std::map<std::string, std::string> categories;
  for (const auto& e : cat_entries) categories[e.name] = e.use_category;

  // tweets whose mention has no known category cannot donate context
  std::vector<tm::AnnotatedTweet> usable;
  std::size_t n_unresolvable = 0;
  for (auto& at : filtered) {
    const std::string key = tm::lower_utf8(at.spans.at(0).surface);
    bool found = false;
    for (const auto& [name, cat] : categories)
      if (tm::lower_utf8(name) == key) {
        found = true;
        break;
      }
    if (found)
      usable.push_back(std::move(at));
    else
      ++n_unresolvable;
  }

  tm::augment::SubstitutionConfig scfg;
  scfg.per_drug = a.per_drug;
  scfg.seed = a.seed;
  scfg.dedup = !a.no_dedup;
  tm::augment::SubstitutionReport rep;
  std::vector<tm::AnnotatedTweet> produced =
      tm::augment::substitute_drugs(usable, lexicon, categories, scfg, &rep);

  tm::Dataset out;
  out.name = a.out;
  out.tweets = std::move(produced);
  tm::validate_dataset(out);
  tm::save_jsonl(out, a.out);

  json rj = json::parse(tm::augment::substitution_report_json(rep));
  rj["n_pool"] = pool_ds.tweets.size();
  rj["n_after_self_train_filter"] = filtered.size();
  rj["n_unresolvable_category"] = n_unresolvable;
  if (!a.report_path.empty()) write_text(rj.dump(2), a.report_path);
  std::cout << rj.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// top-mentions

struct TopMentionsArgs {
  std::string in, out;
  std::size_t k = 200;
};

void run_top_mentions(const TopMentionsArgs& a) {
  const tm::Dataset ds = tm::load_jsonl(a.in);
  std::vector<std::string> lines;
  for (const auto& [name, count] : tm::augment::top_mentions(ds, a.k))
    lines.push_back(name + "\t" + std::to_string(count));
  if (a.out.empty())
    for (const auto& l : lines) std::cout << l << '\n';
  else
    write_lines(lines, a.out);
}

// ---------------------------------------------------------------------------
// train

struct TrainArgs {
  std::vector<std::string> data;
  std::string dev, out, combo_name = "train";
  double dev_frac = 0.1;
  std::size_t min_freq = 1;
  tm::model::ModelConfig mcfg;
  tm::model::TrainConfig tcfg;
};

void run_train(const TrainArgs& a) {
  tm::Dataset all = load_concat(a.data, a.combo_name);
  tm::Dataset train_set, dev_set;
  train_set.name = a.combo_name;
  dev_set.name = "dev";
  if (!a.dev.empty()) {
    train_set.tweets = all.tweets;
    dev_set = tm::load_jsonl(a.dev);
  } else if (a.dev_frac <= 0.0) {
    train_set.tweets = all.tweets;
    dev_set.tweets = all.tweets;  // checkpoint selection on training fit
  } else {
    std::vector<std::size_t> order(all.tweets.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937_64 rng(a.tcfg.seed);
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[rng() % i]);
    const auto n_dev = static_cast<std::size_t>(
        a.dev_frac * static_cast<double>(all.tweets.size()));
    for (std::size_t i = 0; i < order.size(); ++i)
      (i < n_dev ? dev_set : train_set)
          .tweets.push_back(all.tweets[order[i]]);
  }

  std::cout << "combination " << a.combo_name << ": "
            << train_set.tweets.size() << " train / " << dev_set.tweets.size()
            << " dev tweets, "
            << (a.tcfg.multi_task ? "multi-task" : "single-task") << "\n";

  std::vector<tm::model::TrainLogEntry> log;
  std::vector<std::string> warnings;
  const tm::model::TaggerModel model = tm::model::train(
      train_set, dev_set, a.mcfg, a.tcfg, a.min_freq, &log, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& e : log)
    std::cout << "epoch " << e.epoch << " loss " << e.mean_loss
              << " dev_strict_f1 " << e.dev_strict_f1 << '\n';
  model.save(a.out);
  std::cout << "saved checkpoint " << a.out << '\n';
}

// ---------------------------------------------------------------------------
// predict

struct PredictArgs {
  std::string model, in, out, name;
};

void run_predict(const PredictArgs& a) {
  const tm::model::TaggerModel model = tm::model::TaggerModel::load(a.model);
  const tm::Dataset ds = tm::load_jsonl(a.in);
  tm::ensemble::PredictionSet set;
  set.model_name =
      a.name.empty() ? std::filesystem::path(a.model).stem().string() : a.name;
  set.predictions = tm::model::predict_dataset(model, ds);
  tm::ensemble::save_prediction_jsonl(set, a.out);
  std::cout << "wrote predictions for " << set.predictions.size()
            << " tweets to " << a.out << '\n';
}

// ---------------------------------------------------------------------------
// ensemble

struct EnsembleArgs {
  std::vector<std::string> preds;
  std::string out, gold, name = "ensemble";
  std::size_t k = 0;  // 0 means --tune
  bool tune = false;
};

void run_ensemble(const EnsembleArgs& a) {
  std::vector<tm::ensemble::PredictionSet> sets;
  for (const auto& p : a.preds)
    sets.push_back(tm::ensemble::load_prediction_jsonl(p));

  std::size_t k = a.k;
  if (a.tune) {
    if (a.gold.empty())
      throw std::runtime_error("--tune requires --gold");
    tm::Dataset gold = tm::load_jsonl(a.gold);
    const auto res = tm::ensemble::tune_k(sets, gold);
    std::cout << "k\tstrict_P\tstrict_R\tstrict_F1\n";
    for (const auto& [kk, m] : res.sweep)
      std::cout << kk << '\t' << m.precision << '\t' << m.recall << '\t'
                << m.f1 << '\n';
    std::cout << "best_k\t" << res.best_k << '\n';
    k = res.best_k;
  }
  if (k == 0) throw std::runtime_error("either -k or --tune is required");

  tm::ensemble::PredictionSet voted;
  voted.model_name = a.name + "-k" + std::to_string(k);
  voted.predictions = tm::ensemble::vote(sets, tm::ensemble::EnsembleConfig{k});
  if (!a.out.empty()) {
    tm::ensemble::save_prediction_jsonl(voted, a.out);
    std::cout << "wrote " << voted.model_name << " predictions to " << a.out
              << '\n';
  }
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
  std::string gold, json_out;
  std::vector<std::string> preds;
};

void run_evaluate(const EvaluateArgs& a) {
  const tm::Dataset gold = tm::load_jsonl(a.gold);
  std::vector<tm::metrics::TableRow> rows;
  for (const auto& p : a.preds) {
    const auto set = tm::ensemble::load_prediction_jsonl(p);
    tm::metrics::TableRow row;
    row.name = set.model_name.empty() ? p : set.model_name;
    row.strict =
        tm::metrics::evaluate(gold, set.predictions, tm::metrics::Mode::strict);
    row.overlap = tm::metrics::evaluate(gold, set.predictions,
                                        tm::metrics::Mode::overlap);
    rows.push_back(std::move(row));
  }
  std::cout << tm::metrics::format_table(rows);
  if (!a.json_out.empty()) write_text(tm::metrics::to_json(rows), a.json_out);
}

// ---------------------------------------------------------------------------
// synth: deterministic synthetic corpus for tests and the documented
// end-to-end script

struct SynthArgs {
  std::string out_dir;
  std::uint64_t seed = 7;
};

struct SynthDrug {
  std::string name;
  std::string category;
};

const std::vector<SynthDrug>& synth_drugs() {
  static const std::vector<SynthDrug> drugs = {
      {"tylenol", "pain"},      {"advil", "pain"},
      {"aleve", "pain"},        {"ibuprofen", "pain"},
      {"motrin", "pain"},       {"tums", "heartburn"},
      {"zantac", "heartburn"},  {"pepcid", "heartburn"},
      {"prilosec", "heartburn"},{"nyquil", "cold"},
      {"dayquil", "cold"},      {"sudafed", "cold"},
      {"mucinex", "cold"},      {"biotin", "vitamin"},
      {"folate", "vitamin"},    {"vitamin c", "vitamin"},
      {"vitamin d", "vitamin"}, {"melatonin", "sleep"},
      {"ambien", "sleep"},      {"zyrtec", "allergy"},
      {"claritin", "allergy"},  {"benadryl", "allergy"}};
  return drugs;
}

const std::vector<std::string>& positive_templates() {
  static const std::vector<std::string> t = {
      "i took {D} for my headache",
      "just bought some {D} at the store",
      "@friend have you tried {D} yet",
      "my doctor said {D} should help",
      "took {D} this morning #feelingbetter",
      "need more {D} today",
      "honestly {D} saved my night",
      "{D} is not working for me",
      "gonna take {D} and sleep https://t.co/xyz",
      "ugh out of {D} again"};
  return t;
}

const std::vector<std::string>& negative_templates() {
  static const std::vector<std::string> t = {
      "no meds today just tea",
      "i hate mondays",
      "check https://t.co/abc so cool",
      "@friend see you at 5",
      "my head hurts so bad",
      "drinking water and resting all day",
      "#monday mood is very low",
      "the pharmacy was closed again",
      "so tired of this weather",
      "happy birthday @friend :)"};
  return t;
}

tm::AnnotatedTweet synth_tweet(const std::string& id, const std::string& user,
                               bool positive, std::mt19937_64& rng,
                               bool with_emoji) {
  tm::AnnotatedTweet at;
  at.tweet.id = id;
  at.tweet.user_id = user;
  if (!positive) {
    const auto& ts = negative_templates();
    at.tweet.text = ts[rng() % ts.size()];
  } else {
    const auto& ts = positive_templates();
    const std::string& tpl = ts[rng() % ts.size()];
    const SynthDrug& drug = synth_drugs()[rng() % synth_drugs().size()];
    const auto slot = tpl.find("{D}");
    const std::string prefix = tpl.substr(0, slot);
    const std::string suffix = tpl.substr(slot + 3);
    at.tweet.text = prefix + drug.name + suffix;
    tm::Span s;
    s.start = static_cast<std::uint32_t>(tm::length_utf8(prefix));
    s.end = s.start + static_cast<std::uint32_t>(tm::length_utf8(drug.name));
    s.surface = drug.name;
    at.spans.push_back(std::move(s));
  }
  if (with_emoji && rng() % 4 == 0) at.tweet.text += " \xF0\x9F\x99\x82";  // 🙂
  return at;
}

void run_synth(const SynthArgs& a) {
  namespace fs = std::filesystem;
  fs::create_directories(a.out_dir);
  std::mt19937_64 rng(a.seed);
  const auto user = [&]() {
    return "u" + std::to_string(rng() % 10);
  };

  const auto make_split = [&](const std::string& prefix, std::size_t n,
                              std::size_t n_positive) {
    tm::Dataset ds;
    ds.name = prefix;
    for (std::size_t i = 0; i < n; ++i)
      ds.tweets.push_back(synth_tweet(prefix + "-" + std::to_string(i), user(),
                                      i < n_positive, rng, true));
    tm::validate_dataset(ds);
    return ds;
  };

  tm::save_jsonl(make_split("tr", 50, 30), a.out_dir + "/train.jsonl");
  tm::save_jsonl(make_split("dv", 24, 14), a.out_dir + "/dev.jsonl");
  tm::save_jsonl(make_split("te", 24, 14), a.out_dir + "/test.jsonl");

  // unlabeled pool for self-training (texts carry mentions, no gold spans)
  tm::Dataset pool;
  pool.name = "pool";
  for (std::size_t i = 0; i < 120; ++i) {
    auto at = synth_tweet("pl-" + std::to_string(i), user(), true, rng, false);
    at.spans.clear();
    pool.tweets.push_back(std::move(at));
  }
  tm::save_jsonl(pool, a.out_dir + "/pool.jsonl");

  // 2018-style binary-labeled TSV; a few rows exercise partial matching
  std::vector<tm::weaklabel::BinaryLabeledTweet> rows;
  for (std::size_t i = 0; i < 30; ++i) {
    auto at = synth_tweet("b18-" + std::to_string(i), user(), i < 20, rng,
                          false);
    tm::weaklabel::BinaryLabeledTweet row;
    row.tweet = at.tweet;
    row.positive = !at.spans.empty();
    if (row.positive) row.names.push_back(at.spans[0].surface);
    rows.push_back(std::move(row));
  }
  // lexical-variant positives: normalized name differs from the mention
  rows.push_back({{"b18-v1", user(), "took tylenol before bed"}, true,
                  {"tylenol pm"}});
  rows.push_back({{"b18-v2", user(), "my vitamin d3 arrived"}, true,
                  {"vitamin d"}});
  rows.push_back({{"b18-v3", user(), "some ibuprofin for the pain"}, true,
                  {"ibuprofen"}});
  // a mention that cannot be located at all
  rows.push_back({{"b18-u1", user(), "feeling sick since tuesday"}, true,
                  {"oxycodone"}});
  tm::weaklabel::save_binary_tsv(rows, a.out_dir + "/binary2018.tsv");

  std::vector<tm::DrugLexiconEntry> lex;
  for (const auto& d : synth_drugs()) lex.push_back({d.name, d.category});
  tm::save_lexicon_tsv(lex, a.out_dir + "/lexicon.tsv");

  std::cout << "wrote synthetic corpus to " << a.out_dir << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"medication mention detection in tweets"};
  app.require_subcommand(1);

  PreprocessArgs pre;
  auto* cmd_pre = app.add_subcommand(
      "preprocess", "normalize tweets, project spans, validate BIO");
  cmd_pre->add_option("--in", pre.in, "input dataset JSONL")->required();
  cmd_pre->add_option("--out", pre.out, "output dataset JSONL")->required();
  cmd_pre->add_option("--warnings", pre.warnings_path,
                      "write warning lines to this file");

  WeakLabelArgs wl;
  auto* cmd_wl = app.add_subcommand(
      "weak-label", "recover mention spans from binary-labeled TSV");
  cmd_wl->add_option("--in", wl.in, "2018-style TSV")->required();
  cmd_wl->add_option("--out", wl.out, "output dataset JSONL")->required();
  cmd_wl->add_option("--report", wl.report_path, "write JSON report here");
  cmd_wl->add_option("--mode", wl.mode, "exact|partial")
      ->check(CLI::IsMember({"exact", "partial"}));
  cmd_wl->add_option("--max-token-gap", wl.max_token_gap,
                     "unmatched tokens allowed inside a fuzzy hit group");
  cmd_wl->add_option("--min-overlap", wl.min_overlap,
                     "fraction of name tokens a fuzzy match must cover")
      ->check(CLI::Range(1e-9, 1.0));
  cmd_wl->add_option("--edit-distance", wl.edit_distance,
                     "per-token Levenshtein tolerance");
  cmd_wl->add_flag("--keep-unmatched", wl.keep_unmatched,
                   "keep unmatched positives (with no spans) in the output");

  AugmentArgs aug;
  auto* cmd_aug = app.add_subcommand(
      "augment", "self-train filter plus category-matched drug substitution");
  cmd_aug->add_option("--pool", aug.pool, "pool dataset JSONL (preprocessed)")
      ->required();
  cmd_aug->add_option("--pred", aug.pred, "prediction-set JSONL on the pool")
      ->required();
  cmd_aug->add_option("--lexicon", aug.lexicon, "drug lexicon TSV")
      ->required();
  cmd_aug->add_option("--categories", aug.categories,
                      "TSV mapping pool mentions to categories "
                      "(defaults to --lexicon)");
  cmd_aug->add_option("--out", aug.out, "output dataset JSONL")->required();
  cmd_aug->add_option("--report", aug.report_path, "write JSON report here");
  cmd_aug->add_option("--threshold", aug.threshold,
                      "span score must be strictly above this")
      ->check(CLI::Range(0.0, 1.0));
  cmd_aug->add_option("--max-chars", aug.max_chars,
                      "drop pool tweets longer than this many characters");
  cmd_aug->add_flag("--allow-multi-mention", aug.allow_multi_mention,
                    "do not require exactly one mention per pool tweet");
  cmd_aug->add_option("--per-drug", aug.per_drug,
                      "tweets sampled per lexicon drug");
  cmd_aug->add_option("--seed", aug.seed, "sampling seed");
  cmd_aug->add_flag("--no-dedup", aug.no_dedup,
                    "keep duplicate augmented texts");

  TopMentionsArgs topm;
  auto* cmd_top = app.add_subcommand(
      "top-mentions", "most frequent mention surfaces in a dataset");
  cmd_top->add_option("--in", topm.in, "dataset JSONL")->required();
  cmd_top->add_option("-k,--k", topm.k, "how many to keep");
  cmd_top->add_option("--out", topm.out, "output TSV (stdout when absent)");

  TrainArgs tr;
  auto* cmd_tr = app.add_subcommand("train", "train the multi-task tagger");
  cmd_tr->add_option("--data", tr.data,
                     "training dataset JSONL (repeat to concatenate a "
                     "combination)")
      ->required();
  cmd_tr->add_option("--dev", tr.dev, "dev dataset JSONL for checkpoint "
                                      "selection");
  cmd_tr->add_option("--dev-frac", tr.dev_frac,
                     "held-out fraction when --dev is absent (0 trains and "
                     "selects on the full data)")
      ->check(CLI::Range(0.0, 0.9));
  cmd_tr->add_option("--out", tr.out, "checkpoint path")->required();
  cmd_tr->add_option("--combo-name", tr.combo_name,
                     "data combination label for logs");
  cmd_tr->add_option("--min-freq", tr.min_freq, "vocabulary frequency cutoff");
  cmd_tr->add_option("--d-model", tr.mcfg.d_model, "model width");
  cmd_tr->add_option("--layers", tr.mcfg.n_layers, "encoder layers");
  cmd_tr->add_option("--heads", tr.mcfg.n_heads, "attention heads");
  cmd_tr->add_option("--d-ff", tr.mcfg.d_ff, "feed-forward width");
  cmd_tr->add_option("--max-seq-len", tr.mcfg.max_seq_len,
                     "maximum sequence length (CLS included)");
  cmd_tr->add_option("--dropout", tr.mcfg.dropout, "dropout rate")
      ->check(CLI::Range(0.0, 0.999));
  cmd_tr->add_flag("--case-sensitive", tr.mcfg.case_sensitive,
                   "keep case information");
  cmd_tr->add_option("--epochs", tr.tcfg.epochs, "training epochs");
  cmd_tr->add_option("--lr", tr.tcfg.lr, "learning rate");
  cmd_tr->add_option("--batch-size", tr.tcfg.batch_size, "minibatch size");
  cmd_tr->add_option("--seed", tr.tcfg.seed, "random seed");
  bool single_task = false;
  cmd_tr->add_flag("--single-task", single_task,
                   "sequence labelling objective only (ablation arm)");
  cmd_tr->add_flag("--tag-loss-sum", tr.tcfg.tag_loss_sum,
                   "sum the tag loss over tokens instead of averaging");

  PredictArgs pd;
  auto* cmd_pd = app.add_subcommand("predict", "tag a dataset and emit a "
                                               "prediction set");
  cmd_pd->add_option("--model", pd.model, "checkpoint path")->required();
  cmd_pd->add_option("--in", pd.in, "dataset JSONL (preprocessed)")
      ->required();
  cmd_pd->add_option("--out", pd.out, "prediction-set JSONL")->required();
  cmd_pd->add_option("--name", pd.name, "model name in the output");

  EnsembleArgs en;
  auto* cmd_en = app.add_subcommand(
      "ensemble", "vote spans across prediction sets, or tune k on gold");
  cmd_en->add_option("--pred", en.preds, "prediction-set JSONL (repeat)")
      ->required();
  cmd_en->add_option("-k", en.k, "agreement threshold");
  cmd_en->add_flag("--tune", en.tune, "sweep k on --gold and pick the best");
  cmd_en->add_option("--gold", en.gold, "gold dataset JSONL for --tune");
  cmd_en->add_option("--out", en.out, "voted prediction-set JSONL");
  cmd_en->add_option("--name", en.name, "ensemble name prefix");

  EvaluateArgs ev;
  auto* cmd_ev = app.add_subcommand(
      "evaluate", "strict + overlap P/R/F1 against gold");
  cmd_ev->add_option("--gold", ev.gold, "gold dataset JSONL")->required();
  cmd_ev->add_option("--pred", ev.preds, "prediction-set JSONL (repeat)")
      ->required();
  cmd_ev->add_option("--json", ev.json_out, "write the report JSON here");

  SynthArgs sy;
  auto* cmd_sy = app.add_subcommand(
      "synth", "generate the bundled synthetic corpus");
  cmd_sy->add_option("--out-dir", sy.out_dir, "output directory")->required();
  cmd_sy->add_option("--seed", sy.seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_pre->parsed()) run_preprocess(pre);
    if (cmd_wl->parsed()) run_weak_label(wl);
    if (cmd_aug->parsed()) run_augment(aug);
    if (cmd_top->parsed()) run_top_mentions(topm);
    if (cmd_tr->parsed()) {
      tr.tcfg.multi_task = !single_task;
      run_train(tr);
    }
    if (cmd_pd->parsed()) run_predict(pd);
    if (cmd_en->parsed()) run_ensemble(en);
    if (cmd_ev->parsed()) run_evaluate(ev);
    if (cmd_sy->parsed()) run_synth(sy);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
