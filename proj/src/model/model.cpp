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

#include "tweetmeds/model/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "json.hpp"
#include "tweetmeds/text.hpp"

namespace tweetmeds::model {

using nlohmann::json;

int Vocab::id(const std::string& surface) const {
  const std::string key = lowercased ? lower_utf8(surface) : surface;
  const auto it = token_to_id.find(key);
  return it == token_to_id.end() ? kUnk : it->second;
}

Vocab build_vocab(const Dataset& ds, std::size_t min_freq,
                  bool case_sensitive) {
  if (ds.tweets.empty())
    throw std::runtime_error("cannot build a vocabulary from an empty dataset");
  std::map<std::string, std::size_t> counts;
  for (const auto& at : ds.tweets) {
    const auto nt = preprocess::normalize(at.tweet);
    for (const auto& tok : nt.tokens)
      ++counts[case_sensitive ? tok.surface : lower_utf8(tok.surface)];
  }
  if (counts.empty())
    throw std::runtime_error("dataset has no tokens after normalization");

  std::vector<std::pair<std::string, std::size_t>> entries(counts.begin(),
                                                           counts.end());
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  Vocab v;
  v.lowercased = !case_sensitive;
  v.id_to_token = {"[PAD]", "[UNK]", "[CLS]"};
  for (const auto& [token, count] : entries)
    if (count >= min_freq) v.id_to_token.push_back(token);
  for (std::size_t i = 0; i < v.id_to_token.size(); ++i)
    v.token_to_id.emplace(v.id_to_token[i], static_cast<int>(i));
  return v;
}

void ModelConfig::validate() const {
  if (d_model <= 0 || n_layers <= 0 || n_heads <= 0 || d_ff <= 0)
    throw std::invalid_argument("model dimensions must be positive");
  if (d_model % n_heads != 0)
    throw std::invalid_argument("d_model must be divisible by n_heads");
  if (max_seq_len < 2) throw std::invalid_argument("max_seq_len must be >= 2");
  if (dropout < 0.0 || dropout >= 1.0)
    throw std::invalid_argument("dropout must be in [0,1)");
  if (tag_set_size != 3)
    throw std::invalid_argument("tag_set_size must be 3 (B/I/O)");
}

EncoderShape ModelConfig::shape(int vocab_size) const {
  EncoderShape s;
  s.vocab_size = vocab_size;
  s.d_model = d_model;
  s.n_layers = n_layers;
  s.n_heads = n_heads;
  s.d_ff = d_ff;
  s.max_seq_len = max_seq_len;
  s.tag_set_size = tag_set_size;
  s.dropout = dropout;
  return s;
}

void TrainConfig::validate() const {
  if (epochs == 0) throw std::invalid_argument("epochs must be positive");
  if (lr < 0.0) throw std::invalid_argument("lr must be >= 0");
  if (batch_size == 0)
    throw std::invalid_argument("batch_size must be positive");
}

namespace {

// forward state kept around for the backward pass
struct FullForward {
  EncoderActs<double> acts;
  double z_bin = 0.0;
  Matd tag_logits;  // (L-1) x 3
};

int tag_index(bio::Tag t) { return static_cast<int>(t); }

FullForward full_forward(const EncoderParams<double>& params,
                         const EncoderShape& shape,
                         const std::vector<int>& ids, std::mt19937_64* rng) {
  if (ids.empty()) throw std::invalid_argument("empty id sequence");
  if (static_cast<int>(ids.size()) > shape.max_seq_len)
    throw std::invalid_argument("sequence longer than max_seq_len");
  for (int id : ids)
    if (id < 0 || id >= shape.vocab_size)
      throw std::invalid_argument("token id " + std::to_string(id) +
                                  " outside vocabulary of size " +
                                  std::to_string(shape.vocab_size));
  FullForward ff;
  const Matd& h = encoder_forward(params, shape, ids, rng, ff.acts);
  ff.z_bin = (h.row(0) * params.bin_head.w)(0, 0) + params.bin_head.b(0, 0);
  const auto n_tokens = static_cast<Eigen::Index>(ids.size()) - 1;
  ff.tag_logits = (h.bottomRows(n_tokens) * params.tag_head.w).rowwise() +
                  params.tag_head.b.row(0);
  return ff;
}

double log_sum_exp_row(const RowVecd& z) {
  const double m = z.maxCoeff();
  return m + std::log((z.array() - m).exp().sum());
}

LossBreakdown loss_from_logits(const FullForward& ff, int binary_label,
                               const bio::TagSequence& tags, bool multi_task,
                               bool tag_loss_sum) {
  if (static_cast<Eigen::Index>(tags.size()) != ff.tag_logits.rows())
    throw std::runtime_error("tag sequence length " +
                             std::to_string(tags.size()) +
                             " does not match token count " +
                             std::to_string(ff.tag_logits.rows()));
  LossBreakdown lb;
  lb.bce = bce_from_logit(ff.z_bin, binary_label);
  double ce = 0.0;
  for (Eigen::Index r = 0; r < ff.tag_logits.rows(); ++r)
    ce += log_sum_exp_row(ff.tag_logits.row(r)) -
          ff.tag_logits(r, tag_index(tags[r]));
  if (!tag_loss_sum && ff.tag_logits.rows() > 0)
    ce /= static_cast<double>(ff.tag_logits.rows());
  lb.ce = ce;
  lb.total = multi_task ? lb.bce + lb.ce : lb.ce;
  return lb;
}

void backward(const EncoderParams<double>& params, const EncoderShape& shape,
              const std::vector<int>& ids, const FullForward& ff,
              int binary_label, const bio::TagSequence& tags, bool multi_task,
              bool tag_loss_sum, EncoderParams<double>& grads) {
  const auto L = static_cast<Eigen::Index>(ids.size());
  const Matd& h = ff.acts.out();
  Matd d_hidden = Matd::Zero(L, shape.d_model);

  if (multi_task) {
    const double dz = bce_grad(ff.z_bin, binary_label);
    grads.bin_head.w += h.row(0).transpose() * dz;
    grads.bin_head.b(0, 0) += dz;
    d_hidden.row(0) = dz * params.bin_head.w.transpose();
  }

  const Eigen::Index n_tokens = L - 1;
  if (n_tokens > 0) {
    const double w =
        tag_loss_sum ? 1.0 : 1.0 / static_cast<double>(n_tokens);
    Matd dz = softmax_rows(ff.tag_logits);
    for (Eigen::Index r = 0; r < n_tokens; ++r)
      dz(r, tag_index(tags[r])) -= 1.0;
    dz *= w;
    grads.tag_head.w += h.bottomRows(n_tokens).transpose() * dz;
    grads.tag_head.b.row(0) += dz.colwise().sum();
    d_hidden.bottomRows(n_tokens) += dz * params.tag_head.w.transpose();
  }

  encoder_backward(params, shape, ids, ff.acts, d_hidden, grads);
}

}  // namespace

LossBreakdown compute_loss(const ForwardOutput& out, int binary_label,
                           const bio::TagSequence& tags, bool multi_task,
                           bool tag_loss_sum) {
  if (static_cast<Eigen::Index>(tags.size()) != out.tag_dists.rows())
    throw std::runtime_error("tag sequence length does not match token count");
  LossBreakdown lb;
  const double p = out.binary_prob;
  lb.bce = binary_label ? -std::log(p) : -std::log(1.0 - p);
  double ce = 0.0;
  for (Eigen::Index r = 0; r < out.tag_dists.rows(); ++r)
    ce += -std::log(out.tag_dists(r, tag_index(tags[r])));
  if (!tag_loss_sum && out.tag_dists.rows() > 0)
    ce /= static_cast<double>(out.tag_dists.rows());
  lb.ce = ce;
  lb.total = multi_task ? lb.bce + lb.ce : lb.ce;
  return lb;
}

std::vector<int> TaggerModel::encode_tokens(
    const std::vector<preprocess::Token>& tokens) const {
  std::vector<int> ids{Vocab::kCls};
  const std::size_t limit = static_cast<std::size_t>(cfg.max_seq_len) - 1;
  for (std::size_t i = 0; i < tokens.size() && i < limit; ++i)
    ids.push_back(vocab.id(tokens[i].surface));
  return ids;
}

ForwardOutput TaggerModel::forward(const std::vector<int>& ids) const {
  const FullForward ff =
      full_forward(params, cfg.shape(vocab.size()), ids, nullptr);
  ForwardOutput out;
  out.binary_prob = sigmoid(ff.z_bin);
  out.tag_dists = softmax_rows(ff.tag_logits);
  return out;
}

Prediction TaggerModel::predict(const preprocess::NormalizedTweet& nt) const {
  const std::vector<int> ids = encode_tokens(nt.tokens);
  const ForwardOutput out = forward(ids);
  const std::size_t n_tokens = ids.size() - 1;

  bio::TagSequence tags(n_tokens, bio::Tag::O);
  std::vector<double> chosen_prob(n_tokens, 1.0);
  for (std::size_t t = 0; t < n_tokens; ++t) {
    Eigen::Index best = 0;
    out.tag_dists.row(static_cast<Eigen::Index>(t)).maxCoeff(&best);
    tags[t] = static_cast<bio::Tag>(best);
    chosen_prob[t] = out.tag_dists(static_cast<Eigen::Index>(t), best);
  }

  const std::vector<preprocess::Token> tokens(nt.tokens.begin(),
                                              nt.tokens.begin() + n_tokens);
  bio::DecodeResult decoded = bio::decode(nt.normalized_text, tokens, tags);

  Prediction pred;
  pred.binary_prob = out.binary_prob;
  for (Span& s : decoded.spans) {
    double log_sum = 0.0;
    std::size_t n = 0;
    for (std::size_t t = 0; t < n_tokens; ++t)
      if (tokens[t].start >= s.start && tokens[t].end <= s.end) {
        log_sum += std::log(std::max(chosen_prob[t], 1e-300));
        ++n;
      }
    s.score = n == 0 ? 0.0 : std::exp(log_sum / static_cast<double>(n));
    pred.spans.push_back(std::move(s));
  }
  return pred;
}

TaggerModel init_model(const ModelConfig& cfg, const Vocab& vocab,
                       std::uint64_t seed) {
  cfg.validate();
  TaggerModel m;
  m.cfg = cfg;
  m.vocab = vocab;
  m.params = init_encoder<double>(cfg.shape(vocab.size()), seed);
  return m;
}

std::vector<Example> prepare_examples(const Dataset& ds,
                                      const TaggerModel& model,
                                      std::vector<std::string>* warnings) {
  std::vector<Example> out;
  for (const auto& at : ds.tweets) {
    const auto nt = preprocess::normalize(at.tweet);
    const auto proj = preprocess::project_spans(at.spans, nt);
    if (warnings)
      for (const Span& d : proj.dropped)
        warnings->push_back(at.tweet.id + ": span \"" + d.surface +
                            "\" erased by normalization");

    Example ex;
    ex.tweet_id = at.tweet.id;
    ex.binary_label = at.spans.empty() ? 0 : 1;
    ex.ids = model.encode_tokens(nt.tokens);
    const std::size_t n_tokens = ex.ids.size() - 1;

    std::vector<preprocess::Token> tokens(nt.tokens.begin(),
                                          nt.tokens.begin() + n_tokens);
    std::vector<Span> kept;
    for (const Span& s : proj.spans) {
      if (!tokens.empty() && s.end <= tokens.back().end) {
        kept.push_back(s);
      } else if (warnings) {
        warnings->push_back(at.tweet.id + ": span \"" + s.surface +
                            "\" beyond the max_seq_len cut, dropped from "
                            "supervision");
      }
    }
    try {
      ex.tags = bio::encode(tokens, kept);
    } catch (const std::exception& e) {
      throw std::runtime_error("tweet " + at.tweet.id + ": " + e.what());
    }
    out.push_back(std::move(ex));
  }
  return out;
}

namespace {

struct Adam {
  double lr;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  std::size_t t = 0;
  EncoderParams<double> m, v;

  Adam(const EncoderParams<double>& like, double lr_)
      : lr(lr_), m(zeros_like(like)), v(zeros_like(like)) {}

  void step(EncoderParams<double>& params, EncoderParams<double>& grads) {
    ++t;
    const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(t));
    const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(t));
    auto ps = param_list(params);
    auto gs = param_list(grads);
    auto ms = param_list(m);
    auto vs = param_list(v);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      auto& pm = *ps[i].second;
      auto& gm = *gs[i].second;
      auto& mm = *ms[i].second;
      auto& vm = *vs[i].second;
      mm = beta1 * mm + (1.0 - beta1) * gm;
      vm = beta2 * vm.array() + (1.0 - beta2) * gm.array().square();
      pm.array() -= lr * (mm.array() / bc1) /
                    ((vm.array() / bc2).sqrt() + eps);
    }
  }
};

}  // namespace

metrics::PredictionMap predict_dataset(const TaggerModel& model,
                                       const Dataset& ds) {
  metrics::PredictionMap out;
  for (const auto& at : ds.tweets) {
    const auto nt = preprocess::normalize(at.tweet);
    out.emplace(at.tweet.id, model.predict(nt).spans);
  }
  return out;
}

double strict_f1_on(const TaggerModel& model, const Dataset& ds) {
  return metrics::evaluate(ds, predict_dataset(model, ds),
                           metrics::Mode::strict)
      .f1;
}

TaggerModel train(const Dataset& train_set, const Dataset& dev_set,
                  const ModelConfig& mcfg, const TrainConfig& tcfg,
                  std::size_t min_freq, std::vector<TrainLogEntry>* log,
                  std::vector<std::string>* warnings) {
  mcfg.validate();
  tcfg.validate();
  const Vocab vocab = build_vocab(train_set, min_freq, mcfg.case_sensitive);
  TaggerModel model = init_model(mcfg, vocab, tcfg.seed);
  const EncoderShape shape = mcfg.shape(vocab.size());

  std::vector<Example> examples = prepare_examples(train_set, model, warnings);
  if (examples.empty()) throw std::runtime_error("no training examples");

  std::mt19937_64 rng(tcfg.seed + 1);
  Adam opt(model.params, tcfg.lr);
  EncoderParams<double> grads = zeros_like(model.params);

  double best_f1 = -1.0;
  EncoderParams<double> best_params = model.params;
  std::vector<std::size_t> order(examples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (std::size_t epoch = 0; epoch < tcfg.epochs; ++epoch) {
    // Fisher-Yates with the training rng keeps the shuffle reproducible
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[rng() % i]);

    double loss_sum = 0.0;
    for (std::size_t begin = 0; begin < order.size();
         begin += tcfg.batch_size) {
      const std::size_t end =
          std::min(begin + tcfg.batch_size, order.size());
      visit_params(grads,
                   [](const std::string&, Matd& g) { g.setZero(); });
      double batch_loss = 0.0;
      for (std::size_t i = begin; i < end; ++i) {
        const Example& ex = examples[order[i]];
        const FullForward ff =
            full_forward(model.params, shape, ex.ids, &rng);
        const LossBreakdown lb = loss_from_logits(
            ff, ex.binary_label, ex.tags, tcfg.multi_task, tcfg.tag_loss_sum);
        batch_loss += lb.total;
        backward(model.params, shape, ex.ids, ff, ex.binary_label, ex.tags,
                 tcfg.multi_task, tcfg.tag_loss_sum, grads);
      }
      if (!std::isfinite(batch_loss))
        throw std::runtime_error(
            "training diverged: non-finite loss at epoch " +
            std::to_string(epoch + 1) + ", batch starting at example " +
            std::to_string(begin));
      const double inv = 1.0 / static_cast<double>(end - begin);
      visit_params(grads, [&](const std::string&, Matd& g) { g *= inv; });
      opt.step(model.params, grads);
      loss_sum += batch_loss;
    }

    TrainLogEntry entry;
    entry.epoch = epoch + 1;
    entry.mean_loss = loss_sum / static_cast<double>(examples.size());
    if (!dev_set.tweets.empty()) {
      entry.dev_strict_f1 = strict_f1_on(model, dev_set);
      if (entry.dev_strict_f1 > best_f1) {
        best_f1 = entry.dev_strict_f1;
        best_params = model.params;
      }
    }
    if (log) log->push_back(entry);
  }
  if (!dev_set.tweets.empty()) model.params = best_params;
  return model;
}

double grad_check(TaggerModel& model, const std::vector<int>& ids,
                  int binary_label, const bio::TagSequence& tags,
                  bool multi_task) {
  const EncoderShape shape = model.cfg.shape(model.vocab.size());
  const auto loss_at = [&]() {
    const FullForward ff = full_forward(model.params, shape, ids, nullptr);
    return loss_from_logits(ff, binary_label, tags, multi_task, false).total;
  };

  EncoderParams<double> grads = zeros_like(model.params);
  {
    const FullForward ff = full_forward(model.params, shape, ids, nullptr);
    backward(model.params, shape, ids, ff, binary_label, tags, multi_task,
             false, grads);
  }

  const double h = 1e-4;
  double max_rel = 0.0;
  auto ps = param_list(model.params);
  auto gs = param_list(grads);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    Matd& pm = *ps[i].second;
    const Matd& gm = *gs[i].second;
    for (Eigen::Index r = 0; r < pm.rows(); ++r)
      for (Eigen::Index c = 0; c < pm.cols(); ++c) {
        const double saved = pm(r, c);
        pm(r, c) = saved + h;
        const double lp = loss_at();
        pm(r, c) = saved - h;
        const double lm = loss_at();
        pm(r, c) = saved;
        const double numeric = (lp - lm) / (2.0 * h);
        const double analytic = gm(r, c);
        const double mag = std::max(std::abs(analytic), std::abs(numeric));
        if (mag < 1e-8) continue;  // both effectively zero
        max_rel = std::max(max_rel, std::abs(analytic - numeric) / mag);
      }
  }
  return max_rel;
}

void TaggerModel::save(const std::string& path) const {
  json j;
  j["format"] = "tweetmeds.checkpoint";
  j["version"] = 1;
  j["config"] = {{"d_model", cfg.d_model},
                 {"n_layers", cfg.n_layers},
                 {"n_heads", cfg.n_heads},
                 {"d_ff", cfg.d_ff},
                 {"max_seq_len", cfg.max_seq_len},
                 {"dropout", cfg.dropout},
                 {"tag_set_size", cfg.tag_set_size},
                 {"case_sensitive", cfg.case_sensitive}};
  j["vocab"] = {{"lowercased", vocab.lowercased},
                {"tokens", vocab.id_to_token}};
  json params_json = json::object();
  visit_params(params, [&](const std::string& name, const Matd& m) {
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
    params_json[name] = {{"rows", m.rows()}, {"cols", m.cols()},
                         {"data", std::move(data)}};
  });
  j["params"] = std::move(params_json);

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump();
  if (!out) throw std::runtime_error("write failure on " + path);
}

TaggerModel TaggerModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": bad checkpoint JSON: " + e.what());
  }
  if (j.value("format", "") != "tweetmeds.checkpoint")
    throw std::runtime_error(path + ": not a tweetmeds checkpoint");
  if (j.value("version", 0) != 1)
    throw std::runtime_error(path + ": unsupported checkpoint version");

  TaggerModel m;
  const json& c = j.at("config");
  m.cfg.d_model = c.at("d_model").get<int>();
  m.cfg.n_layers = c.at("n_layers").get<int>();
  m.cfg.n_heads = c.at("n_heads").get<int>();
  m.cfg.d_ff = c.at("d_ff").get<int>();
  m.cfg.max_seq_len = c.at("max_seq_len").get<int>();
  m.cfg.dropout = c.at("dropout").get<double>();
  m.cfg.tag_set_size = c.at("tag_set_size").get<int>();
  m.cfg.case_sensitive = c.at("case_sensitive").get<bool>();
  m.cfg.validate();

  m.vocab.lowercased = j.at("vocab").at("lowercased").get<bool>();
  m.vocab.id_to_token =
      j.at("vocab").at("tokens").get<std::vector<std::string>>();
  for (std::size_t i = 0; i < m.vocab.id_to_token.size(); ++i)
    m.vocab.token_to_id.emplace(m.vocab.id_to_token[i], static_cast<int>(i));

  m.params = init_encoder<double>(m.cfg.shape(m.vocab.size()), 0);
  const json& pj = j.at("params");
  visit_params(m.params, [&](const std::string& name, Matd& mat) {
    if (!pj.contains(name))
      throw std::runtime_error(path + ": checkpoint missing tensor " + name);
    const json& t = pj.at(name);
    const auto rows = t.at("rows").get<Eigen::Index>();
    const auto cols = t.at("cols").get<Eigen::Index>();
    if (rows != mat.rows() || cols != mat.cols())
      throw std::runtime_error(path + ": tensor " + name +
                               " has unexpected shape");
    const auto data = t.at("data").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(data.size()) != rows * cols)
      throw std::runtime_error(path + ": tensor " + name +
                               " has wrong element count");
    std::size_t k = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c2 = 0; c2 < cols; ++c2) mat(r, c2) = data[k++];
  });
  return m;
}

}  // namespace tweetmeds::model
