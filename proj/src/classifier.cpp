#include "contribroles/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "contribroles/errors.hpp"

namespace contribroles {

FeatureVector featurize(const RoleMention& m, const Lexicon& lex) {
  FeatureVector v;
  v.bits.assign(lex.size(), 0);
  for (std::size_t idx : lex.match_text(m.action + " " + m.object)) v.bits[idx] = 1;
  return v;
}

NBModel NBModel::train(std::span<const TrainingExample> data,
                       std::vector<std::string> feature_names, double alpha) {
  if (data.empty()) throw InputError("cannot train on an empty training set");
  if (!(alpha > 0)) throw InputError("smoothing alpha must be positive");
  const std::size_t k = feature_names.size();

  std::map<std::string, std::size_t> role_index;
  for (const auto& ex : data) {
    if (ex.features.size() != k) throw InputError("feature vector length does not match feature names");
    role_index.emplace(ex.label, 0);
  }
  NBModel model;
  model.alpha_ = alpha;
  model.feature_names_ = std::move(feature_names);
  for (auto& [name, idx] : role_index) {
    idx = model.role_names_.size();
    model.role_names_.push_back(name);
  }
  const std::size_t r = model.role_names_.size();
  model.role_counts_.assign(r, 0);
  model.feature_counts_.assign(r, std::vector<long>(k, 0));
  for (const auto& ex : data) {
    std::size_t ri = role_index.at(ex.label);
    ++model.role_counts_[ri];
    for (std::size_t f = 0; f < k; ++f) model.feature_counts_[ri][f] += ex.features.bits[f] ? 1 : 0;
  }
  const double n = static_cast<double>(data.size());
  model.log_prior_.resize(r);
  model.log_p0_.assign(r, std::vector<double>(k));
  model.log_p1_.assign(r, std::vector<double>(k));
  for (std::size_t ri = 0; ri < r; ++ri) {
    const double nr = static_cast<double>(model.role_counts_[ri]);
    model.log_prior_[ri] = std::log(nr / n);
    for (std::size_t f = 0; f < k; ++f) {
      double p1 = (static_cast<double>(model.feature_counts_[ri][f]) + alpha) / (nr + 2 * alpha);
      model.log_p1_[ri][f] = std::log(p1);
      model.log_p0_[ri][f] = std::log1p(-p1);
    }
  }
  return model;
}

NBModel NBModel::train(std::span<const LabeledMention> data, const Lexicon& lex, double alpha) {
  std::vector<TrainingExample> examples;
  examples.reserve(data.size());
  for (const auto& lm : data) examples.push_back({featurize(lm.mention, lex), lm.label});
  return train(examples, lex.keywords(), alpha);
}

Classification NBModel::classify(const FeatureVector& v, std::optional<double> unknown_margin) const {
  if (v.size() != feature_names_.size()) {
    throw InputError("feature vector has length " + std::to_string(v.size()) + ", model expects " +
                     std::to_string(feature_names_.size()));
  }
  if (role_names_.empty()) throw InputError("classify with an untrained model");
  Classification out;
  out.scores.resize(role_names_.size());
  std::size_t best = 0;
  for (std::size_t ri = 0; ri < role_names_.size(); ++ri) {
    double s = log_prior_[ri];
    for (std::size_t f = 0; f < v.size(); ++f) s += v.bits[f] ? log_p1_[ri][f] : log_p0_[ri][f];
    out.scores[ri] = s;
    // role_names_ is sorted, so requiring a clear margin keeps the smallest
    // name among scores equal up to rounding.
    if (s > out.scores[best] + kTieTolerance) best = ri;
  }
  out.role = role_names_[best];
  if (role_names_.size() > 1) {
    double top = out.scores[best];
    double z = 0;
    double runner_up = 0;
    for (std::size_t ri = 0; ri < out.scores.size(); ++ri) {
      double p = std::exp(out.scores[ri] - top);
      z += p;
      if (ri != best) runner_up = std::max(runner_up, p);
    }
    out.confidence = (1.0 - runner_up) / z;
  }
  if (unknown_margin && out.confidence < *unknown_margin) out.role = std::string(kUnknownRole);
  return out;
}

NBModel NBModel::from_parameters(std::vector<std::string> role_names,
                                 std::vector<std::string> feature_names, double alpha,
                                 std::vector<long> role_counts,
                                 std::vector<std::vector<long>> feature_counts,
                                 std::vector<double> log_prior,
                                 std::vector<std::vector<double>> log_p0,
                                 std::vector<std::vector<double>> log_p1) {
  const std::size_t r = role_names.size();
  const std::size_t k = feature_names.size();
  auto ragged = [&](const auto& table) {
    return table.size() != r ||
           std::any_of(table.begin(), table.end(), [&](const auto& row) { return row.size() != k; });
  };
  if (r == 0 || role_counts.size() != r || log_prior.size() != r || ragged(feature_counts) ||
      ragged(log_p0) || ragged(log_p1)) {
    throw InputError("model parameters have inconsistent dimensions");
  }
  if (!std::is_sorted(role_names.begin(), role_names.end())) {
    throw InputError("model role names must be sorted");
  }
  NBModel m;
  m.role_names_ = std::move(role_names);
  m.feature_names_ = std::move(feature_names);
  m.alpha_ = alpha;
  m.role_counts_ = std::move(role_counts);
  m.feature_counts_ = std::move(feature_counts);
  m.log_prior_ = std::move(log_prior);
  m.log_p0_ = std::move(log_p0);
  m.log_p1_ = std::move(log_p1);
  return m;
}

}  // namespace contribroles
