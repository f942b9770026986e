#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "contribroles/curation.hpp"
#include "contribroles/preprocess.hpp"

namespace contribroles {

// Binary keyword presence, one position per lexicon keyword.
struct FeatureVector {
  std::vector<std::uint8_t> bits;

  std::size_t size() const { return bits.size(); }
  bool operator==(const FeatureVector&) const = default;
};

// Bit k is set iff keyword k occurs in the mention's action or object text.
FeatureVector featurize(const RoleMention& m, const Lexicon& lex);

struct TrainingExample {
  FeatureVector features;
  std::string label;
};

struct Classification {
  std::string role;
  // Joint log-probability per role, in model.role_names() order.
  std::vector<double> scores;
  // Posterior probability of the winner minus that of the runner-up; 1 for
  // a single-role model.
  double confidence = 1.0;
};

inline constexpr std::string_view kUnknownRole = "unknown";

// Multivariate Bernoulli Naive Bayes with additive smoothing:
//   P(r)          = n_r / N
//   P(x_k = 1|r)  = (n_{r,k} + alpha) / (n_r + 2 alpha)
// and absent features contribute log P(x_k = 0 | r).
class NBModel {
 public:
  static constexpr int kFormatVersion = 1;

  NBModel() = default;

  // Throws InputError on empty data, alpha <= 0 or ragged feature vectors.
  static NBModel train(std::span<const TrainingExample> data,
                       std::vector<std::string> feature_names, double alpha = 1.0);

  // Featurizes with lex; feature names are lex.keywords().
  static NBModel train(std::span<const LabeledMention> data, const Lexicon& lex,
                       double alpha = 1.0);

  // Log-scores within this of the best count as tied.
  static constexpr double kTieTolerance = 1e-12;

  // Ties go to the lexicographically smallest role name. Throws InputError on
  // a length mismatch. With unknown_margin set, a confidence below it yields
  // "unknown".
  Classification classify(const FeatureVector& v,
                          std::optional<double> unknown_margin = std::nullopt) const;

  const std::vector<std::string>& role_names() const { return role_names_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  double alpha() const { return alpha_; }
  const std::vector<double>& log_prior() const { return log_prior_; }
  // [role][feature][bit]
  double log_likelihood(std::size_t role, std::size_t feature, int bit) const {
    return bit ? log_p1_[role][feature] : log_p0_[role][feature];
  }
  const std::vector<long>& role_counts() const { return role_counts_; }
  const std::vector<std::vector<long>>& feature_counts() const { return feature_counts_; }

  // Rebuilds a model from stored parameters (used by the JSON loader).
  static NBModel from_parameters(std::vector<std::string> role_names,
                                 std::vector<std::string> feature_names, double alpha,
                                 std::vector<long> role_counts,
                                 std::vector<std::vector<long>> feature_counts,
                                 std::vector<double> log_prior,
                                 std::vector<std::vector<double>> log_p0,
                                 std::vector<std::vector<double>> log_p1);

 private:
  std::vector<std::string> role_names_;
  std::vector<std::string> feature_names_;
  double alpha_ = 1.0;
  std::vector<long> role_counts_;
  std::vector<std::vector<long>> feature_counts_;
  std::vector<double> log_prior_;
  std::vector<std::vector<double>> log_p0_;
  std::vector<std::vector<double>> log_p1_;
};

}  // namespace contribroles
