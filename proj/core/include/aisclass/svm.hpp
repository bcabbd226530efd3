#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aisclass/dataset.hpp"

namespace aisclass {

/// Linear soft-margin SVM trained by dual coordinate descent. The bias is
/// handled as an extra constant input, so it is regularized with w.
struct SvmParams {
  double C = 1.0;
  /// Stop when the projected-gradient gap falls below this ...
  double pg_tolerance = 1e-6;
  /// ... or the primal objective changes by less than this (relative) over
  /// an epoch ...
  double rel_objective_tolerance = 1e-8;
  /// ... or after this many passes.
  std::size_t max_epochs = 1000;
  std::uint64_t seed = 0;

  void validate() const;
};

class SvmModel {
 public:
  /// Features are z-standardized with training statistics; constant
  /// features get zero weight. Throws DataError when only one class exists.
  static SvmModel train(const LabeledDataset& ds, const SvmParams& params = {});

  /// Signed distance proxy w . z(x) + b; positive means fishing.
  double decision(std::span<const double> row) const;
  Label predict(std::span<const double> row) const;
  std::vector<Label> predict_many(const std::vector<std::vector<double>>& rows) const;

  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }
  const std::vector<double>& mean() const { return mean_; }
  const std::vector<double>& scale() const { return scale_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  std::size_t epochs() const { return epochs_; }
  double objective() const { return objective_; }
  double C() const { return C_; }

  std::string to_json() const;
  static SvmModel from_json(std::string_view text);

 private:
  std::vector<std::string> feature_names_;
  std::vector<double> weights_;  // in standardized space
  double bias_ = 0.0;
  std::vector<double> mean_;
  std::vector<double> scale_;  // population std; 0 marks a constant feature
  double C_ = 1.0;
  std::size_t epochs_ = 0;
  double objective_ = 0.0;
};

}  // namespace aisclass
