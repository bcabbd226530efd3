#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aisclass/dataset.hpp"

namespace aisclass {

struct TreeParams {
  std::size_t min_leaf_size = 1;
  std::size_t max_depth = std::numeric_limits<std::size_t>::max();

  void validate() const;
};

/// Branch nodes send `row[feature] < threshold` left. Leaves carry the
/// majority label (ties go to fishing) and their class counts.
struct TreeNode {
  bool leaf = true;
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  Label prediction = Label::non_fishing;
  std::size_t n_fishing = 0;
  std::size_t n_non_fishing = 0;
  double impurity = 0.0;  // Gini
  double risk = 0.0;      // node probability x impurity

  std::size_t size() const { return n_fishing + n_non_fishing; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

double gini(std::size_t n_fishing, std::size_t n_non_fishing);

/// Binary CART classifier grown greedily on Gini impurity decrease.
class DecisionTree {
 public:
  /// Throws DataError on an empty dataset or one without features.
  static DecisionTree train(const LabeledDataset& ds, const TreeParams& params = {});

  Label predict(std::span<const double> row) const;
  std::vector<Label> predict_many(const std::vector<std::vector<double>>& rows) const;

  /// Nodes in pre-order; index 0 is the root.
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  std::size_t depth() const;
  std::size_t leaf_count() const;

  std::string to_json() const;
  static DecisionTree from_json(std::string_view text);

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;

 private:
  std::vector<TreeNode> nodes_;
  std::vector<std::string> feature_names_;
};

struct SplitChoice {
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
};

/// Best root split over every feature-value midpoint; ties go to the lowest
/// feature index, then the lowest threshold. feature == -1 when no split
/// improves impurity.
SplitChoice best_split(const LabeledDataset& ds, std::span<const std::size_t> rows,
                       std::size_t min_leaf_size = 1);

struct PredictorImportance {
  std::vector<double> raw;         // summed risk decrease / branch count
  std::vector<double> normalized;  // sums to 1 when any split exists
};

PredictorImportance predictor_importance(const DecisionTree& tree);

struct ImportanceGroups {
  std::map<std::string, double> by_statistic;  // mean, max, ..., q3
  std::map<std::string, double> by_kinematic;  // five series + total_time
  std::map<std::string, double> extras;        // nav_status, length, width
  double total = 0.0;
};

/// Sums scores by statistic and by kinematic series. Throws
/// std::invalid_argument on a name outside the feature vocabulary.
ImportanceGroups aggregate_importance(const std::vector<std::string>& names,
                                      std::span<const double> scores);

}  // namespace aisclass
