#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aisclass/decision_tree.hpp"
#include "aisclass/svm.hpp"

namespace aisclass {

enum class ClassifierKind : std::uint8_t { tree, svm };

std::string_view to_string(ClassifierKind k);
ClassifierKind parse_classifier_kind(std::string_view text);

struct ClassifierParams {
  TreeParams tree;
  SvmParams svm;
};

/// Either trained classifier behind one predict interface.
class Model {
 public:
  static Model train(ClassifierKind kind, const LabeledDataset& ds, const ClassifierParams& params);
  /// Accepts the JSON written by to_json of either model type.
  static Model from_json(std::string_view text);

  ClassifierKind kind() const;
  Label predict(std::span<const double> row) const;
  std::vector<Label> predict_many(const std::vector<std::vector<double>>& rows) const;
  std::string to_json() const;

  /// Null unless this is a tree.
  const DecisionTree* tree() const { return std::get_if<DecisionTree>(&model_); }
  const SvmModel* svm() const { return std::get_if<SvmModel>(&model_); }

 private:
  std::variant<DecisionTree, SvmModel> model_;
};

}  // namespace aisclass
