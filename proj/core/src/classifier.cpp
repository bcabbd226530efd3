#include "aisclass/classifier.hpp"

#include <stdexcept>

#include <json.hpp>

#include "aisclass/errors.hpp"

namespace aisclass {

std::string_view to_string(ClassifierKind k) { return k == ClassifierKind::svm ? "svm" : "tree"; }

ClassifierKind parse_classifier_kind(std::string_view text) {
  if (text == "tree") return ClassifierKind::tree;
  if (text == "svm") return ClassifierKind::svm;
  throw std::invalid_argument("unknown classifier: " + std::string(text));
}

Model Model::train(ClassifierKind kind, const LabeledDataset& ds, const ClassifierParams& params) {
  Model m;
  if (kind == ClassifierKind::tree) {
    m.model_ = DecisionTree::train(ds, params.tree);
  } else {
    m.model_ = SvmModel::train(ds, params.svm);
  }
  return m;
}

Model Model::from_json(std::string_view text) {
  std::string type;
  try {
    type = nlohmann::json::parse(text).at("type").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed model file: ") + e.what());
  }
  Model m;
  if (type == "decision_tree") m.model_ = DecisionTree::from_json(text);
  else if (type == "linear_svm") m.model_ = SvmModel::from_json(text);
  else throw DataError("unknown model type: " + type);
  return m;
}

ClassifierKind Model::kind() const {
  return std::holds_alternative<DecisionTree>(model_) ? ClassifierKind::tree : ClassifierKind::svm;
}

Label Model::predict(std::span<const double> row) const {
  return std::visit([&](const auto& m) { return m.predict(row); }, model_);
}

std::vector<Label> Model::predict_many(const std::vector<std::vector<double>>& rows) const {
  return std::visit([&](const auto& m) { return m.predict_many(rows); }, model_);
}

std::string Model::to_json() const {
  return std::visit([](const auto& m) { return m.to_json(); }, model_);
}

}  // namespace aisclass
