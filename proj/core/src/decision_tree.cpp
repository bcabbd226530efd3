#include "aisclass/decision_tree.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "aisclass/errors.hpp"
#include "aisclass/features.hpp"

namespace aisclass {
namespace {

constexpr double kMinGain = 1e-12;

struct Counts {
  std::size_t fishing = 0;
  std::size_t other = 0;
  std::size_t total() const { return fishing + other; }
};

Counts count_labels(const LabeledDataset& ds, std::span<const std::size_t> rows) {
  Counts c;
  for (std::size_t r : rows) (ds.labels[r] == Label::fishing ? c.fishing : c.other)++;
  return c;
}

double midpoint(double a, double b) {
  const double m = a + (b - a) / 2.0;
  return m > a ? m : b;
}

class Builder {
 public:
  Builder(const LabeledDataset& ds, const TreeParams& params, std::vector<TreeNode>& nodes)
      : ds_(ds), params_(params), nodes_(nodes), total_(static_cast<double>(ds.size())) {}

  int grow(std::vector<std::size_t> rows, std::size_t depth) {
    const Counts c = count_labels(ds_, rows);
    TreeNode node;
    node.n_fishing = c.fishing;
    node.n_non_fishing = c.other;
    node.impurity = gini(c.fishing, c.other);
    node.risk = static_cast<double>(c.total()) / total_ * node.impurity;
    node.prediction = c.fishing >= c.other ? Label::fishing : Label::non_fishing;

    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(node);

    if (node.impurity == 0.0 || depth >= params_.max_depth ||
        c.total() < 2 * params_.min_leaf_size) {
      return id;
    }
    const SplitChoice split = best_split(ds_, rows, params_.min_leaf_size);
    if (split.feature < 0) return id;

    std::vector<std::size_t> left, right;
    const auto f = static_cast<std::size_t>(split.feature);
    for (std::size_t r : rows) {
      (ds_.rows[r][f] < split.threshold ? left : right).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    nodes_[static_cast<std::size_t>(id)].leaf = false;
    nodes_[static_cast<std::size_t>(id)].feature = split.feature;
    nodes_[static_cast<std::size_t>(id)].threshold = split.threshold;
    const int l = grow(std::move(left), depth + 1);
    const int r = grow(std::move(right), depth + 1);
    nodes_[static_cast<std::size_t>(id)].left = l;
    nodes_[static_cast<std::size_t>(id)].right = r;
    return id;
  }

 private:
  const LabeledDataset& ds_;
  const TreeParams& params_;
  std::vector<TreeNode>& nodes_;
  double total_;
};

nlohmann::json node_to_json(const std::vector<TreeNode>& nodes, int id,
                            const std::vector<std::string>& names) {
  const auto& n = nodes[static_cast<std::size_t>(id)];
  nlohmann::json j;
  j["counts"] = {{"fishing", n.n_fishing}, {"non_fishing", n.n_non_fishing}};
  j["impurity"] = n.impurity;
  j["risk"] = n.risk;
  if (n.leaf) {
    j["label"] = to_string(n.prediction);
    return j;
  }
  j["feature"] = n.feature;
  j["feature_name"] = names.at(static_cast<std::size_t>(n.feature));
  j["threshold"] = n.threshold;
  j["label"] = to_string(n.prediction);
  j["left"] = node_to_json(nodes, n.left, names);
  j["right"] = node_to_json(nodes, n.right, names);
  return j;
}

int node_from_json(const nlohmann::json& j, std::vector<TreeNode>& nodes) {
  TreeNode n;
  n.n_fishing = j.at("counts").at("fishing").get<std::size_t>();
  n.n_non_fishing = j.at("counts").at("non_fishing").get<std::size_t>();
  n.impurity = j.at("impurity").get<double>();
  n.risk = j.at("risk").get<double>();
  const auto label = parse_label(j.at("label").get<std::string>());
  if (!label) throw DataError("tree node has an unknown label");
  n.prediction = *label;
  const int id = static_cast<int>(nodes.size());
  nodes.push_back(n);
  if (j.contains("feature")) {
    auto& me = nodes[static_cast<std::size_t>(id)];
    me.leaf = false;
    me.feature = j.at("feature").get<int>();
    me.threshold = j.at("threshold").get<double>();
    const int l = node_from_json(j.at("left"), nodes);
    const int r = node_from_json(j.at("right"), nodes);
    nodes[static_cast<std::size_t>(id)].left = l;
    nodes[static_cast<std::size_t>(id)].right = r;
  }
  return id;
}

}  // namespace

void TreeParams::validate() const {
  if (min_leaf_size < 1) throw ConfigError("min_leaf_size must be at least 1");
}

double gini(std::size_t n_fishing, std::size_t n_non_fishing) {
  const std::size_t n = n_fishing + n_non_fishing;
  if (n == 0) return 0.0;
  const double p = static_cast<double>(n_fishing) / static_cast<double>(n);
  const double q = static_cast<double>(n_non_fishing) / static_cast<double>(n);
  return 1.0 - p * p - q * q;
}

SplitChoice best_split(const LabeledDataset& ds, std::span<const std::size_t> rows,
                       std::size_t min_leaf_size) {
  SplitChoice best;
  const Counts parent = count_labels(ds, rows);
  const double n = static_cast<double>(parent.total());
  const double g_parent = gini(parent.fishing, parent.other);
  if (g_parent == 0.0) return best;

  std::vector<std::pair<double, bool>> column(rows.size());
  for (std::size_t f = 0; f < ds.n_features(); ++f) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      column[i] = {ds.rows[rows[i]][f], ds.labels[rows[i]] == Label::fishing};
    }
    std::sort(column.begin(), column.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    Counts left;
    for (std::size_t i = 0; i + 1 < column.size(); ++i) {
      (column[i].second ? left.fishing : left.other)++;
      if (!(column[i].first < column[i + 1].first)) continue;
      const std::size_t nl = i + 1;
      const std::size_t nr = column.size() - nl;
      if (nl < min_leaf_size || nr < min_leaf_size) continue;
      const Counts right{parent.fishing - left.fishing, parent.other - left.other};
      const double gain = g_parent -
                          static_cast<double>(nl) / n * gini(left.fishing, left.other) -
                          static_cast<double>(nr) / n * gini(right.fishing, right.other);
      if (gain > best.gain && gain > kMinGain) {
        best.feature = static_cast<int>(f);
        best.threshold = midpoint(column[i].first, column[i + 1].first);
        best.gain = gain;
      }
    }
  }
  return best;
}

DecisionTree DecisionTree::train(const LabeledDataset& ds, const TreeParams& params) {
  params.validate();
  if (ds.empty()) throw DataError("cannot train a tree on an empty dataset");
  if (ds.n_features() == 0) throw DataError("cannot train a tree without features");
  DecisionTree tree;
  tree.feature_names_ = ds.feature_names;
  std::vector<std::size_t> rows(ds.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  Builder(ds, params, tree.nodes_).grow(std::move(rows), 0);
  return tree;
}

Label DecisionTree::predict(std::span<const double> row) const {
  std::size_t id = 0;
  while (!nodes_[id].leaf) {
    const auto& n = nodes_[id];
    id = static_cast<std::size_t>(row[static_cast<std::size_t>(n.feature)] < n.threshold ? n.left
                                                                                         : n.right);
  }
  return nodes_[id].prediction;
}

std::vector<Label> DecisionTree::predict_many(const std::vector<std::vector<double>>& rows) const {
  std::vector<Label> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(predict(r));
  return out;
}

std::size_t DecisionTree::depth() const {
  std::vector<std::size_t> d(nodes_.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, d[i]);
    if (!nodes_[i].leaf) {
      d[static_cast<std::size_t>(nodes_[i].left)] = d[i] + 1;
      d[static_cast<std::size_t>(nodes_[i].right)] = d[i] + 1;
    }
  }
  return deepest;
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.leaf; }));
}

std::string DecisionTree::to_json() const {
  nlohmann::json j;
  j["type"] = "decision_tree";
  j["criterion"] = "gini";
  j["features"] = feature_names_;
  j["root"] = node_to_json(nodes_, 0, feature_names_);
  return j.dump(1);
}

DecisionTree DecisionTree::from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("type") != "decision_tree") throw DataError("model is not a decision tree");
    DecisionTree tree;
    tree.feature_names_ = j.at("features").get<std::vector<std::string>>();
    node_from_json(j.at("root"), tree.nodes_);
    return tree;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed tree model: ") + e.what());
  }
}

PredictorImportance predictor_importance(const DecisionTree& tree) {
  const auto& nodes = tree.nodes();
  PredictorImportance imp;
  imp.raw.assign(tree.feature_names().size(), 0.0);
  imp.normalized.assign(tree.feature_names().size(), 0.0);
  std::size_t branches = 0;
  for (const auto& n : nodes) {
    if (n.leaf) continue;
    ++branches;
    const double decrease = n.risk - nodes[static_cast<std::size_t>(n.left)].risk -
                            nodes[static_cast<std::size_t>(n.right)].risk;
    imp.raw[static_cast<std::size_t>(n.feature)] += decrease;
  }
  if (branches == 0) return imp;
  double sum = 0.0;
  for (auto& v : imp.raw) {
    v /= static_cast<double>(branches);
    sum += v;
  }
  if (sum > 0.0) {
    for (std::size_t i = 0; i < imp.raw.size(); ++i) imp.normalized[i] = imp.raw[i] / sum;
  }
  return imp;
}

ImportanceGroups aggregate_importance(const std::vector<std::string>& names,
                                      std::span<const double> scores) {
  if (names.size() != scores.size()) {
    throw std::invalid_argument("importance scores and names differ in length");
  }
  ImportanceGroups g;
  for (auto s : kStatNames) g.by_statistic[std::string(s)] = 0.0;
  for (auto s : kSeriesNames) g.by_kinematic[std::string(s)] = 0.0;
  g.by_kinematic[std::string(kTotalTime)] = 0.0;

  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::string& name = names[i];
    const double v = scores[i];
    g.total += v;
    if (name == kTotalTime) {
      g.by_kinematic[name] += v;
      continue;
    }
    if (std::find(std::begin(kExtraNames), std::end(kExtraNames), name) != std::end(kExtraNames)) {
      g.extras[name] += v;
      continue;
    }
    const auto cut = name.rfind('_');
    if (cut == std::string::npos) throw std::invalid_argument("unknown feature name: " + name);
    const std::string series = name.substr(0, cut);
    const std::string stat = name.substr(cut + 1);
    if (!g.by_kinematic.contains(series) || !g.by_statistic.contains(stat)) {
      throw std::invalid_argument("unknown feature name: " + name);
    }
    g.by_kinematic[series] += v;
    g.by_statistic[stat] += v;
  }
  return g;
}

}  // namespace aisclass
