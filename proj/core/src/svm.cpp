#include "aisclass/svm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "aisclass/errors.hpp"
#include "aisclass/random.hpp"

namespace aisclass {

void SvmParams::validate() const {
  if (!(C > 0.0)) throw ConfigError("SVM C must be positive");
  if (max_epochs == 0) throw ConfigError("SVM max_epochs must be positive");
}

SvmModel SvmModel::train(const LabeledDataset& ds, const SvmParams& params) {
  params.validate();
  const std::size_t n = ds.size();
  const std::size_t d = ds.n_features();
  if (n == 0) throw DataError("cannot train an SVM on an empty dataset");
  const std::size_t pos = ds.count(Label::fishing);
  if (pos == 0 || pos == n) throw DataError("SVM training needs both classes");

  SvmModel m;
  m.feature_names_ = ds.feature_names;
  m.C_ = params.C;
  m.mean_.assign(d, 0.0);
  m.scale_.assign(d, 0.0);
  for (const auto& row : ds.rows) {
    for (std::size_t j = 0; j < d; ++j) m.mean_[j] += row[j];
  }
  for (auto& v : m.mean_) v /= static_cast<double>(n);
  for (std::size_t j = 0; j < d; ++j) {
    double ss = 0.0;
    for (const auto& row : ds.rows) ss += (row[j] - m.mean_[j]) * (row[j] - m.mean_[j]);
    m.scale_[j] = std::sqrt(ss / static_cast<double>(n));
  }

  std::vector<std::vector<double>> z(n, std::vector<double>(d, 0.0));
  std::vector<double> y(n), qii(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sq = 1.0;  // constant bias input
    for (std::size_t j = 0; j < d; ++j) {
      if (m.scale_[j] > 0.0) z[i][j] = (ds.rows[i][j] - m.mean_[j]) / m.scale_[j];
      sq += z[i][j] * z[i][j];
    }
    y[i] = ds.labels[i] == Label::fishing ? 1.0 : -1.0;
    qii[i] = sq;
  }

  std::vector<double> w(d, 0.0), alpha(n, 0.0);
  double b = 0.0;
  const double C = params.C;

  auto primal = [&] {
    double reg = b * b;
    for (double v : w) reg += v * v;
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double margin = y[i] * (std::inner_product(w.begin(), w.end(), z[i].begin(), 0.0) + b);
      loss += std::max(0.0, 1.0 - margin);
    }
    return 0.5 * reg + C * loss;
  };

  Rng rng(params.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  double previous = primal();
  std::size_t epoch = 0;
  while (epoch < params.max_epochs) {
    ++epoch;
    rng.shuffle(order);
    double pg_max = -std::numeric_limits<double>::infinity();
    double pg_min = std::numeric_limits<double>::infinity();
    for (std::size_t i : order) {
      const double g =
          y[i] * (std::inner_product(w.begin(), w.end(), z[i].begin(), 0.0) + b) - 1.0;
      double pg = g;
      if (alpha[i] == 0.0) pg = std::min(g, 0.0);
      else if (alpha[i] == C) pg = std::max(g, 0.0);
      pg_max = std::max(pg_max, pg);
      pg_min = std::min(pg_min, pg);
      if (pg == 0.0) continue;
      const double old = alpha[i];
      alpha[i] = std::clamp(old - g / qii[i], 0.0, C);
      const double delta = (alpha[i] - old) * y[i];
      for (std::size_t j = 0; j < d; ++j) w[j] += delta * z[i][j];
      b += delta;
    }
    const double current = primal();
    const double rel = std::abs(previous - current) / std::max(std::abs(current), 1e-300);
    previous = current;
    if (pg_max - pg_min < params.pg_tolerance || rel < params.rel_objective_tolerance) break;
  }

  m.weights_ = std::move(w);
  m.bias_ = b;
  m.epochs_ = epoch;
  m.objective_ = previous;
  return m;
}

double SvmModel::decision(std::span<const double> row) const {
  double s = bias_;
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    if (scale_[j] > 0.0) s += weights_[j] * (row[j] - mean_[j]) / scale_[j];
  }
  return s;
}

Label SvmModel::predict(std::span<const double> row) const {
  return decision(row) > 0.0 ? Label::fishing : Label::non_fishing;
}

std::vector<Label> SvmModel::predict_many(const std::vector<std::vector<double>>& rows) const {
  std::vector<Label> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(predict(r));
  return out;
}

std::string SvmModel::to_json() const {
  nlohmann::json j;
  j["type"] = "linear_svm";
  j["features"] = feature_names_;
  j["weights"] = weights_;
  j["bias"] = bias_;
  j["standardization"] = {{"mean", mean_}, {"std", scale_}};
  j["C"] = C_;
  j["epochs"] = epochs_;
  j["objective"] = objective_;
  return j.dump(1);
}

SvmModel SvmModel::from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("type") != "linear_svm") throw DataError("model is not a linear SVM");
    SvmModel m;
    m.feature_names_ = j.at("features").get<std::vector<std::string>>();
    m.weights_ = j.at("weights").get<std::vector<double>>();
    m.bias_ = j.at("bias").get<double>();
    m.mean_ = j.at("standardization").at("mean").get<std::vector<double>>();
    m.scale_ = j.at("standardization").at("std").get<std::vector<double>>();
    m.C_ = j.at("C").get<double>();
    m.epochs_ = j.at("epochs").get<std::size_t>();
    m.objective_ = j.at("objective").get<double>();
    const auto d = m.feature_names_.size();
    if (m.weights_.size() != d || m.mean_.size() != d || m.scale_.size() != d) {
      throw DataError("SVM model vectors do not match the feature count");
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed SVM model: ") + e.what());
  }
}

}  // namespace aisclass
