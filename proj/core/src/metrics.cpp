#include "aisclass/metrics.hpp"

#include <stdexcept>

#include "aisclass/errors.hpp"

namespace aisclass {

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& o) {
  tp += o.tp;
  fn += o.fn;
  fp += o.fp;
  tn += o.tn;
  return *this;
}

ConfusionMatrix confusion(std::span<const Label> truth, std::span<const Label> predicted) {
  if (truth.size() != predicted.size()) {
    throw std::invalid_argument("truth and prediction lengths differ");
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool actual = truth[i] == Label::fishing;
    const bool pred = predicted[i] == Label::fishing;
    if (actual && pred) ++cm.tp;
    else if (actual) ++cm.fn;
    else if (pred) ++cm.fp;
    else ++cm.tn;
  }
  return cm;
}

void MetricsConfig::validate() const {
  if (!(f_measure_beta > 0.0)) throw ConfigError("F-measure beta must be positive");
}

Metrics metrics(const ConfusionMatrix& cm, const MetricsConfig& cfg) {
  cfg.validate();
  if (cm.total() == 0) throw std::invalid_argument("metrics of an empty confusion matrix");
  Metrics m;
  const auto tp = static_cast<double>(cm.tp);
  m.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
  if (cm.tp + cm.fp == 0) m.precision_undefined = true;
  else m.precision = tp / static_cast<double>(cm.tp + cm.fp);
  if (cm.tp + cm.fn == 0) m.recall_undefined = true;
  else m.recall = tp / static_cast<double>(cm.tp + cm.fn);

  const double b2 = cfg.f_measure_beta * cfg.f_measure_beta;
  const double denom = b2 * m.precision + m.recall;
  if (denom == 0.0) {
    m.f_measure_undefined = m.precision_undefined || m.recall_undefined || cm.tp == 0;
  } else {
    m.f_measure = (1.0 + b2) * m.precision * m.recall / denom;
  }
  return m;
}

}  // namespace aisclass
