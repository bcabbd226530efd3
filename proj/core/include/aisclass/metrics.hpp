#pragma once

#include <cstddef>
#include <span>

#include "aisclass/types.hpp"

namespace aisclass {

/// Positive class is fishing.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fn = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fn + fp + tn; }
  ConfusionMatrix& operator+=(const ConfusionMatrix& o);
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

ConfusionMatrix confusion(std::span<const Label> truth, std::span<const Label> predicted);

struct MetricsConfig {
  double f_measure_beta = 1.0;
  void validate() const;
};

/// A ratio with a zero denominator is reported as 0 and flagged.
struct Metrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  bool precision_undefined = false;
  bool recall_undefined = false;
  bool f_measure_undefined = false;
};

/// Throws std::invalid_argument when the matrix is empty.
Metrics metrics(const ConfusionMatrix& cm, const MetricsConfig& cfg = {});

}  // namespace aisclass
