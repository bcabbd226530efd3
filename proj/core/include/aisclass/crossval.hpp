#pragma once

#include <cstdint>
#include <vector>

#include "aisclass/classifier.hpp"
#include "aisclass/metrics.hpp"
#include "aisclass/rebalance.hpp"

namespace aisclass {

/// Everything that happens after the split: balance the training part, train,
/// predict the untouched test part.
struct EvalTail {
  BalanceConfig balance;
  ClassifierKind classifier = ClassifierKind::tree;
  ClassifierParams params;
  MetricsConfig metrics;
};

struct TailOutcome {
  ConfusionMatrix cm;
  Metrics metrics;
  Model model;
  std::size_t train_rows = 0;           // before balancing
  std::size_t balanced_train_rows = 0;  // after balancing
  std::size_t synthetic_rows = 0;
  std::size_t test_rows = 0;
};

/// Throws std::logic_error if either input already contains synthetic rows:
/// balancing must only ever run after the split, on training data.
TailOutcome run_tail(const LabeledDataset& train, const LabeledDataset& test, const EvalTail& tail);

struct FoldResult {
  std::size_t fold = 0;
  std::size_t train_rows = 0;
  std::size_t test_rows = 0;
  std::size_t synthetic_train_rows = 0;
  std::size_t synthetic_test_rows = 0;  // asserted zero
  ConfusionMatrix cm;
  Metrics metrics;
};

struct KFoldResult {
  std::vector<FoldResult> folds;
  double mean_accuracy = 0.0;
  double mean_f_measure = 0.0;
};

/// Stratified k-fold evaluation; each iteration balances only its k-1
/// original training folds.
KFoldResult kfold_eval(const LabeledDataset& ds, const EvalTail& tail, std::size_t k,
                       std::uint64_t seed);

}  // namespace aisclass
