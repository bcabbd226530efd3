#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aisclass/dataset.hpp"

namespace aisclass {

struct HoldoutSplit {
  std::vector<std::size_t> train;  // ascending row indices
  std::vector<std::size_t> test;
  std::vector<std::string> warnings;
};

/// Splits each ship type separately: round(train_fraction * n) rows to train,
/// at least one on each side when n >= 2. Throws DataError on empty input.
HoldoutSplit stratified_holdout(const LabeledDataset& ds, std::uint64_t seed,
                                double train_fraction = 0.7);

/// k folds stratified by ship type; fold sizes and per-type counts differ by
/// at most one. Throws DataError when k exceeds either class count.
std::vector<std::vector<std::size_t>> stratified_folds(const LabeledDataset& ds, std::size_t k,
                                                       std::uint64_t seed);

}  // namespace aisclass
