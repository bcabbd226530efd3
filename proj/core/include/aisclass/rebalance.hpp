#pragma once

#include <cstdint>
#include <string_view>

#include "aisclass/dataset.hpp"

namespace aisclass {

enum class BalanceMethod : std::uint8_t { none, random_undersample, smote };

std::string_view to_string(BalanceMethod m);
BalanceMethod parse_balance_method(std::string_view text);

struct BalanceConfig {
  BalanceMethod method = BalanceMethod::none;
  double target_minority_fraction = 0.5;
  std::size_t k_neighbors = 5;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Deletes majority rows uniformly at random until the minority reaches the
/// target fraction. Surviving rows keep their input order. Identity when the
/// target is already met.
LabeledDataset random_undersample(const LabeledDataset& ds, const BalanceConfig& cfg);

/// Appends synthetic minority rows until the minority reaches the target
/// fraction. Base rows are taken round-robin; neighbours come from the k
/// nearest minority rows on z-standardized features. Throws DataError with
/// fewer than two minority rows.
LabeledDataset smote(const LabeledDataset& ds, const BalanceConfig& cfg);

/// Dispatches on cfg.method.
LabeledDataset rebalance(const LabeledDataset& ds, const BalanceConfig& cfg);

}  // namespace aisclass
