#include "aisclass/splits.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "aisclass/errors.hpp"
#include "aisclass/random.hpp"

namespace aisclass {
namespace {

using Groups = std::array<std::vector<std::size_t>, kNamedShipTypes + 1>;

Groups group_by_type(const LabeledDataset& ds) {
  Groups g;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    g[static_cast<std::size_t>(ds.info[i].ship_type)].push_back(i);
  }
  return g;
}

}  // namespace

HoldoutSplit stratified_holdout(const LabeledDataset& ds, std::uint64_t seed,
                                double train_fraction) {
  if (ds.empty()) throw DataError("cannot split an empty dataset");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("train fraction must lie in (0, 1)");
  }
  HoldoutSplit split;
  Rng rng(seed);
  auto groups = group_by_type(ds);
  for (std::size_t t = 0; t < groups.size(); ++t) {
    auto& rows = groups[t];
    if (rows.empty()) continue;
    const std::size_t n = rows.size();
    rng.shuffle(rows);
    auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
    if (n >= 2) {
      n_train = std::clamp<std::size_t>(n_train, 1, n - 1);
    } else {
      n_train = 1;
      split.warnings.push_back("ship type " + std::string(to_string(static_cast<ShipType>(t))) +
                               " has a single instance; it goes to training only");
    }
    split.train.insert(split.train.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n_train));
    split.test.insert(split.test.end(), rows.begin() + static_cast<std::ptrdiff_t>(n_train), rows.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

std::vector<std::vector<std::size_t>> stratified_folds(const LabeledDataset& ds, std::size_t k,
                                                       std::uint64_t seed) {
  if (k < 2) throw ConfigError("k-fold needs k >= 2");
  const std::size_t pos = ds.count(Label::fishing);
  const std::size_t neg = ds.size() - pos;
  if (k > std::min(pos, neg)) {
    throw DataError("k = " + std::to_string(k) + " exceeds the smallest class count (" +
                    std::to_string(std::min(pos, neg)) + ")");
  }
  Rng rng(seed);
  auto groups = group_by_type(ds);
  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t position = 0;
  for (auto& rows : groups) {
    rng.shuffle(rows);
    for (std::size_t r : rows) folds[position++ % k].push_back(r);
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

}  // namespace aisclass
