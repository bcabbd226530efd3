#include "aisclass/rebalance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aisclass/errors.hpp"
#include "aisclass/random.hpp"

namespace aisclass {
namespace {

struct ClassSplit {
  Label minority;
  std::vector<std::size_t> minority_rows;
  std::vector<std::size_t> majority_rows;
};

ClassSplit split_by_class(const LabeledDataset& ds) {
  std::vector<std::size_t> fishing, other;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    (ds.labels[i] == Label::fishing ? fishing : other).push_back(i);
  }
  // Fishing is the minority on ties, which makes ties an identity anyway.
  if (fishing.size() <= other.size()) return {Label::fishing, std::move(fishing), std::move(other)};
  return {Label::non_fishing, std::move(other), std::move(fishing)};
}

}  // namespace

std::string_view to_string(BalanceMethod m) {
  switch (m) {
    case BalanceMethod::none: return "none";
    case BalanceMethod::random_undersample: return "undersample";
    case BalanceMethod::smote: return "smote";
  }
  return "none";
}

BalanceMethod parse_balance_method(std::string_view text) {
  if (text == "none") return BalanceMethod::none;
  if (text == "undersample" || text == "random_undersample") return BalanceMethod::random_undersample;
  if (text == "smote") return BalanceMethod::smote;
  throw std::invalid_argument("unknown balance method: " + std::string(text));
}

void BalanceConfig::validate() const {
  if (!(target_minority_fraction > 0.0 && target_minority_fraction < 1.0)) {
    throw ConfigError("target_minority_fraction must lie in (0, 1)");
  }
  if (k_neighbors < 1) throw ConfigError("k_neighbors must be at least 1");
}

LabeledDataset random_undersample(const LabeledDataset& ds, const BalanceConfig& cfg) {
  cfg.validate();
  const auto split = split_by_class(ds);
  const std::size_t m = split.minority_rows.size();
  if (m == 0) throw DataError("random undersampling needs at least one minority instance");

  const double f = cfg.target_minority_fraction;
  const auto keep = static_cast<std::size_t>(std::llround(static_cast<double>(m) * (1.0 - f) / f));
  if (split.majority_rows.size() <= keep) return ds;

  Rng rng(cfg.seed);
  std::vector<std::size_t> pool = split.majority_rows;
  rng.shuffle(pool);
  pool.resize(keep);

  std::vector<std::size_t> rows = split.minority_rows;
  rows.insert(rows.end(), pool.begin(), pool.end());
  std::sort(rows.begin(), rows.end());
  return ds.subset(rows);
}

LabeledDataset smote(const LabeledDataset& ds, const BalanceConfig& cfg) {
  cfg.validate();
  const auto split = split_by_class(ds);
  const auto& minority = split.minority_rows;
  const std::size_t m = minority.size();
  if (m < 2) throw DataError("insufficient minority instances for SMOTE");

  const double f = cfg.target_minority_fraction;
  const auto target = static_cast<std::size_t>(
      std::llround(static_cast<double>(split.majority_rows.size()) * f / (1.0 - f)));
  if (m >= target) return ds;

  // Standardize on the whole dataset so every unit contributes comparably.
  const std::size_t d = ds.n_features();
  std::vector<double> mean(d, 0.0), inv_std(d, 0.0);
  const auto n = static_cast<double>(ds.size());
  for (const auto& row : ds.rows) {
    for (std::size_t j = 0; j < d; ++j) mean[j] += row[j];
  }
  for (auto& v : mean) v /= n;
  for (std::size_t j = 0; j < d; ++j) {
    double ss = 0.0;
    for (const auto& row : ds.rows) ss += (row[j] - mean[j]) * (row[j] - mean[j]);
    const double sd = std::sqrt(ss / n);
    inv_std[j] = sd > 0.0 ? 1.0 / sd : 0.0;
  }
  std::vector<std::vector<double>> z(m, std::vector<double>(d));
  for (std::size_t a = 0; a < m; ++a) {
    const auto& row = ds.rows[minority[a]];
    for (std::size_t j = 0; j < d; ++j) z[a][j] = (row[j] - mean[j]) * inv_std[j];
  }

  const std::size_t k = std::min(cfg.k_neighbors, m - 1);
  std::vector<std::vector<std::size_t>> neighbors(m);
  std::vector<std::pair<double, std::size_t>> dist;
  for (std::size_t a = 0; a < m; ++a) {
    dist.clear();
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double diff = z[a][j] - z[b][j];
        s += diff * diff;
      }
      dist.emplace_back(s, b);
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
    for (std::size_t i = 0; i < k; ++i) neighbors[a].push_back(dist[i].second);
  }

  LabeledDataset out = ds;
  Rng rng(cfg.seed);
  const std::size_t to_create = target - m;
  for (std::size_t i = 0; i < to_create; ++i) {
    const std::size_t a = i % m;
    const std::size_t b = neighbors[a][static_cast<std::size_t>(rng.below(k))];
    const double u = rng.uniform01();
    const auto& x = ds.rows[minority[a]];
    const auto& y = ds.rows[minority[b]];
    std::vector<double> row(d);
    for (std::size_t j = 0; j < d; ++j) row[j] = x[j] + u * (y[j] - x[j]);

    RowInfo meta = ds.info[minority[a]];
    meta.provenance = Provenance::synthetic;
    meta.parent_a = static_cast<std::int64_t>(minority[a]);
    meta.parent_b = static_cast<std::int64_t>(minority[b]);
    out.add(std::move(row), split.minority, meta);
  }
  return out;
}

LabeledDataset rebalance(const LabeledDataset& ds, const BalanceConfig& cfg) {
  switch (cfg.method) {
    case BalanceMethod::none: return ds;
    case BalanceMethod::random_undersample: return random_undersample(ds, cfg);
    case BalanceMethod::smote: return smote(ds, cfg);
  }
  return ds;
}

}  // namespace aisclass
