#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "aisclass/features.hpp"
#include "aisclass/types.hpp"

namespace aisclass {

enum class Provenance : std::uint8_t { original, synthetic };

std::string_view to_string(Provenance p);

struct RowInfo {
  ShipType ship_type = ShipType::unknown;
  std::uint32_t mmsi = 0;
  std::size_t segment = 0;
  Provenance provenance = Provenance::original;
  /// SMOTE parents (row indices in the dataset that holds this row); -1 for
  /// original rows.
  std::int64_t parent_a = -1;
  std::int64_t parent_b = -1;

  friend bool operator==(const RowInfo&, const RowInfo&) = default;
};

/// Row-major feature matrix with labels and per-row metadata.
struct LabeledDataset {
  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> rows;
  std::vector<Label> labels;
  std::vector<RowInfo> info;

  std::size_t size() const { return rows.size(); }
  std::size_t n_features() const { return feature_names.size(); }
  bool empty() const { return rows.empty(); }
  std::size_t count(Label label) const;

  void add(std::vector<double> row, Label label, RowInfo meta);

  /// Rows at `indices` in the given order; parent links are dropped.
  LabeledDataset subset(std::span<const std::size_t> indices) const;

  /// Throws DataError on shape mismatches or non-finite values.
  void validate() const;

  std::string digest() const;

  friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;
};

LabeledDataset make_dataset(const std::vector<FeatureVector>& vectors);

/// Columns: feature names, label, ship_type, mmsi, segment and, when
/// requested, provenance.
void write_dataset_csv(std::ostream& out, const LabeledDataset& ds, bool with_provenance = false);

/// Inverse of write_dataset_csv. Any column not in the metadata set is a
/// feature. Throws DataError.
LabeledDataset read_dataset_csv(std::istream& in);

}  // namespace aisclass
