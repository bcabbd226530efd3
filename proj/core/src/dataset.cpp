#include "aisclass/dataset.hpp"

#include <algorithm>
#include <cmath>

#include "aisclass/csv.hpp"
#include "aisclass/digest.hpp"
#include "aisclass/errors.hpp"

namespace aisclass {

std::string_view to_string(Provenance p) {
  return p == Provenance::synthetic ? "synthetic" : "original";
}

std::size_t LabeledDataset::count(Label label) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

void LabeledDataset::add(std::vector<double> row, Label label, RowInfo meta) {
  rows.push_back(std::move(row));
  labels.push_back(label);
  info.push_back(meta);
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
  LabeledDataset out;
  out.feature_names = feature_names;
  out.rows.reserve(indices.size());
  out.labels.reserve(indices.size());
  out.info.reserve(indices.size());
  for (std::size_t i : indices) {
    RowInfo meta = info.at(i);
    meta.parent_a = meta.parent_b = -1;
    out.add(rows.at(i), labels.at(i), meta);
  }
  return out;
}

void LabeledDataset::validate() const {
  if (labels.size() != rows.size() || info.size() != rows.size()) {
    throw DataError("dataset row, label and metadata counts differ");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != feature_names.size()) {
      throw DataError("dataset row " + std::to_string(i) + " has the wrong width");
    }
    for (double v : rows[i]) {
      if (!std::isfinite(v)) throw DataError("dataset row " + std::to_string(i) + " is not finite");
    }
  }
}

std::string LabeledDataset::digest() const {
  Fnv1a h;
  for (const auto& n : feature_names) h.update(n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (double v : rows[i]) h.update(v);
    h.update(static_cast<std::uint64_t>(labels[i]));
    h.update(static_cast<std::uint64_t>(info[i].ship_type));
    h.update(static_cast<std::uint64_t>(info[i].provenance));
  }
  return h.hex();
}

LabeledDataset make_dataset(const std::vector<FeatureVector>& vectors) {
  LabeledDataset ds;
  if (vectors.empty()) return ds;
  ds.feature_names = feature_names(vectors.front().mode);
  for (const auto& fv : vectors) {
    if (fv.mode != vectors.front().mode) throw DataError("mixed feature modes in one dataset");
    ds.add(fv.values, fv.label, RowInfo{fv.ship_type, fv.mmsi, fv.segment, Provenance::original});
  }
  ds.validate();
  return ds;
}

void write_dataset_csv(std::ostream& out, const LabeledDataset& ds, bool with_provenance) {
  std::vector<std::string> row = ds.feature_names;
  row.insert(row.end(), {"label", "ship_type", "mmsi", "segment"});
  if (with_provenance) row.emplace_back("provenance");
  csv::write_row(out, row);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    row.clear();
    for (double v : ds.rows[i]) row.push_back(csv::format_double(v));
    row.emplace_back(to_string(ds.labels[i]));
    row.emplace_back(to_string(ds.info[i].ship_type));
    row.push_back(std::to_string(ds.info[i].mmsi));
    row.push_back(std::to_string(ds.info[i].segment));
    if (with_provenance) row.emplace_back(to_string(ds.info[i].provenance));
    csv::write_row(out, row);
  }
}

LabeledDataset read_dataset_csv(std::istream& in) {
  if (!in.good()) throw DataError("dataset stream is not readable");
  csv::Reader reader(in);
  std::vector<std::string> header;
  if (!reader.next(header)) throw DataError("dataset has no header");

  std::ptrdiff_t label_col = -1, type_col = -1, mmsi_col = -1, seg_col = -1, prov_col = -1;
  std::vector<std::size_t> feature_cols;
  LabeledDataset ds;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto& h = header[c];
    const auto col = static_cast<std::ptrdiff_t>(c);
    if (h == "label") label_col = col;
    else if (h == "ship_type") type_col = col;
    else if (h == "mmsi") mmsi_col = col;
    else if (h == "segment") seg_col = col;
    else if (h == "provenance") prov_col = col;
    else {
      feature_cols.push_back(c);
      ds.feature_names.push_back(h);
    }
  }
  if (label_col < 0) throw DataError("dataset has no label column");

  std::vector<std::string> fields;
  while (reader.next(fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    const std::string where = " at line " + std::to_string(reader.line());
    if (fields.size() != header.size()) throw DataError("wrong field count" + where);
    std::vector<double> row;
    row.reserve(feature_cols.size());
    for (std::size_t c : feature_cols) {
      const auto v = csv::parse_double(fields[c]);
      if (!v) throw DataError("unparseable feature value" + where);
      row.push_back(*v);
    }
    const auto label = parse_label(fields[static_cast<std::size_t>(label_col)]);
    if (!label) throw DataError("unknown label" + where);
    RowInfo meta;
    if (type_col >= 0) meta.ship_type = parse_ship_type(fields[static_cast<std::size_t>(type_col)]);
    if (mmsi_col >= 0) {
      const auto v = csv::parse_int(fields[static_cast<std::size_t>(mmsi_col)]);
      if (!v) throw DataError("unparseable mmsi" + where);
      meta.mmsi = static_cast<std::uint32_t>(*v);
    }
    if (seg_col >= 0) {
      const auto v = csv::parse_int(fields[static_cast<std::size_t>(seg_col)]);
      if (!v) throw DataError("unparseable segment index" + where);
      meta.segment = static_cast<std::size_t>(*v);
    }
    if (prov_col >= 0) {
      const auto& p = fields[static_cast<std::size_t>(prov_col)];
      if (p == "synthetic") meta.provenance = Provenance::synthetic;
      else if (p != "original") throw DataError("unknown provenance" + where);
    }
    ds.add(std::move(row), *label, meta);
  }
  ds.validate();
  return ds;
}

}  // namespace aisclass
