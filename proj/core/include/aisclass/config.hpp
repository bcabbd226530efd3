#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "aisclass/classifier.hpp"
#include "aisclass/cleaning.hpp"
#include "aisclass/features.hpp"
#include "aisclass/imm.hpp"
#include "aisclass/ingest.hpp"
#include "aisclass/metrics.hpp"
#include "aisclass/rebalance.hpp"
#include "aisclass/segmentation.hpp"
#include "aisclass/synthetic.hpp"

namespace aisclass {

enum class EvalMode : std::uint8_t { holdout, kfold };
std::string_view to_string(EvalMode m);
EvalMode parse_eval_mode(std::string_view text);

struct EvalConfig {
  EvalMode mode = EvalMode::holdout;
  std::size_t k = 10;
  double train_fraction = 0.7;
  void validate() const;
};

enum class CleaningLevel : std::uint8_t { full, minimum };
enum class Filtering : std::uint8_t { imm, none };
enum class Segmentation : std::uint8_t { fixed, full_track };

std::string_view to_string(CleaningLevel v);
std::string_view to_string(Filtering v);
std::string_view to_string(Segmentation v);

/// One row of the experiment matrix.
struct ExperimentSetting {
  std::string name = "complete";
  CleaningLevel cleaning = CleaningLevel::full;
  Filtering filtering = Filtering::imm;
  Segmentation segmentation = Segmentation::fixed;
  BalanceMethod balance = BalanceMethod::none;
  ClassifierKind classifier = ClassifierKind::tree;
  FeatureMode feature_mode = FeatureMode::full_44;
  EvalMode eval = EvalMode::holdout;
  std::uint64_t seed = 1;

  /// complete, no_cleaning, no_filtering or no_segmentation. Throws
  /// ConfigError otherwise.
  static ExperimentSetting named(std::string_view name);
  /// Stable identifier, e.g. "complete-smote-tree-full_44-holdout".
  std::string id() const;
  friend bool operator==(const ExperimentSetting&, const ExperimentSetting&) = default;
};

/// Every tunable of the pipeline. Parsed from one JSON document; sections
/// not present keep their defaults and unknown keys are rejected.
struct PipelineConfig {
  ColumnMapping columns;
  CleaningConfig cleaning;
  ImmConfig imm;
  std::size_t segment_length = kDefaultSegmentLength;
  FeatureMode feature_mode = FeatureMode::full_44;
  FeatureConfig features;
  BalanceConfig balance;
  ClassifierKind classifier = ClassifierKind::tree;
  ClassifierParams classifier_params;
  MetricsConfig metrics;
  EvalConfig eval;
  SyntheticScenario scenario;
  /// Empty selects the default 30-experiment matrix.
  std::vector<ExperimentSetting> matrix;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Throws ConfigError on malformed JSON, wrong types, unknown keys or
/// invalid values.
/// Default matrix: complete x {full_44, reduced_13} x 3
/// balancing x 2 classifiers, plus the three ablations x 3 x 2 (30 in all).
/// complete_only keeps the first 12.
std::vector<ExperimentSetting> default_matrix(std::uint64_t seed, bool complete_only = false);

PipelineConfig parse_config(std::string_view json_text);
PipelineConfig load_config(const std::filesystem::path& path);

/// Canonical JSON echo (sorted keys, shortest round-trip numbers).
std::string config_to_json(const PipelineConfig& cfg);
std::string setting_to_json(const ExperimentSetting& s);
ExperimentSetting parse_setting(std::string_view json_text);

}  // namespace aisclass
