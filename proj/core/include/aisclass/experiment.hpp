#pragma once

#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "aisclass/config.hpp"
#include "aisclass/crossval.hpp"
#include "aisclass/dataset.hpp"
#include "aisclass/decision_tree.hpp"
#include "aisclass/kinematics.hpp"

namespace aisclass {

std::string records_digest(const std::vector<AisRecord>& records);

struct FilterFailure {
  std::uint32_t mmsi = 0;
  std::string reason;
};

struct KinematicStage {
  std::vector<KinematicTrack> tracks;
  std::vector<FilterFailure> failures;  // tracks excluded by numerical failure
  std::size_t underflow_steps = 0;
};

/// Input records plus memoized intermediate stages, shared by every
/// experiment run on the same data. Safe to use from several threads; each
/// stage is computed once per distinct key.
class ExperimentData {
 public:
  ExperimentData(std::vector<AisRecord> records, PipelineConfig cfg);

  const std::vector<AisRecord>& records() const { return records_; }
  const PipelineConfig& config() const { return cfg_; }
  const std::string& input_digest() const { return digest_; }

  std::shared_ptr<const CleaningResult> cleaned(CleaningLevel level);
  std::shared_ptr<const KinematicStage> kinematics(CleaningLevel level, Filtering filtering);
  std::shared_ptr<const LabeledDataset> dataset(CleaningLevel level, Filtering filtering,
                                                Segmentation seg, FeatureMode mode);

 private:
  template <typename T>
  class Memo {
   public:
    template <typename F>
    std::shared_ptr<const T> get(const std::string& key, F&& make);

   private:
    std::mutex mutex_;
    std::map<std::string, std::shared_future<std::shared_ptr<const T>>> cache_;
  };

  std::vector<AisRecord> records_;
  PipelineConfig cfg_;
  std::string digest_;
  Memo<CleaningResult> cleaned_;
  Memo<KinematicStage> kinematics_;
  Memo<LabeledDataset> datasets_;
};

template <typename T>
template <typename F>
std::shared_ptr<const T> ExperimentData::Memo<T>::get(const std::string& key, F&& make) {
  std::promise<std::shared_ptr<const T>> promise;
  std::shared_future<std::shared_ptr<const T>> future;
  bool owner = false;
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      future = promise.get_future().share();
      cache_.emplace(key, future);
      owner = true;
    } else {
      future = it->second;
    }
  }
  if (owner) {
    try {
      promise.set_value(std::make_shared<const T>(make()));
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
  }
  return future.get();
}

struct EvaluationReport {
  ExperimentSetting setting;
  bool ok = true;
  std::string failed_stage;  // set when !ok
  std::string error;
  std::string error_kind;  // data, numerical, config, internal

  std::string config_json;
  std::string input_digest;
  std::string dataset_digest;
  std::map<std::string, std::size_t> counts;
  std::vector<FilterFailure> filter_failures;

  ConfusionMatrix cm;  // holdout test set, or pooled over folds
  Metrics metrics;     // from cm
  std::optional<KFoldResult> kfold;

  std::vector<std::string> feature_names;
  std::optional<PredictorImportance> importance;  // tree classifiers only
  std::optional<ImportanceGroups> importance_groups;
  std::vector<std::string> caveats;

  /// Fold means under k-fold evaluation, else the holdout values.
  double accuracy() const;
  double f_measure() const;

  /// Pretty-printed JSON with sorted keys; byte-identical across reruns.
  std::string to_json() const;
};

/// cleaning -> filtering -> segmentation -> features -> stratified split ->
/// balancing of the training part -> training -> evaluation. Stage failures
/// are captured in the report (ok == false) rather than thrown.
EvaluationReport run_experiment(const ExperimentSetting& setting, ExperimentData& data);

}  // namespace aisclass
