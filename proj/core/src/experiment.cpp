#include "aisclass/experiment.hpp"

#include <stdexcept>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "aisclass/digest.hpp"
#include "aisclass/errors.hpp"
#include "aisclass/imm.hpp"
#include "aisclass/random.hpp"
#include "aisclass/segmentation.hpp"
#include "aisclass/splits.hpp"

namespace aisclass {
namespace {

using nlohmann::json;

// Salts for the per-setting random streams. The split salt does not depend
// on balancing or classifier, so those variants see identical partitions.
constexpr std::uint64_t kSplitSalt = 1;
constexpr std::uint64_t kBalanceSalt = 2;
constexpr std::uint64_t kSvmSalt = 3;

json metrics_json(const ConfusionMatrix& cm, const Metrics& m) {
  return {{"confusion", {{"tp", cm.tp}, {"fn", cm.fn}, {"fp", cm.fp}, {"tn", cm.tn}}},
          {"accuracy", m.accuracy},
          {"precision", m.precision},
          {"recall", m.recall},
          {"f_measure", m.f_measure},
          {"precision_undefined", m.precision_undefined},
          {"recall_undefined", m.recall_undefined},
          {"f_measure_undefined", m.f_measure_undefined}};
}

const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const DataError*>(&e)) return "data";
  if (dynamic_cast<const NumericalError*>(&e)) return "numerical";
  if (dynamic_cast<const ConfigError*>(&e)) return "config";
  return "internal";
}

}  // namespace

std::string records_digest(const std::vector<AisRecord>& records) {
  Fnv1a h;
  auto opt = [&h](const auto& v) {
    h.update(std::uint64_t{v.has_value()});
    if (v) h.update(static_cast<double>(*v));
  };
  for (const auto& r : records) {
    h.update(static_cast<std::uint64_t>(r.timestamp));
    h.update(std::uint64_t{r.mmsi});
    h.update(r.lat);
    h.update(r.lon);
    opt(r.sog);
    opt(r.cog);
    opt(r.nav_status);
    opt(r.length);
    opt(r.width);
    h.update(std::uint64_t{r.ship_type.has_value()});
    if (r.ship_type) h.update(static_cast<std::uint64_t>(*r.ship_type));
    h.update(static_cast<std::uint64_t>(r.mobile_class));
  }
  return h.hex();
}

ExperimentData::ExperimentData(std::vector<AisRecord> records, PipelineConfig cfg)
    : records_(std::move(records)), cfg_(std::move(cfg)), digest_(records_digest(records_)) {}

std::shared_ptr<const CleaningResult> ExperimentData::cleaned(CleaningLevel level) {
  return cleaned_.get(std::string(to_string(level)), [&] {
    CleaningConfig c = cfg_.cleaning;
    c.full = level == CleaningLevel::full;
    return clean(records_, c);
  });
}

std::shared_ptr<const KinematicStage> ExperimentData::kinematics(CleaningLevel level,
                                                                 Filtering filtering) {
  const std::string key = std::string(to_string(level)) + "/" + std::string(to_string(filtering));
  return kinematics_.get(key, [&] {
    const auto tracks = cleaned(level);
    KinematicStage stage;
    for (const auto& t : tracks->tracks) {
      if (filtering == Filtering::none) {
        stage.tracks.push_back(raw_kinematics(t));
        continue;
      }
      try {
        stage.tracks.push_back(smooth_track(t, cfg_.imm));
        stage.underflow_steps += stage.tracks.back().underflow_steps;
      } catch (const NumericalError& e) {
        spdlog::warn("excluding track {}: {}", t.mmsi, e.what());
        stage.failures.push_back({t.mmsi, e.what()});
      }
    }
    return stage;
  });
}

std::shared_ptr<const LabeledDataset> ExperimentData::dataset(CleaningLevel level,
                                                              Filtering filtering,
                                                              Segmentation seg, FeatureMode mode) {
  const std::string key = std::string(to_string(level)) + "/" + std::string(to_string(filtering)) +
                          "/" + std::string(to_string(seg)) + "/" + std::string(to_string(mode));
  return datasets_.get(key, [&] {
    const auto kin = kinematics(level, filtering);
    std::vector<FeatureVector> vectors;
    for (const auto& t : kin->tracks) {
      if (seg == Segmentation::fixed) {
        for (const auto& s : segment_track(t, cfg_.segment_length)) {
          vectors.push_back(extract(s, mode, cfg_.features));
        }
      } else if (t.points.size() >= 2) {
        vectors.push_back(extract(whole_track_segment(t), mode, cfg_.features));
      }
    }
    if (vectors.empty()) throw DataError("no segments survived the preceding stages");
    return make_dataset(vectors);
  });
}

double EvaluationReport::accuracy() const { return kfold ? kfold->mean_accuracy : metrics.accuracy; }

double EvaluationReport::f_measure() const {
  return kfold ? kfold->mean_f_measure : metrics.f_measure;
}

std::string EvaluationReport::to_json() const {
  json doc;
  doc["setting"] = json::parse(setting_to_json(setting));
  doc["id"] = setting.id();
  doc["status"] = ok ? "ok" : "failed";
  if (!ok) {
    doc["failure"] = {{"stage", failed_stage}, {"kind", error_kind}, {"message", error}};
  }
  doc["config"] = config_json.empty() ? json(nullptr) : json::parse(config_json);
  doc["seed"] = setting.seed;
  doc["input_digest"] = input_digest;
  doc["dataset_digest"] = dataset_digest;
  doc["counts"] = counts;
  json failures = json::array();
  for (const auto& f : filter_failures) failures.push_back({{"mmsi", f.mmsi}, {"reason", f.reason}});
  doc["filter_failures"] = failures;
  if (ok) {
    doc["evaluation"] = metrics_json(cm, metrics);
    doc["evaluation"]["mode"] = to_string(setting.eval);
    if (kfold) {
      json folds = json::array();
      for (const auto& f : kfold->folds) {
        json fj = metrics_json(f.cm, f.metrics);
        fj["fold"] = f.fold;
        fj["train_rows"] = f.train_rows;
        fj["test_rows"] = f.test_rows;
        fj["synthetic_train_rows"] = f.synthetic_train_rows;
        fj["synthetic_test_rows"] = f.synthetic_test_rows;
        folds.push_back(fj);
      }
      doc["evaluation"]["folds"] = folds;
      doc["evaluation"]["mean_accuracy"] = kfold->mean_accuracy;
      doc["evaluation"]["mean_f_measure"] = kfold->mean_f_measure;
    }
  }
  if (importance) {
    json per_feature = json::array();
    for (std::size_t i = 0; i < feature_names.size(); ++i) {
      per_feature.push_back({{"feature", feature_names[i]},
                             {"raw", importance->raw[i]},
                             {"normalized", importance->normalized[i]}});
    }
    doc["importance"] = {{"features", per_feature}};
    if (importance_groups) {
      doc["importance"]["by_statistic"] = importance_groups->by_statistic;
      doc["importance"]["by_kinematic"] = importance_groups->by_kinematic;
      doc["importance"]["extras"] = importance_groups->extras;
    }
  }
  doc["feature_names"] = feature_names;
  doc["caveats"] = caveats;
  return doc.dump(2) + "\n";
}

EvaluationReport run_experiment(const ExperimentSetting& setting, ExperimentData& data) {
  EvaluationReport rep;
  rep.setting = setting;
  rep.input_digest = data.input_digest();
  {
    PipelineConfig echo = data.config();
    echo.matrix.clear();
    echo.feature_mode = setting.feature_mode;
    echo.classifier = setting.classifier;
    echo.balance.method = setting.balance;
    echo.eval.mode = setting.eval;
    echo.cleaning.full = setting.cleaning == CleaningLevel::full;
    echo.seed = setting.seed;
    rep.config_json = config_to_json(echo);
  }
  rep.counts["input_records"] = data.records().size();

  std::string stage = "cleaning";
  try {
    const auto cleaned = data.cleaned(setting.cleaning);
    const auto& cs = cleaned->stats;
    rep.counts["cleaning_candidates"] = cs.candidates;
    rep.counts["cleaning_noise_points_removed"] = cs.noise_points_removed;
    rep.counts["cleaning_dropped_short_after_noise"] = cs.dropped_short_after_noise;
    rep.counts["cleaning_dropped_unlabeled"] = cs.dropped_unlabeled;
    rep.counts["cleaning_dropped_not_a_ship"] = cs.dropped_not_a_ship;
    rep.counts["cleaning_dropped_motionless"] = cs.dropped_motionless;
    rep.counts["cleaning_dropped_inconsistent"] = cs.dropped_inconsistent;
    rep.counts["tracks"] = cs.output_tracks;
    rep.counts["track_points"] = cs.output_points;

    stage = "filtering";
    const auto kin = data.kinematics(setting.cleaning, setting.filtering);
    rep.counts["filtered_tracks"] = kin->tracks.size();
    rep.counts["filter_underflow_steps"] = kin->underflow_steps;
    rep.filter_failures = kin->failures;

    stage = "features";
    const auto ds =
        data.dataset(setting.cleaning, setting.filtering, setting.segmentation, setting.feature_mode);
    rep.dataset_digest = ds->digest();
    rep.feature_names = ds->feature_names;
    rep.counts["segments"] = ds->size();
    rep.counts["segments_fishing"] = ds->count(Label::fishing);
    rep.counts["segments_non_fishing"] = ds->count(Label::non_fishing);

    const PipelineConfig& cfg = data.config();
    EvalTail tail;
    tail.balance = cfg.balance;
    tail.balance.method = setting.balance;
    tail.balance.seed = derive_seed(setting.seed, kBalanceSalt);
    tail.classifier = setting.classifier;
    tail.params = cfg.classifier_params;
    tail.params.svm.seed = derive_seed(setting.seed, kSvmSalt);
    tail.metrics = cfg.metrics;

    stage = "evaluation";
    if (setting.eval == EvalMode::kfold) {
      KFoldResult kf = kfold_eval(*ds, tail, cfg.eval.k, derive_seed(setting.seed, kSplitSalt));
      for (const auto& f : kf.folds) rep.cm += f.cm;
      rep.metrics = metrics(rep.cm, cfg.metrics);
      rep.kfold = std::move(kf);
      rep.caveats.push_back("importance is not computed under k-fold evaluation");
    } else {
      const HoldoutSplit split =
          stratified_holdout(*ds, derive_seed(setting.seed, kSplitSalt), cfg.eval.train_fraction);
      for (const auto& w : split.warnings) rep.caveats.push_back(w);
      const LabeledDataset train = ds->subset(split.train);
      const LabeledDataset test = ds->subset(split.test);
      if (test.empty()) throw DataError("holdout split left no test rows");
      const TailOutcome out = run_tail(train, test, tail);
      rep.counts["train_rows"] = out.train_rows;
      rep.counts["balanced_train_rows"] = out.balanced_train_rows;
      rep.counts["synthetic_train_rows"] = out.synthetic_rows;
      rep.counts["test_rows"] = out.test_rows;
      rep.cm = out.cm;
      rep.metrics = out.metrics;
      if (const DecisionTree* tree = out.model.tree()) {
        stage = "importance";
        rep.importance = predictor_importance(*tree);
        rep.importance_groups = aggregate_importance(ds->feature_names, rep.importance->normalized);
      }
    }
    if (setting.segmentation == Segmentation::full_track) {
      rep.caveats.push_back(
          "whole-track inputs vary in length, so their statistics are less comparable than "
          "fixed-size segments");
    }
    if (setting.filtering == Filtering::none) {
      rep.caveats.push_back("speed and course come from finite differences of raw positions");
    }
  } catch (const std::exception& e) {
    rep.ok = false;
    rep.failed_stage = stage;
    rep.error = e.what();
    rep.error_kind = error_kind(e);
    spdlog::error("experiment {} failed at {}: {}", setting.id(), stage, e.what());
  }
  return rep;
}

}  // namespace aisclass
