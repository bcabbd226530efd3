#include "aisclass/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "aisclass/errors.hpp"

namespace aisclass {
namespace {

using nlohmann::json;

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                std::string_view where) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || a == key;
    if (!ok) throw ConfigError("unknown key '" + key + "' in " + std::string(where));
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

template <typename T, typename Parse>
void read_enum(const json& obj, const char* key, T& out, Parse parse) {
  if (obj.contains(key)) out = parse(obj.at(key).get<std::string>());
}

CleaningLevel parse_cleaning_level(std::string_view s) {
  if (s == "full") return CleaningLevel::full;
  if (s == "minimum") return CleaningLevel::minimum;
  throw ConfigError("unknown cleaning level '" + std::string(s) + "'");
}

Filtering parse_filtering(std::string_view s) {
  if (s == "imm") return Filtering::imm;
  if (s == "none") return Filtering::none;
  throw ConfigError("unknown filtering '" + std::string(s) + "'");
}

Segmentation parse_segmentation(std::string_view s) {
  if (s == "fixed" || s == "fixed_50") return Segmentation::fixed;
  if (s == "full_track") return Segmentation::full_track;
  throw ConfigError("unknown segmentation '" + std::string(s) + "'");
}

// Enum parsers in other modules throw std::invalid_argument; surface those
// as configuration errors.
template <typename F>
auto as_config(F parse) {
  return [parse](std::string_view s) {
    try {
      return parse(s);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  };
}

ExperimentSetting setting_from(const json& j, std::uint64_t default_seed) {
  check_keys(j,
             {"name", "cleaning", "filtering", "segmentation", "balance", "classifier",
              "feature_mode", "eval", "seed"},
             "matrix setting");
  ExperimentSetting s;
  const std::string name = j.value("name", std::string("complete"));
  if (name == "complete" || name == "no_cleaning" || name == "no_filtering" ||
      name == "no_segmentation") {
    s = ExperimentSetting::named(name);
  } else {
    s.name = name;
  }
  s.seed = default_seed;
  read_enum(j, "cleaning", s.cleaning, parse_cleaning_level);
  read_enum(j, "filtering", s.filtering, parse_filtering);
  read_enum(j, "segmentation", s.segmentation, parse_segmentation);
  read_enum(j, "balance", s.balance, as_config(parse_balance_method));
  read_enum(j, "classifier", s.classifier, as_config(parse_classifier_kind));
  read_enum(j, "feature_mode", s.feature_mode, as_config(parse_feature_mode));
  read_enum(j, "eval", s.eval, parse_eval_mode);
  read(j, "seed", s.seed);
  return s;
}

json setting_json(const ExperimentSetting& s) {
  return {{"name", s.name},
          {"cleaning", to_string(s.cleaning)},
          {"filtering", to_string(s.filtering)},
          {"segmentation", to_string(s.segmentation)},
          {"balance", to_string(s.balance)},
          {"classifier", to_string(s.classifier)},
          {"feature_mode", to_string(s.feature_mode)},
          {"eval", to_string(s.eval)},
          {"seed", s.seed}};
}

void parse_imm(const json& j, ImmConfig& imm) {
  check_keys(j,
             {"q_linear", "q_maneuver", "transition", "meas_noise_sigma", "init_pos_var",
              "init_vel_var", "init_mode_prob"},
             "imm");
  read(j, "q_linear", imm.modes[0].q);
  read(j, "q_maneuver", imm.modes[1].q);
  if (j.contains("transition")) {
    const auto t = j.at("transition").get<std::vector<std::vector<double>>>();
    if (t.size() != 2 || t[0].size() != 2 || t[1].size() != 2) {
      throw ConfigError("imm.transition must be 2x2");
    }
    imm.transition << t[0][0], t[0][1], t[1][0], t[1][1];
  }
  read(j, "meas_noise_sigma", imm.meas_noise_sigma);
  read(j, "init_pos_var", imm.init_pos_var);
  read(j, "init_vel_var", imm.init_vel_var);
  if (j.contains("init_mode_prob")) {
    const auto mu = j.at("init_mode_prob").get<std::vector<double>>();
    if (mu.size() != 2) throw ConfigError("imm.init_mode_prob must have two entries");
    imm.init_mode_prob = {mu[0], mu[1]};
  }
}

void parse_scenario(const json& j, SyntheticScenario& sc) {
  check_keys(j,
             {"preset", "n_fishing", "n_transit", "transit_speed_min", "transit_speed_max",
              "fishing_speed_min", "fishing_speed_max", "turn_min_deg", "turn_max_deg",
              "turn_interval_min_s", "turn_interval_max_s", "turn_rate_deg_s", "points_min",
              "points_max", "noise_sigma_m", "defects", "seed"},
             "scenario");
  if (j.contains("preset")) {
    const auto p = j.at("preset").get<std::string>();
    if (p == "defective") {
      sc = defective_scenario(sc.seed);
    } else if (p != "default") {
      throw ConfigError("unknown scenario preset '" + p + "'");
    }
  }
  read(j, "n_fishing", sc.n_fishing);
  read(j, "n_transit", sc.n_transit);
  read(j, "transit_speed_min", sc.transit_speed_min);
  read(j, "transit_speed_max", sc.transit_speed_max);
  read(j, "fishing_speed_min", sc.fishing_speed_min);
  read(j, "fishing_speed_max", sc.fishing_speed_max);
  read(j, "turn_min_deg", sc.turn_min_deg);
  read(j, "turn_max_deg", sc.turn_max_deg);
  read(j, "turn_interval_min_s", sc.turn_interval_min_s);
  read(j, "turn_interval_max_s", sc.turn_interval_max_s);
  read(j, "turn_rate_deg_s", sc.turn_rate_deg_s);
  read(j, "points_min", sc.points_min);
  read(j, "points_max", sc.points_max);
  read(j, "noise_sigma_m", sc.noise_sigma_m);
  read(j, "seed", sc.seed);
  if (j.contains("defects")) {
    const json& d = j.at("defects");
    check_keys(d,
               {"outlier_track_fraction", "outliers_per_track", "outlier_jump_m",
                "gap_track_fraction", "gap_s", "inconsistent_track_fraction", "motionless_tracks",
                "base_station_tracks", "unlabeled_tracks"},
               "scenario.defects");
    auto& df = sc.defects;
    read(d, "outlier_track_fraction", df.outlier_track_fraction);
    read(d, "outliers_per_track", df.outliers_per_track);
    read(d, "outlier_jump_m", df.outlier_jump_m);
    read(d, "gap_track_fraction", df.gap_track_fraction);
    read(d, "gap_s", df.gap_s);
    read(d, "inconsistent_track_fraction", df.inconsistent_track_fraction);
    read(d, "motionless_tracks", df.motionless_tracks);
    read(d, "base_station_tracks", df.base_station_tracks);
    read(d, "unlabeled_tracks", df.unlabeled_tracks);
  }
}

json scenario_json(const SyntheticScenario& sc) {
  const auto& d = sc.defects;
  return {{"n_fishing", sc.n_fishing},
          {"n_transit", sc.n_transit},
          {"transit_speed_min", sc.transit_speed_min},
          {"transit_speed_max", sc.transit_speed_max},
          {"fishing_speed_min", sc.fishing_speed_min},
          {"fishing_speed_max", sc.fishing_speed_max},
          {"turn_min_deg", sc.turn_min_deg},
          {"turn_max_deg", sc.turn_max_deg},
          {"turn_interval_min_s", sc.turn_interval_min_s},
          {"turn_interval_max_s", sc.turn_interval_max_s},
          {"turn_rate_deg_s", sc.turn_rate_deg_s},
          {"points_min", sc.points_min},
          {"points_max", sc.points_max},
          {"noise_sigma_m", sc.noise_sigma_m},
          {"seed", sc.seed},
          {"defects",
           {{"outlier_track_fraction", d.outlier_track_fraction},
            {"outliers_per_track", d.outliers_per_track},
            {"outlier_jump_m", d.outlier_jump_m},
            {"gap_track_fraction", d.gap_track_fraction},
            {"gap_s", d.gap_s},
            {"inconsistent_track_fraction", d.inconsistent_track_fraction},
            {"motionless_tracks", d.motionless_tracks},
            {"base_station_tracks", d.base_station_tracks},
            {"unlabeled_tracks", d.unlabeled_tracks}}}};
}

}  // namespace

std::string_view to_string(EvalMode m) { return m == EvalMode::kfold ? "kfold" : "holdout"; }

EvalMode parse_eval_mode(std::string_view text) {
  if (text == "holdout" || text == "holdout_70_30") return EvalMode::holdout;
  if (text == "kfold") return EvalMode::kfold;
  throw ConfigError("unknown eval mode '" + std::string(text) + "'");
}

void EvalConfig::validate() const {
  if (k < 2) throw ConfigError("eval.k must be at least 2");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("eval.train_fraction must lie in (0, 1)");
  }
}

std::string_view to_string(CleaningLevel v) { return v == CleaningLevel::full ? "full" : "minimum"; }
std::string_view to_string(Filtering v) { return v == Filtering::imm ? "imm" : "none"; }
std::string_view to_string(Segmentation v) { return v == Segmentation::fixed ? "fixed" : "full_track"; }

ExperimentSetting ExperimentSetting::named(std::string_view name) {
  ExperimentSetting s;
  s.name = std::string(name);
  if (name == "complete") return s;
  if (name == "no_cleaning") {
    s.cleaning = CleaningLevel::minimum;
  } else if (name == "no_filtering") {
    s.filtering = Filtering::none;
  } else if (name == "no_segmentation") {
    s.segmentation = Segmentation::full_track;
  } else {
    throw ConfigError("unknown experiment setting '" + std::string(name) + "'");
  }
  return s;
}

std::string ExperimentSetting::id() const {
  std::string out = name;
  for (std::string_view part : {to_string(balance), to_string(classifier), to_string(feature_mode),
                                to_string(eval)}) {
    out += '-';
    out += part;
  }
  return out;
}

void PipelineConfig::validate() const {
  columns.validate();
  cleaning.validate();
  imm.validate();
  if (segment_length < 2) throw ConfigError("segmentation.length must be at least 2");
  if (!(features.mode_resolution > 0.0)) throw ConfigError("features.mode_resolution must be positive");
  balance.validate();
  classifier_params.tree.validate();
  classifier_params.svm.validate();
  metrics.validate();
  eval.validate();
  scenario.validate();
}

PipelineConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(doc,
             {"preset", "columns", "timestamp_format", "decimal_separator", "cleaning", "imm",
              "segmentation", "features", "balance", "classifier", "tree", "svm", "eval",
              "scenario", "matrix", "seed"},
             "config");
  PipelineConfig cfg;
  try {
    read(doc, "seed", cfg.seed);
    cfg.scenario.seed = cfg.seed;
    cfg.columns = ColumnMapping::from_json(json_text);
    if (doc.contains("cleaning")) {
      const json& c = doc.at("cleaning");
      check_keys(c,
                 {"max_gap_s", "min_points", "extreme_speed_mps", "motionless_diag_m",
                  "status_fraction", "displacement_m", "full"},
                 "cleaning");
      read(c, "max_gap_s", cfg.cleaning.max_gap_s);
      read(c, "min_points", cfg.cleaning.min_points);
      read(c, "extreme_speed_mps", cfg.cleaning.extreme_speed_mps);
      read(c, "motionless_diag_m", cfg.cleaning.motionless_diag_m);
      read(c, "status_fraction", cfg.cleaning.status_fraction);
      read(c, "displacement_m", cfg.cleaning.displacement_m);
      read(c, "full", cfg.cleaning.full);
    }
    if (doc.contains("imm")) parse_imm(doc.at("imm"), cfg.imm);
    if (doc.contains("segmentation")) {
      check_keys(doc.at("segmentation"), {"length"}, "segmentation");
      read(doc.at("segmentation"), "length", cfg.segment_length);
    }
    if (doc.contains("features")) {
      const json& f = doc.at("features");
      check_keys(f, {"mode", "mode_resolution"}, "features");
      read_enum(f, "mode", cfg.feature_mode, as_config(parse_feature_mode));
      read(f, "mode_resolution", cfg.features.mode_resolution);
    }
    if (doc.contains("balance")) {
      const json& b = doc.at("balance");
      check_keys(b, {"method", "target_minority_fraction", "k_neighbors"}, "balance");
      read_enum(b, "method", cfg.balance.method, as_config(parse_balance_method));
      read(b, "target_minority_fraction", cfg.balance.target_minority_fraction);
      read(b, "k_neighbors", cfg.balance.k_neighbors);
    }
    read_enum(doc, "classifier", cfg.classifier, as_config(parse_classifier_kind));
    if (doc.contains("tree")) {
      const json& t = doc.at("tree");
      check_keys(t, {"min_leaf_size", "max_depth"}, "tree");
      read(t, "min_leaf_size", cfg.classifier_params.tree.min_leaf_size);
      read(t, "max_depth", cfg.classifier_params.tree.max_depth);
    }
    if (doc.contains("svm")) {
      const json& s = doc.at("svm");
      check_keys(s, {"C", "pg_tolerance", "rel_objective_tolerance", "max_epochs"}, "svm");
      read(s, "C", cfg.classifier_params.svm.C);
      read(s, "pg_tolerance", cfg.classifier_params.svm.pg_tolerance);
      read(s, "rel_objective_tolerance", cfg.classifier_params.svm.rel_objective_tolerance);
      read(s, "max_epochs", cfg.classifier_params.svm.max_epochs);
    }
    if (doc.contains("eval")) {
      const json& e = doc.at("eval");
      check_keys(e, {"mode", "k", "train_fraction", "f_measure_beta"}, "eval");
      read_enum(e, "mode", cfg.eval.mode, parse_eval_mode);
      read(e, "k", cfg.eval.k);
      read(e, "train_fraction", cfg.eval.train_fraction);
      read(e, "f_measure_beta", cfg.metrics.f_measure_beta);
    }
    if (doc.contains("scenario")) parse_scenario(doc.at("scenario"), cfg.scenario);
    if (doc.contains("matrix")) {
      const json& m = doc.at("matrix");
      check_keys(m, {"preset", "settings"}, "matrix");
      const std::string preset = m.value("preset", std::string("default"));
      if (preset != "default" && preset != "complete_only") {
        throw ConfigError("unknown matrix preset '" + preset + "'");
      }
      if (m.contains("settings")) {
        for (const auto& s : m.at("settings")) cfg.matrix.push_back(setting_from(s, cfg.seed));
      } else {
        cfg.matrix = default_matrix(cfg.seed, preset == "complete_only");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config value has the wrong type: ") + e.what());
  }
  cfg.balance.seed = cfg.seed;
  cfg.classifier_params.svm.seed = cfg.seed;
  cfg.validate();
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::vector<ExperimentSetting> default_matrix(std::uint64_t seed, bool complete_only) {
  std::vector<ExperimentSetting> out;
  const std::vector<std::string_view> names =
      complete_only ? std::vector<std::string_view>{"complete"}
                    : std::vector<std::string_view>{"complete", "no_cleaning", "no_filtering",
                                                    "no_segmentation"};
  for (auto name : names) {
    const bool complete = name == "complete";
    for (FeatureMode fm : {FeatureMode::full_44, FeatureMode::reduced_13}) {
      if (!complete && fm != FeatureMode::full_44) continue;
      for (BalanceMethod b : {BalanceMethod::none, BalanceMethod::random_undersample, BalanceMethod::smote}) {
        for (ClassifierKind c : {ClassifierKind::tree, ClassifierKind::svm}) {
          ExperimentSetting s = ExperimentSetting::named(name);
          s.balance = b;
          s.classifier = c;
          s.feature_mode = fm;
          s.seed = seed;
          out.push_back(s);
        }
      }
    }
  }
  return out;
}

std::string config_to_json(const PipelineConfig& cfg) {
  const auto& m = cfg.columns;
  json settings = json::array();
  for (const auto& s : cfg.matrix) settings.push_back(setting_json(s));
  const auto& imm = cfg.imm;
  json doc = {
      {"columns",
       {{"timestamp", m.timestamp}, {"mmsi", m.mmsi}, {"lat", m.lat}, {"lon", m.lon},
        {"sog", m.sog}, {"cog", m.cog}, {"nav_status", m.nav_status}, {"ship_type", m.ship_type},
        {"length", m.length}, {"width", m.width}, {"mobile_class", m.mobile_class}}},
      {"timestamp_format", m.timestamp_format},
      {"decimal_separator", std::string(1, m.decimal_separator)},
      {"cleaning",
       {{"max_gap_s", cfg.cleaning.max_gap_s},
        {"min_points", cfg.cleaning.min_points},
        {"extreme_speed_mps", cfg.cleaning.extreme_speed_mps},
        {"motionless_diag_m", cfg.cleaning.motionless_diag_m},
        {"status_fraction", cfg.cleaning.status_fraction},
        {"displacement_m", cfg.cleaning.displacement_m},
        {"full", cfg.cleaning.full}}},
      {"imm",
       {{"q_linear", imm.modes[0].q},
        {"q_maneuver", imm.modes[1].q},
        {"transition",
         {{imm.transition(0, 0), imm.transition(0, 1)}, {imm.transition(1, 0), imm.transition(1, 1)}}},
        {"meas_noise_sigma", imm.meas_noise_sigma},
        {"init_pos_var", imm.init_pos_var},
        {"init_vel_var", imm.init_vel_var},
        {"init_mode_prob", {imm.init_mode_prob[0], imm.init_mode_prob[1]}}}},
      {"segmentation", {{"length", cfg.segment_length}}},
      {"features",
       {{"mode", to_string(cfg.feature_mode)}, {"mode_resolution", cfg.features.mode_resolution}}},
      {"balance",
       {{"method", to_string(cfg.balance.method)},
        {"target_minority_fraction", cfg.balance.target_minority_fraction},
        {"k_neighbors", cfg.balance.k_neighbors}}},
      {"classifier", to_string(cfg.classifier)},
      {"tree",
       {{"min_leaf_size", cfg.classifier_params.tree.min_leaf_size},
        {"max_depth", cfg.classifier_params.tree.max_depth}}},
      {"svm",
       {{"C", cfg.classifier_params.svm.C},
        {"pg_tolerance", cfg.classifier_params.svm.pg_tolerance},
        {"rel_objective_tolerance", cfg.classifier_params.svm.rel_objective_tolerance},
        {"max_epochs", cfg.classifier_params.svm.max_epochs}}},
      {"eval",
       {{"mode", to_string(cfg.eval.mode)},
        {"k", cfg.eval.k},
        {"train_fraction", cfg.eval.train_fraction},
        {"f_measure_beta", cfg.metrics.f_measure_beta}}},
      {"scenario", scenario_json(cfg.scenario)},
      {"matrix", {{"settings", settings}}},
      {"seed", cfg.seed}};
  return doc.dump();
}

std::string setting_to_json(const ExperimentSetting& s) { return setting_json(s).dump(); }

ExperimentSetting parse_setting(std::string_view json_text) {
  try {
    const json j = json::parse(json_text);
    return setting_from(j, j.value("seed", std::uint64_t{1}));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid setting: ") + e.what());
  }
}

}  // namespace aisclass
