// Command line front end. Every stage reads and writes plain files so any
// step can be rerun or inspected on its own.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "aisclass/classifier.hpp"
#include "aisclass/cleaning.hpp"
#include "aisclass/config.hpp"
#include "aisclass/crossval.hpp"
#include "aisclass/csv.hpp"
#include "aisclass/dataset.hpp"
#include "aisclass/errors.hpp"
#include "aisclass/experiment.hpp"
#include "aisclass/imm.hpp"
#include "aisclass/ingest.hpp"
#include "aisclass/matrix.hpp"
#include "aisclass/segmentation.hpp"
#include "aisclass/synthetic.hpp"
#include "aisclass/track_io.hpp"

namespace fs = std::filesystem;
using namespace aisclass;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

struct Globals {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  std::size_t workers = 1;
};

PipelineConfig load(const Globals& g) {
  PipelineConfig cfg = g.config_path.empty() ? PipelineConfig{} : load_config(g.config_path);
  if (g.seed) {
    cfg.seed = *g.seed;
    cfg.scenario.seed = *g.seed;
    cfg.balance.seed = *g.seed;
    cfg.classifier_params.svm.seed = *g.seed;
    for (auto& s : cfg.matrix) s.seed = *g.seed;
  }
  return cfg;
}

fs::path out_path(const Globals& g, const std::string& name) {
  fs::create_directories(g.out_dir);
  return fs::path(g.out_dir) / name;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw DataError("cannot write " + p.string());
  return out;
}

std::ifstream open_in(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw DataError("cannot read " + p);
  return in;
}

std::string slurp(const std::string& p) {
  auto in = open_in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Intermediate record files always use the default column layout.
std::vector<AisRecord> read_records(const std::string& path) {
  auto in = open_in(path);
  ParseResult r = parse_csv(in, ColumnMapping{});
  if (!r.rejects.empty()) spdlog::warn("{}: {} rows rejected", path, r.rejects.size());
  return std::move(r.records);
}

void write_records(const fs::path& p, const std::vector<AisRecord>& records) {
  auto out = open_out(p);
  write_csv(out, records, ColumnMapping{});
}

LabeledDataset read_features(const std::string& path) {
  auto in = open_in(path);
  return read_dataset_csv(in);
}

std::string metrics_json(const ConfusionMatrix& cm, const Metrics& m) {
  nlohmann::json j = {{"confusion", {{"tp", cm.tp}, {"fn", cm.fn}, {"fp", cm.fp}, {"tn", cm.tn}}},
                      {"accuracy", m.accuracy},
                      {"precision", m.precision},
                      {"recall", m.recall},
                      {"f_measure", m.f_measure}};
  return j.dump(2) + "\n";
}

int exit_for_kind(const std::string& kind) {
  if (kind == "data") return kExitData;
  if (kind == "numerical") return kExitNumerical;
  if (kind == "config") return kExitUsage;
  return kExitData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fishing / non-fishing classification of AIS trajectories"};
  app.require_subcommand(1);
  // Global options may also follow the subcommand.
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Seed for every random stream");
  app.add_option("--out", g.out_dir, "Output directory")->capture_default_str();
  app.add_option("--workers", g.workers, "Concurrent experiments for matrix")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  spdlog::set_level(spdlog::level::warn);
  app.add_flag_callback("-v,--verbose", [] { spdlog::set_level(spdlog::level::debug); }, "Debug logging");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Parse an AIS CSV export into records.csv and rejects.csv");
  std::string ingest_in;
  ingest->add_option("input", ingest_in, "AIS CSV file")->required()->check(CLI::ExistingFile);
  ingest->callback([&] {
    const PipelineConfig cfg = load(g);
    const ParseResult r = parse_csv_file(ingest_in, cfg.columns);
    write_records(out_path(g, "records.csv"), r.records);
    auto rej = open_out(out_path(g, "rejects.csv"));
    write_reject_log(rej, r.rejects);
    std::cout << r.records.size() << " records, " << r.rejects.size() << " rejected of "
              << r.data_rows << " rows\n";
  });

  // clean
  auto* cleancmd = app.add_subcommand("clean", "Build and clean tracks from records.csv into tracks.jsonl");
  std::string clean_in;
  bool minimum = false;
  cleancmd->add_option("input", clean_in, "records.csv")->required()->check(CLI::ExistingFile);
  cleancmd->add_flag("--minimum", minimum, "Minimum cleaning only");
  cleancmd->callback([&] {
    PipelineConfig cfg = load(g);
    if (minimum) cfg.cleaning.full = false;
    const CleaningResult r = clean(read_records(clean_in), cfg.cleaning);
    auto out = open_out(out_path(g, "tracks.jsonl"));
    write_tracks_jsonl(out, r.tracks);
    const auto& s = r.stats;
    nlohmann::json stats = {{"input_records", s.input_records},
                            {"candidates", s.candidates},
                            {"noise_points_removed", s.noise_points_removed},
                            {"dropped_short_after_noise", s.dropped_short_after_noise},
                            {"dropped_unlabeled", s.dropped_unlabeled},
                            {"dropped_not_a_ship", s.dropped_not_a_ship},
                            {"dropped_motionless", s.dropped_motionless},
                            {"dropped_inconsistent", s.dropped_inconsistent},
                            {"output_tracks", s.output_tracks},
                            {"output_points", s.output_points}};
    open_out(out_path(g, "cleaning_stats.json")) << stats.dump(2) << '\n';
    std::cout << s.output_tracks << " tracks from " << s.candidates << " candidates\n";
  });

  // filter
  auto* filtercmd = app.add_subcommand("filter", "IMM-smooth tracks.jsonl into filtered.jsonl");
  std::string filter_in;
  bool raw = false;
  filtercmd->add_option("input", filter_in, "tracks.jsonl")->required()->check(CLI::ExistingFile);
  filtercmd->add_flag("--none", raw, "Skip filtering; finite differences of raw positions");
  filtercmd->callback([&] {
    const PipelineConfig cfg = load(g);
    auto in = open_in(filter_in);
    std::vector<KinematicTrack> out_tracks;
    std::size_t failed = 0;
    for (const auto& t : read_tracks_jsonl(in)) {
      if (raw) {
        out_tracks.push_back(raw_kinematics(t));
        continue;
      }
      try {
        out_tracks.push_back(smooth_track(t, cfg.imm));
      } catch (const NumericalError& e) {
        spdlog::warn("excluding track {}: {}", t.mmsi, e.what());
        ++failed;
      }
    }
    auto out = open_out(out_path(g, "filtered.jsonl"));
    write_kinematic_jsonl(out, out_tracks);
    std::cout << out_tracks.size() << " tracks filtered, " << failed << " excluded\n";
  });

  // segment
  auto* segcmd = app.add_subcommand("segment", "Cut filtered.jsonl into segments.jsonl");
  std::string seg_in;
  bool full_track = false;
  std::optional<std::size_t> seg_len;
  segcmd->add_option("input", seg_in, "filtered.jsonl")->required()->check(CLI::ExistingFile);
  segcmd->add_flag("--full-track", full_track, "One variable-length segment per track");
  segcmd->add_option("--length", seg_len, "Points per segment")->check(CLI::Range(2, 1 << 20));
  segcmd->callback([&] {
    const PipelineConfig cfg = load(g);
    auto in = open_in(seg_in);
    std::vector<Segment> segs;
    for (const auto& t : read_kinematic_jsonl(in)) {
      if (full_track) {
        segs.push_back(whole_track_segment(t));
      } else {
        for (auto& s : segment_track(t, seg_len.value_or(cfg.segment_length))) segs.push_back(std::move(s));
      }
    }
    auto out = open_out(out_path(g, "segments.jsonl"));
    write_segments_jsonl(out, segs);
    std::cout << segs.size() << " segments\n";
  });

  // features
  auto* featcmd = app.add_subcommand("features", "Extract segment features into features.csv");
  std::string feat_in;
  std::string feat_mode;
  featcmd->add_option("input", feat_in, "segments.jsonl")->required()->check(CLI::ExistingFile);
  featcmd->add_option("--mode", feat_mode, "full_44, kinematic_41 or reduced_13");
  featcmd->callback([&] {
    const PipelineConfig cfg = load(g);
    const FeatureMode mode = feat_mode.empty() ? cfg.feature_mode : parse_feature_mode(feat_mode);
    auto in = open_in(feat_in);
    std::vector<FeatureVector> vectors;
    for (const auto& s : read_segments_jsonl(in)) vectors.push_back(extract(s, mode, cfg.features));
    const LabeledDataset ds = make_dataset(vectors);
    auto out = open_out(out_path(g, "features.csv"));
    write_dataset_csv(out, ds);
    std::cout << ds.size() << " rows, " << ds.n_features() << " features\n";
  });

  // balance
  auto* balcmd = app.add_subcommand("balance", "Rebalance a training feature file into balanced.csv");
  std::string bal_in;
  std::string bal_method;
  balcmd->add_option("input", bal_in, "features.csv (training part only)")->required()->check(CLI::ExistingFile);
  balcmd->add_option("--method", bal_method, "none, undersample or smote");
  balcmd->callback([&] {
    PipelineConfig cfg = load(g);
    if (!bal_method.empty()) cfg.balance.method = parse_balance_method(bal_method);
    const LabeledDataset ds = read_features(bal_in);
    const LabeledDataset out_ds = rebalance(ds, cfg.balance);
    auto out = open_out(out_path(g, "balanced.csv"));
    write_dataset_csv(out, out_ds, true);
    std::cout << out_ds.size() << " rows (" << out_ds.count(Label::fishing) << " fishing)\n";
  });

  // train
  auto* traincmd = app.add_subcommand("train", "Train a classifier on a feature file into model.json");
  std::string train_in;
  std::string train_kind;
  traincmd->add_option("input", train_in, "features.csv")->required()->check(CLI::ExistingFile);
  traincmd->add_option("--classifier", train_kind, "tree or svm");
  traincmd->callback([&] {
    const PipelineConfig cfg = load(g);
    const ClassifierKind kind = train_kind.empty() ? cfg.classifier : parse_classifier_kind(train_kind);
    const Model m = Model::train(kind, read_features(train_in), cfg.classifier_params);
    open_out(out_path(g, "model.json")) << m.to_json() << '\n';
    std::cout << "trained " << to_string(kind) << '\n';
  });

  // eval
  auto* evalcmd = app.add_subcommand(
      "eval", "Run one experiment on records.csv, or score a model on a feature file");
  std::string eval_in;
  std::string eval_model;
  std::string eval_setting = "complete";
  std::string eval_balance;
  std::string eval_classifier;
  std::string eval_features;
  bool eval_kfold = false;
  evalcmd->add_option("input", eval_in, "records.csv, or features.csv with --model")
      ->required()
      ->check(CLI::ExistingFile);
  evalcmd->add_option("--model", eval_model, "Trained model.json")->check(CLI::ExistingFile);
  evalcmd->add_option("--setting", eval_setting,
                      "complete, no_cleaning, no_filtering or no_segmentation")
      ->capture_default_str();
  evalcmd->add_option("--balance", eval_balance, "none, undersample or smote");
  evalcmd->add_option("--classifier", eval_classifier, "tree or svm");
  evalcmd->add_option("--features", eval_features, "full_44, kinematic_41 or reduced_13");
  evalcmd->add_flag("--kfold", eval_kfold, "k-fold cross-validation instead of holdout");
  int eval_exit = 0;
  evalcmd->callback([&] {
    PipelineConfig cfg = load(g);
    if (!eval_model.empty()) {
      const Model m = Model::from_json(slurp(eval_model));
      const LabeledDataset ds = read_features(eval_in);
      const auto pred = m.predict_many(ds.rows);
      const ConfusionMatrix cm = confusion(ds.labels, pred);
      const std::string text = metrics_json(cm, metrics(cm, cfg.metrics));
      open_out(out_path(g, "scores.json")) << text;
      std::cout << text;
      return;
    }
    ExperimentSetting s = ExperimentSetting::named(eval_setting);
    s.seed = cfg.seed;
    s.balance = eval_balance.empty() ? cfg.balance.method : parse_balance_method(eval_balance);
    s.classifier = eval_classifier.empty() ? cfg.classifier : parse_classifier_kind(eval_classifier);
    s.feature_mode = eval_features.empty() ? cfg.feature_mode : parse_feature_mode(eval_features);
    s.eval = eval_kfold ? EvalMode::kfold : cfg.eval.mode;
    ExperimentData data(read_records(eval_in), cfg);
    const EvaluationReport rep = run_experiment(s, data);
    open_out(out_path(g, "report.json")) << rep.to_json();
    if (!rep.ok) {
      std::cerr << "experiment failed at " << rep.failed_stage << ": " << rep.error << '\n';
      eval_exit = exit_for_kind(rep.error_kind);
      return;
    }
    std::cout << s.id() << ": accuracy " << rep.accuracy() << ", F-measure " << rep.f_measure() << '\n';
  });

  // synth
  auto* synthcmd = app.add_subcommand("synth", "Generate a labeled synthetic scenario (records.csv, ledger.json)");
  std::optional<std::size_t> n_fishing;
  std::optional<std::size_t> n_transit;
  bool defective = false;
  synthcmd->add_option("--fishing", n_fishing, "Fishing-behavior tracks");
  synthcmd->add_option("--transit", n_transit, "Transit tracks");
  synthcmd->add_flag("--defective", defective, "Inject the standard defect mix");
  synthcmd->callback([&] {
    const PipelineConfig cfg = load(g);
    SyntheticScenario sc = defective ? defective_scenario(cfg.scenario.seed) : cfg.scenario;
    if (n_fishing) sc.n_fishing = *n_fishing;
    if (n_transit) sc.n_transit = *n_transit;
    const SyntheticData data = generate_synthetic(sc);
    write_records(out_path(g, "records.csv"), data.records);
    open_out(out_path(g, "ledger.json")) << ledger_to_json(data.ledger) << '\n';
    std::cout << data.records.size() << " records in " << data.ledger.size() << " tracks\n";
  });

  // matrix
  auto* matrixcmd = app.add_subcommand("matrix", "Run the experiment matrix");
  std::string matrix_in;
  bool complete_only = false;
  matrixcmd->add_option("input", matrix_in, "records.csv; the configured scenario when omitted")
      ->check(CLI::ExistingFile);
  matrixcmd->add_flag("--complete-only", complete_only, "Only the 12 complete-process experiments");
  matrixcmd->callback([&] {
    const PipelineConfig cfg = load(g);
    std::vector<AisRecord> records =
        matrix_in.empty() ? generate_synthetic(cfg.scenario).records : read_records(matrix_in);
    std::vector<ExperimentSetting> settings = cfg.matrix;
    if (settings.empty() || complete_only) settings = default_matrix(cfg.seed, complete_only);
    ExperimentData data(std::move(records), cfg);
    const MatrixResult res = run_matrix(settings, data, g.workers);
    fs::create_directories(g.out_dir);
    write_matrix_outputs(res, g.out_dir);
    std::size_t failed = 0;
    for (const auto& r : res.reports) failed += !r.ok;
    std::cout << res.reports.size() << " experiments, " << failed << " failed, "
              << res.front.size() << " on the Pareto front\n";
    for (const auto& s : res.summaries) {
      std::cout << "  " << s.name << ": mean accuracy " << s.mean_accuracy << ", mean F-measure "
                << s.mean_f_measure << '\n';
    }
  });

  // report
  auto* reportcmd = app.add_subcommand("report", "Summarize a matrix output directory into summary.md");
  std::string report_dir;
  reportcmd->add_option("dir", report_dir, "Directory written by matrix")->required()->check(CLI::ExistingDirectory);
  reportcmd->callback([&] {
    const auto scatter = nlohmann::json::parse(slurp((fs::path(report_dir) / "scatter.json").string()));
    std::ostringstream md;
    md << "| # | experiment | accuracy | F-measure | Pareto |\n|---|---|---|---|---|\n";
    for (const auto& row : scatter) {
      md << "| " << row.at("index").get<std::size_t>() << " | " << row.at("id").get<std::string>()
         << " | ";
      if (row.at("status") == "ok") {
        md << csv::format_double(row.at("accuracy").get<double>()) << " | "
           << csv::format_double(row.at("f_measure").get<double>()) << " | "
           << (row.at("pareto").get<bool>() ? "yes" : "") << " |\n";
      } else {
        md << "failed | " << row.at("failure").at("stage").get<std::string>() << " | |\n";
      }
    }
    const std::string text = md.str();
    open_out(fs::path(report_dir) / "summary.md") << text;
    std::cout << text;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return eval_exit;
}
