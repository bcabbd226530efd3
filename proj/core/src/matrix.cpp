#include "aisclass/matrix.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "aisclass/csv.hpp"
#include "aisclass/errors.hpp"

namespace aisclass {
namespace {

std::string report_file_name(std::size_t i, const EvaluationReport& r) {
  char prefix[16];
  std::snprintf(prefix, sizeof prefix, "%02zu-", i);
  return prefix + r.setting.id() + ".json";
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw DataError("cannot write " + p.string());
  return out;
}

std::string num(double v) { return csv::format_double(v); }

}  // namespace

MatrixResult run_matrix(const std::vector<ExperimentSetting>& settings, ExperimentData& data,
                        std::size_t workers) {
  MatrixResult result;
  result.reports.resize(settings.size());
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, settings.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < settings.size(); i = next++) {
      result.reports[i] = run_experiment(settings[i], data);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  std::vector<ObjectivePoint> points;
  std::vector<std::size_t> ok_index;
  for (std::size_t i = 0; i < result.reports.size(); ++i) {
    const auto& r = result.reports[i];
    if (!r.ok) continue;
    points.push_back({r.accuracy(), r.f_measure()});
    ok_index.push_back(i);
  }
  for (std::size_t j : pareto_front_indices(points)) result.front.push_back(ok_index[j]);

  for (const auto& r : result.reports) {
    auto it = std::find_if(result.summaries.begin(), result.summaries.end(),
                           [&](const SettingSummary& s) { return s.name == r.setting.name; });
    if (it == result.summaries.end()) {
      result.summaries.push_back({r.setting.name});
      it = std::prev(result.summaries.end());
    }
    ++it->experiments;
    if (r.ok) {
      ++it->succeeded;
      it->mean_accuracy += r.accuracy();
      it->mean_f_measure += r.f_measure();
    }
  }
  for (auto& s : result.summaries) {
    if (s.succeeded == 0) continue;
    s.mean_accuracy /= static_cast<double>(s.succeeded);
    s.mean_f_measure /= static_cast<double>(s.succeeded);
  }
  return result;
}

void write_matrix_outputs(const MatrixResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "reports");
  const auto& reports = result.reports;
  std::vector<char> on_front(reports.size(), 0);
  for (std::size_t i : result.front) on_front[i] = 1;

  nlohmann::json scatter = nlohmann::json::array();
  {
    auto out = open_out(dir / "scatter.csv");
    csv::write_row(out, {"index", "id", "setting", "balance", "classifier", "feature_mode", "status",
                         "accuracy", "f_measure", "pareto"});
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      auto rep_out = open_out(dir / "reports" / report_file_name(i, r));
      rep_out << r.to_json();

      const std::string acc = r.ok ? num(r.accuracy()) : "";
      const std::string f = r.ok ? num(r.f_measure()) : "";
      csv::write_row(out, {std::to_string(i), r.setting.id(), r.setting.name,
                           std::string(to_string(r.setting.balance)),
                           std::string(to_string(r.setting.classifier)),
                           std::string(to_string(r.setting.feature_mode)), r.ok ? "ok" : "failed",
                           acc, f, on_front[i] ? "1" : "0"});
      nlohmann::json j = {{"index", i},
                          {"id", r.setting.id()},
                          {"setting", r.setting.name},
                          {"balance", to_string(r.setting.balance)},
                          {"classifier", to_string(r.setting.classifier)},
                          {"feature_mode", to_string(r.setting.feature_mode)},
                          {"status", r.ok ? "ok" : "failed"},
                          {"pareto", on_front[i] != 0}};
      if (r.ok) {
        j["accuracy"] = r.accuracy();
        j["f_measure"] = r.f_measure();
      } else {
        j["failure"] = {{"stage", r.failed_stage}, {"message", r.error}};
      }
      scatter.push_back(j);
    }
  }
  open_out(dir / "scatter.json") << scatter.dump(2) << '\n';

  {
    auto out = open_out(dir / "pareto.csv");
    csv::write_row(out, {"index", "id", "accuracy", "f_measure"});
    nlohmann::json front = nlohmann::json::array();
    for (std::size_t i : result.front) {
      const auto& r = reports[i];
      csv::write_row(out, {std::to_string(i), r.setting.id(), num(r.accuracy()), num(r.f_measure())});
      front.push_back({{"index", i},
                       {"id", r.setting.id()},
                       {"accuracy", r.accuracy()},
                       {"f_measure", r.f_measure()}});
    }
    open_out(dir / "pareto.json") << front.dump(2) << '\n';
  }

  {
    // One bar group per (setting, feature mode), one bar per balance x classifier.
    auto out = open_out(dir / "bars.csv");
    csv::write_row(out, {"group", "balance", "classifier", "accuracy", "f_measure"});
    for (const auto& r : reports) {
      if (!r.ok) continue;
      csv::write_row(out, {r.setting.name + "/" + std::string(to_string(r.setting.feature_mode)),
                           std::string(to_string(r.setting.balance)),
                           std::string(to_string(r.setting.classifier)), num(r.accuracy()),
                           num(r.f_measure())});
    }
  }

  {
    auto out = open_out(dir / "summary.csv");
    csv::write_row(out, {"setting", "experiments", "succeeded", "mean_accuracy", "mean_f_measure"});
    for (const auto& s : result.summaries) {
      csv::write_row(out, {s.name, std::to_string(s.experiments), std::to_string(s.succeeded),
                           num(s.mean_accuracy), num(s.mean_f_measure)});
    }
  }

  {
    auto out = open_out(dir / "importance.csv");
    csv::write_row(out, {"id", "kind", "group", "value"});
    for (const auto& r : reports) {
      if (!r.importance_groups) continue;
      const auto& g = *r.importance_groups;
      for (const auto& [k, v] : g.by_statistic) csv::write_row(out, {r.setting.id(), "statistic", k, num(v)});
      for (const auto& [k, v] : g.by_kinematic) csv::write_row(out, {r.setting.id(), "kinematic", k, num(v)});
      for (const auto& [k, v] : g.extras) csv::write_row(out, {r.setting.id(), "extra", k, num(v)});
    }
  }
}

}  // namespace aisclass
