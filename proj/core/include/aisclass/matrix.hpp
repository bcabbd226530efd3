#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "aisclass/experiment.hpp"
#include "aisclass/pareto.hpp"

namespace aisclass {

struct SettingSummary {
  std::string name;
  std::size_t experiments = 0;
  std::size_t succeeded = 0;
  double mean_accuracy = 0.0;  // over succeeded experiments
  double mean_f_measure = 0.0;
};

struct MatrixResult {
  std::vector<EvaluationReport> reports;  // in settings order
  std::vector<std::size_t> front;         // report indices on the Pareto front
  std::vector<SettingSummary> summaries;  // per setting name, first-seen order
};

/// Runs every setting, up to `workers` at a time. Failed experiments stay in
/// the result with ok == false and never stop the rest.
MatrixResult run_matrix(const std::vector<ExperimentSetting>& settings, ExperimentData& data,
                        std::size_t workers = 1);

/// Writes reports/NN-<id>.json, scatter.{csv,json}, pareto.{csv,json},
/// bars.csv, summary.csv and importance.csv under `dir`.
void write_matrix_outputs(const MatrixResult& result, const std::filesystem::path& dir);

}  // namespace aisclass
