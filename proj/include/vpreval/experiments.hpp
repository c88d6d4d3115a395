#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vpreval/invariance.hpp"
#include "vpreval/metrics.hpp"

namespace vpreval {

// Technique spec strings: "hog", "patchnorm", or "precomputed:<bundle path>".
std::unique_ptr<VprTechnique> make_technique(const std::string& spec);

struct RunConfig {
  std::vector<std::filesystem::path> dataset_paths;
  std::vector<std::string> technique_specs;
  std::vector<std::string> metrics;  // subset of {aucpr, rr, roc, tpdist, speed}
  std::filesystem::path out_dir;
  int rr_max = 20;
  int timing_repetitions = 1;
  double speed_k = 0.5;  // frames per meter
  double speed_v = 1.0;  // platform speed, m/s
  uint32_t seed = 0;

  void validate() const;
};

/// One dataset x technique cell of an evaluation run. A metric is either
/// present, or listed in `skips` with a reason; a whole-cell failure is
/// recorded in `failure` without aborting sibling cells.
struct MetricCell {
  std::string dataset;
  std::string technique;
  std::optional<double> auc_pr;
  std::optional<double> rr_at_1;
  std::optional<double> auc_roc;
  std::optional<CurveReport> pr_curve;
  std::optional<CurveReport> rr_curve;
  std::optional<CurveReport> roc_curve;
  std::optional<CurveReport> tp_dist;
  std::optional<TimingProfile> timings;
  std::optional<SpeedReport> speed;
  std::map<std::string, std::string> skips;
  std::optional<std::string> failure;
  std::vector<std::vector<double>> confusion;  // exported as scores.csv
};

struct EvaluationReport {
  std::vector<MetricCell> cells;
  std::vector<std::string> requested_metrics;
  uint32_t seed = 0;
  std::string timing_note = "timings are wall-clock, serial, one untimed warm-up image";
};

EvaluationReport run_evaluation(const RunConfig& cfg);

// One grid point of the descriptor-size sweep (cell size for hog,
// downsampled side for patchnorm; block stays 2x2 cells throughout).
struct SweepRow {
  int param = 0;
  bool failed = false;
  std::string error;
  double auc_pr = 0.0;
  size_t descriptor_length = 0;
  double descriptor_kb = 0.0;
  double t_m_sec = 0.0;
};

std::vector<SweepRow> descriptor_size_sweep(const Dataset& d, const std::string& family, const std::vector<int>& grid);

struct GtStudyRow {
  std::string technique;
  std::string variant;  // "original", "interchanged", "widened(r)"
  std::optional<double> auc_pr;
  std::optional<double> rr_at_1;
  std::string skip;  // non-empty when the row was skipped
};

// AUC-PR / RR@1 under ground-truth edits. Widening reuses the original
// confusion matrix (only labels change); interchange recomputes it.
std::vector<GtStudyRow> gt_manipulation_report(const Dataset& d, const std::vector<std::string>& technique_specs,
                                               const std::vector<int>& radii, bool include_interchange);

// Writes report.json plus per-curve CSV and SVG files and per-cell
// precomputed bundles (confusion_<technique>_<dataset>/). Identical report
// content produces byte-identical files.
void emit_outputs(const EvaluationReport& report, const std::filesystem::path& out_dir);

// CSV (index,label,same_score,diff_score) + JSON {abc, limit_index} + SVG.
void emit_trace(const VariationTrace& trace, const std::vector<double>& labels, const std::string& stem,
                const std::filesystem::path& out_dir);

std::string curve_to_csv(const CurveReport& curve);
CurveReport curve_from_csv(CurveKind kind, const std::string& csv);

}  // namespace vpreval
