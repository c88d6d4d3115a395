#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vpreval/engine.hpp"

namespace vpreval {

enum class CurveKind { PR, ROC, RecallRate, TPDistribution };

std::string to_string(CurveKind k);

struct CurveReport {
  CurveKind kind = CurveKind::PR;
  std::vector<std::pair<double, double>> points;
  std::optional<double> auc;
  std::vector<double> thresholds;  // PR/ROC only, one per swept point
  bool warning_too_few_points = false;  // TP distribution with < 2 true positives
};

// PR curve over per-query best matches (correct iff best_index is in the
// query's ground-truth list), thresholds swept over the distinct best
// scores descending. Queries with empty ground truth are excluded.
// AUC by trapezoid over recall, with the first precision extended back to
// recall 0. Throws EvalError when no query has a non-empty list.
CurveReport pr_curve_auc(const ConfusionMatrix& c, const GroundTruth& gt);

// Fraction of positive queries with a correct reference among the top-n
// scores of their row (descending, lowest-index ties).
double recall_rate_at_n(const ConfusionMatrix& c, const GroundTruth& gt, int n);

// RR@n for n = 1..max_n as a curve.
CurveReport recall_rate_curve(const ConfusionMatrix& c, const GroundTruth& gt, int max_n);

// ROC over best scores: positive queries (non-empty ground truth) count TP
// only when their best match is correct; empty-ground-truth queries form
// the negative class. Requires at least one of each.
CurveReport roc_curve_auc(const ConfusionMatrix& c, const GroundTruth& gt);

// Histogram of physical gaps between consecutive correctly matched queries
// along the trajectory (accept-all operating point, no score threshold).
CurveReport tp_distribution(const ConfusionMatrix& c, const Dataset& d);

struct SpeedModel {
  double k = 0.5;       // frames-per-meter requirement
  double v = 1.0;       // platform speed, m/s
  size_t z = 1;         // map size
  double t_e_sec = 0.0;
  double t_m_sec = 0.0;
};

struct SpeedReport {
  double t_r_sec = 0.0;   // t_e + Z * t_m (linear search)
  double fps_vpr = 0.0;   // 1 / t_r
  double fps_req = 0.0;   // k * v
  double v_max = 0.0;     // fps_vpr / k
  bool feasible = false;  // fps_vpr >= fps_req
};

SpeedReport retrieval_speed_model(const SpeedModel& sm);

}  // namespace vpreval
