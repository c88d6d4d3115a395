#include "vpreval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vpreval/error.hpp"

namespace vpreval {

std::string to_string(CurveKind k) {
  switch (k) {
    case CurveKind::PR: return "pr";
    case CurveKind::ROC: return "roc";
    case CurveKind::RecallRate: return "recallrate";
    case CurveKind::TPDistribution: return "tpdist";
  }
  return "?";
}

namespace {

struct BestMatch {
  double score;
  bool correct;
};

// Per-query best-match classification, positives only.
std::vector<BestMatch> classify_positives(const ConfusionMatrix& c, const GroundTruth& gt) {
  if (gt.entries.size() != c.num_queries()) {
    throw EvalError("ground truth covers " + std::to_string(gt.entries.size()) + " queries, confusion matrix has " +
                    std::to_string(c.num_queries()));
  }
  std::vector<BestMatch> out;
  for (size_t q = 0; q < c.num_queries(); ++q) {
    const auto& refs = gt.entries[q];
    if (refs.empty()) continue;
    bool correct = std::binary_search(refs.begin(), refs.end(), c.best_index(q));
    out.push_back({c.best_score(q), correct});
  }
  return out;
}

std::vector<double> descending_distinct(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

CurveReport pr_curve_auc(const ConfusionMatrix& c, const GroundTruth& gt) {
  const auto matches = classify_positives(c, gt);
  if (matches.empty()) throw EvalError("PR undefined without positives");

  std::vector<double> scores;
  for (const auto& m : matches) scores.push_back(m.score);
  const auto thresholds = descending_distinct(scores);
  const int total_correct = static_cast<int>(std::count_if(matches.begin(), matches.end(), [](auto& m) { return m.correct; }));

  CurveReport r;
  r.kind = CurveKind::PR;
  for (double t : thresholds) {
    int tp = 0, fp = 0;
    for (const auto& m : matches) {
      if (m.score >= t) (m.correct ? tp : fp)++;
    }
    if (tp + fp == 0) continue;  // cannot happen at swept thresholds; kept for the contract
    const double precision = static_cast<double>(tp) / (tp + fp);
    const double recall = total_correct > 0 ? static_cast<double>(tp) / total_correct : 0.0;
    r.points.emplace_back(recall, precision);
    r.thresholds.push_back(t);
  }
  // Trapezoid over recall, first precision extended back to recall 0.
  double auc = 0.0;
  double prev_r = 0.0, prev_p = r.points.empty() ? 0.0 : r.points.front().second;
  for (const auto& [rec, prec] : r.points) {
    auc += (rec - prev_r) * 0.5 * (prec + prev_p);
    prev_r = rec;
    prev_p = prec;
  }
  r.auc = auc;
  return r;
}

double recall_rate_at_n(const ConfusionMatrix& c, const GroundTruth& gt, int n) {
  if (n < 1) throw ConfigError("RecallRate@N needs n >= 1");
  if (static_cast<size_t>(n) > c.num_references()) {
    throw ConfigError("RecallRate@N with n=" + std::to_string(n) + " exceeds map size Z=" +
                      std::to_string(c.num_references()));
  }
  if (gt.entries.size() != c.num_queries()) throw EvalError("ground truth / confusion matrix size mismatch");
  int positives = 0, hits = 0;
  std::vector<int> order(c.num_references());
  for (size_t q = 0; q < c.num_queries(); ++q) {
    const auto& refs = gt.entries[q];
    if (refs.empty()) continue;
    ++positives;
    const auto& row = c.row(q);
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + n, order.end(), [&](int a, int b) {
      if (row[a] != row[b]) return row[a] > row[b];
      return a < b;  // lowest-index ties
    });
    for (int i = 0; i < n; ++i) {
      if (std::binary_search(refs.begin(), refs.end(), order[i])) {
        ++hits;
        break;
      }
    }
  }
  if (positives == 0) throw EvalError("RecallRate undefined without positives");
  return static_cast<double>(hits) / positives;
}

CurveReport recall_rate_curve(const ConfusionMatrix& c, const GroundTruth& gt, int max_n) {
  CurveReport r;
  r.kind = CurveKind::RecallRate;
  const int limit = std::min<int>(max_n, static_cast<int>(c.num_references()));
  for (int n = 1; n <= limit; ++n) {
    r.points.emplace_back(n, recall_rate_at_n(c, gt, n));
  }
  return r;
}

CurveReport roc_curve_auc(const ConfusionMatrix& c, const GroundTruth& gt) {
  if (gt.entries.size() != c.num_queries()) throw EvalError("ground truth / confusion matrix size mismatch");
  // positive query -> TP iff best correct and score above threshold;
  // negative query -> FP iff score above threshold.
  int num_pos = 0, num_neg = 0;
  std::vector<BestMatch> pos;
  std::vector<double> neg_scores, all_scores;
  for (size_t q = 0; q < c.num_queries(); ++q) {
    all_scores.push_back(c.best_score(q));
    if (gt.entries[q].empty()) {
      ++num_neg;
      neg_scores.push_back(c.best_score(q));
    } else {
      ++num_pos;
      bool correct = std::binary_search(gt.entries[q].begin(), gt.entries[q].end(), c.best_index(q));
      pos.push_back({c.best_score(q), correct});
    }
  }
  if (num_pos == 0) throw EvalError("ROC requires positive queries");
  if (num_neg == 0) throw EvalError("ROC requires true-negative queries");

  CurveReport r;
  r.kind = CurveKind::ROC;
  r.points.emplace_back(0.0, 0.0);  // threshold above every score
  r.thresholds.push_back(std::numeric_limits<double>::infinity());
  for (double t : descending_distinct(all_scores)) {
    int tp = 0;
    for (const auto& m : pos) {
      if (m.correct && m.score >= t) ++tp;
    }
    int fp = static_cast<int>(std::count_if(neg_scores.begin(), neg_scores.end(), [&](double s) { return s >= t; }));
    r.points.emplace_back(static_cast<double>(fp) / num_neg, static_cast<double>(tp) / num_pos);
    r.thresholds.push_back(t);
  }
  // threshold below every score: every negative fires, every correct positive counts
  int correct_pos = static_cast<int>(std::count_if(pos.begin(), pos.end(), [](auto& m) { return m.correct; }));
  r.points.emplace_back(1.0, static_cast<double>(correct_pos) / num_pos);
  r.thresholds.push_back(-std::numeric_limits<double>::infinity());

  double auc = 0.0;
  for (size_t i = 1; i < r.points.size(); ++i) {
    auc += (r.points[i].first - r.points[i - 1].first) * 0.5 * (r.points[i].second + r.points[i - 1].second);
  }
  r.auc = auc;
  return r;
}

CurveReport tp_distribution(const ConfusionMatrix& c, const Dataset& d) {
  if (!d.is_trajectory) throw ConfigError("TP distribution needs trajectory data");
  if (d.ground_truth.entries.size() != c.num_queries()) throw EvalError("ground truth / confusion matrix size mismatch");

  std::vector<size_t> tp_indices;
  for (size_t q = 0; q < c.num_queries(); ++q) {
    const auto& refs = d.ground_truth.entries[q];
    if (!refs.empty() && std::binary_search(refs.begin(), refs.end(), c.best_index(q))) {
      tp_indices.push_back(q);
    }
  }

  CurveReport r;
  r.kind = CurveKind::TPDistribution;
  if (tp_indices.size() < 2) {
    r.warning_too_few_points = true;
    return r;
  }
  size_t max_gap = 0;
  std::vector<size_t> gaps;
  for (size_t i = 1; i < tp_indices.size(); ++i) {
    gaps.push_back(tp_indices[i] - tp_indices[i - 1]);
    max_gap = std::max(max_gap, gaps.back());
  }
  std::vector<size_t> counts(max_gap + 1, 0);
  for (size_t g : gaps) counts[g]++;
  for (size_t g = 1; g <= max_gap; ++g) {
    r.points.emplace_back(static_cast<double>(g) * d.frame_spacing_m, static_cast<double>(counts[g]));
  }
  return r;
}

SpeedReport retrieval_speed_model(const SpeedModel& sm) {
  if (!(sm.k > 0.0) || !(sm.v > 0.0) || sm.z < 1 || !(sm.t_e_sec > 0.0) || !(sm.t_m_sec > 0.0)) {
    throw ConfigError("speed model needs positive k, v, z, t_e, t_m");
  }
  SpeedReport r;
  r.t_r_sec = sm.t_e_sec + static_cast<double>(sm.z) * sm.t_m_sec;
  r.fps_vpr = 1.0 / r.t_r_sec;
  r.fps_req = sm.k * sm.v;
  r.v_max = r.fps_vpr / sm.k;
  r.feasible = r.fps_vpr >= r.fps_req;
  return r;
}

}  // namespace vpreval
