#pragma once

#include "vpreval/dataset.hpp"
#include "vpreval/technique.hpp"

namespace vpreval {

/// Full query-by-reference score matrix with per-query best caches.
class ConfusionMatrix {
public:
  explicit ConfusionMatrix(std::vector<std::vector<double>> scores);

  size_t num_queries() const { return scores_.size(); }
  size_t num_references() const { return scores_.empty() ? 0 : scores_[0].size(); }
  const std::vector<double>& row(size_t q) const { return scores_[q]; }
  const std::vector<std::vector<double>>& scores() const { return scores_; }

  int best_index(size_t q) const { return best_index_[q]; }
  double best_score(size_t q) const { return best_score_[q]; }

private:
  std::vector<std::vector<double>> scores_;
  std::vector<int> best_index_;
  std::vector<double> best_score_;
};

// Assembles C over the dataset. Map features are computed once; rows may be
// filled in parallel (the result is identical either way).
ConfusionMatrix build_confusion_matrix(const VprTechnique& technique, const Dataset& d, unsigned num_threads = 0);

// Wall-clock t_e over all queries (serial, one untimed warm-up image) and
// t_m over up to `pair_cap` descriptor pairs, averaged over `repetitions`.
// Precomputed techniques report their stored profile verbatim.
TimingProfile measure_timings(const VprTechnique& technique, const Dataset& d, int repetitions = 1,
                              size_t pair_cap = 100000);

}  // namespace vpreval
