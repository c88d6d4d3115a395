#include "vpreval/engine.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

#include "vpreval/error.hpp"
#include "vpreval/precomputed.hpp"

namespace vpreval {

ConfusionMatrix::ConfusionMatrix(std::vector<std::vector<double>> scores) : scores_(std::move(scores)) {
  if (scores_.empty() || scores_[0].empty()) throw EvalError("confusion matrix is empty");
  const size_t z = scores_[0].size();
  best_index_.resize(scores_.size());
  best_score_.resize(scores_.size());
  for (size_t q = 0; q < scores_.size(); ++q) {
    if (scores_[q].size() != z) throw EvalError("confusion matrix ragged at row " + std::to_string(q));
    MatchResult m = match_from_row(scores_[q]);
    for (double s : scores_[q]) {
      if (!(s >= 0.0 && s <= 1.0)) throw EvalError("confusion score outside [0,1] at row " + std::to_string(q));
    }
    best_index_[q] = m.best_index;
    best_score_[q] = m.score;
  }
}

ConfusionMatrix build_confusion_matrix(const VprTechnique& technique, const Dataset& d, unsigned num_threads) {
  d.validate();
  const size_t tq = d.queries.size();
  std::vector<std::vector<double>> rows(tq);

  if (technique.is_precomputed()) {
    const auto& pre = dynamic_cast<const PrecomputedTechnique&>(technique);
    if (pre.num_queries() != tq || pre.num_references() != d.references.size()) {
      throw EvalError("precomputed matrix shape (" + std::to_string(pre.num_queries()) + ", " +
                      std::to_string(pre.num_references()) + ") does not match dataset, expected (" +
                      std::to_string(tq) + ", " + std::to_string(d.references.size()) + ")");
    }
    for (size_t q = 0; q < tq; ++q) rows[q] = pre.row_for_query(q);
    return ConfusionMatrix(std::move(rows));
  }

  const DescriptorSet f_m = technique.compute_map_features(d.references);
  if (num_threads == 0) num_threads = std::max(1u, std::thread::hardware_concurrency());

  std::atomic<size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      size_t q = next.fetch_add(1);
      if (q >= tq) return;
      try {
        rows[q] = technique.perform_vpr(technique.compute_query_desc(d.queries[q]), f_m).row;
      } catch (...) {
        std::lock_guard<std::mutex> lk(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  if (num_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < num_threads; ++t) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);
  return ConfusionMatrix(std::move(rows));
}

TimingProfile measure_timings(const VprTechnique& technique, const Dataset& d, int repetitions, size_t pair_cap) {
  d.validate();
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (auto stored = technique.stored_timings()) {
    TimingProfile t = *stored;
    t.z = d.references.size();
    return t;
  }

  using clock = std::chrono::steady_clock;
  auto seconds = [](clock::duration dt) { return std::chrono::duration<double>(dt).count(); };

  (void)technique.compute_query_desc(d.queries[0]);  // warm-up, untimed

  std::vector<double> te_runs, tm_runs;
  Descriptor probe = technique.compute_query_desc(d.queries[0]);
  const DescriptorSet f_m = technique.compute_map_features(d.references);
  const size_t z = f_m.size();
  const size_t pairs = std::min(d.queries.size() * z, pair_cap);

  for (int rep = 0; rep < repetitions; ++rep) {
    auto t0 = clock::now();
    for (const auto& q : d.queries) (void)technique.compute_query_desc(q);
    te_runs.push_back(seconds(clock::now() - t0) / d.queries.size());

    volatile double sink = 0.0;
    auto t1 = clock::now();
    for (size_t k = 0; k < pairs; ++k) {
      sink = sink + technique.score(probe, f_m[k % z]);
    }
    tm_runs.push_back(seconds(clock::now() - t1) / pairs);
  }

  auto mean = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / v.size();
  };
  auto variance = [&](const std::vector<double>& v, double m) {
    if (v.size() < 2) return 0.0;
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return s / (v.size() - 1);
  };

  TimingProfile t;
  t.t_e_sec = mean(te_runs);
  t.t_m_sec = mean(tm_runs);
  t.t_e_variance = variance(te_runs, t.t_e_sec);
  t.t_m_variance = variance(tm_runs, t.t_m_sec);
  t.z = z;
  t.descriptor_bytes = probe.byte_size();
  t.pairs_sampled = pairs;
  return t;
}

}  // namespace vpreval
