#pragma once

#include <filesystem>

#include "vpreval/technique.hpp"

namespace vpreval {

/// Adapter for techniques whose descriptors were computed outside this
/// framework: replays a stored score matrix and reports stored timings.
class PrecomputedTechnique : public VprTechnique {
public:
  PrecomputedTechnique(std::string name, std::vector<std::vector<double>> scores, TimingProfile timings);

  std::string name() const override { return name_; }
  bool is_precomputed() const override { return true; }
  std::optional<TimingProfile> stored_timings() const override { return timings_; }

  // Pixel-level calls are meaningless for a replayed technique.
  Descriptor compute_query_desc(const ImageGrid&) const override;
  double score(const Descriptor&, const Descriptor&) const override;

  size_t num_queries() const { return scores_.size(); }
  size_t num_references() const { return scores_.empty() ? 0 : scores_[0].size(); }
  const std::vector<double>& row_for_query(size_t q) const;

private:
  std::string name_;
  std::vector<std::vector<double>> scores_;
  TimingProfile timings_;
};

// Reads a bundle directory or results.json path:
//   results.json = {"name", "t_e_sec", "t_m_sec", "descriptor_bytes", "scores_csv"}
//   scores_csv   = T_Q rows of Z comma-separated values in [0,1]
std::unique_ptr<PrecomputedTechnique> load_precomputed_results(const std::filesystem::path& path);

// Writer side of the same bundle format (closes the export round trip).
void save_precomputed_results(const std::filesystem::path& dir, const std::string& name,
                              const std::vector<std::vector<double>>& scores, const TimingProfile& timings);

// Bare score matrix CSV helpers (also used for confusion-matrix export).
std::vector<std::vector<double>> read_scores_csv(const std::filesystem::path& path);
void write_scores_csv(const std::filesystem::path& path, const std::vector<std::vector<double>>& scores);

}  // namespace vpreval
