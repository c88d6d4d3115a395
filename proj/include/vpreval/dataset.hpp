#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "vpreval/image.hpp"

namespace vpreval {

/// Per-query lists of correct reference indices. An empty list marks a
/// true-negative query (a "new place" with no correct match). Lists are
/// kept sorted ascending without duplicates.
struct GroundTruth {
  std::vector<std::vector<int>> entries;

  size_t num_queries() const { return entries.size(); }
  // Sorts and dedupes every list, then checks indices against [0, z).
  void normalize_and_validate(int z);
  bool operator==(const GroundTruth&) const = default;
};

struct Dataset {
  std::string name;
  std::vector<ImageGrid> queries;
  std::vector<ImageGrid> references;
  GroundTruth ground_truth;
  double frame_spacing_m = 1.0;
  bool is_trajectory = true;

  int num_queries() const { return static_cast<int>(queries.size()); }
  int num_references() const { return static_cast<int>(references.size()); }
  void validate() const;
};

// Directory layout: <root>/query/<i>.<ext>, <root>/ref/<i>.<ext> with
// contiguous zero-based integer names, <root>/ground_truth.json, optional
// <root>/meta.json. See save_dataset for the writer side.
Dataset load_dataset(const std::filesystem::path& root);
void save_dataset(const Dataset& d, const std::filesystem::path& root, const std::string& ext = "png");

// Swaps queries with references and inverts the ground-truth relation:
// new_gt[r] = { q : r in old_gt[q] }.
Dataset interchange_query_reference(const Dataset& d);

// Replaces each non-empty list gt[q] by the union of [m-r, m+r] windows
// around its members, clamped to [0, Z). Requires is_trajectory.
Dataset widen_ground_truth(const Dataset& d, int radius);

// Appends the given images as queries with empty ground-truth lists and
// marks the result as non-trajectory data.
Dataset inject_true_negatives(const Dataset& d, const std::vector<ImageGrid>& negatives);

struct SynthSpec {
  int num_places = 10;
  int height = 128;
  int width = 128;
  uint32_t seed = 0;
  int viewpoint_shift_px = 0;     // lateral shift applied to query views
  double gain = 1.0;              // uniform intensity gain on query views
  double directional_gain_span = 0.0;  // horizontal gain ramp span on query views
};

// Deterministic synthetic dataset: per-place textured references (smoothed
// noise plus planted rectangles and stripes), queries are the same places
// under the spec's viewpoint/illumination transforms, identity ground truth.
// Pixels are quantized to the 8-bit grid so a save/load round trip through
// PNG is lossless. Same spec, same bytes.
Dataset generate_synthetic_dataset(const SynthSpec& spec);

// Texture for a single synthetic place; used by the invariance harness to
// make same-place vs different-place sequences.
ImageGrid synth_place_image(uint32_t seed, int place_id, int height, int width);

}  // namespace vpreval
