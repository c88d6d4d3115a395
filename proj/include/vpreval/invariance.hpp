#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vpreval/image.hpp"
#include "vpreval/technique.hpp"

namespace vpreval {

enum class VariationMode { Lateral, Zoom, UniformIllum, DirectionalIllum };

VariationMode parse_variation_mode(const std::string& s);
std::string to_string(VariationMode m);

/// Quantified variation sweep: one keyframe, N varied views of the same
/// place and N views of a different place under the same schedule.
struct VariationSequence {
  ImageGrid keyframe;
  std::vector<ImageGrid> same_place;
  std::vector<ImageGrid> different_place;
  std::vector<double> labels;  // schedule magnitudes, one per index
};

struct VariationTrace {
  std::vector<double> same_scores;
  std::vector<double> diff_scores;
  double abc = 0.0;                  // area between the curves
  std::optional<size_t> limit_index; // first index failing point-to-curve
};

// Identity magnitude is 0 for lateral/zoom/directional-illum and 1 for
// uniform-illum (the magnitude is the gain itself). With the identity
// magnitude at index 0, same_place[0] equals the keyframe exactly.
ImageGrid apply_variation(const ImageGrid& img, VariationMode mode, double magnitude);

VariationSequence generate_variation_sequence(const ImageGrid& same_seed, const ImageGrid& different_seed,
                                              VariationMode mode, const std::vector<double>& schedule);

// Convenience schedule: n evenly spaced magnitudes from the identity value
// to max_magnitude inclusive.
std::vector<double> linear_schedule(VariationMode mode, int n, double max_magnitude);

// Sum of same[i] - diff[i] with unit index spacing; the ideal value equals
// the number of variations. May be negative.
double area_between_curves(const std::vector<double>& same, const std::vector<double>& diff);

// Point-to-curve failure rule: smallest i with same[i] <= max(diff).
std::optional<size_t> invariance_limit(const std::vector<double>& same, const std::vector<double>& diff);

VariationTrace variation_trace(const VariationSequence& seq, const VprTechnique& technique);

}  // namespace vpreval
