#include "vpreval/invariance.hpp"

#include <algorithm>
#include <cmath>

#include "vpreval/error.hpp"

namespace vpreval {

VariationMode parse_variation_mode(const std::string& s) {
  if (s == "lateral") return VariationMode::Lateral;
  if (s == "zoom") return VariationMode::Zoom;
  if (s == "uniform-illum") return VariationMode::UniformIllum;
  if (s == "directional-illum") return VariationMode::DirectionalIllum;
  throw ConfigError("unknown variation mode: " + s);
}

std::string to_string(VariationMode m) {
  switch (m) {
    case VariationMode::Lateral: return "lateral";
    case VariationMode::Zoom: return "zoom";
    case VariationMode::UniformIllum: return "uniform-illum";
    case VariationMode::DirectionalIllum: return "directional-illum";
  }
  return "?";
}

ImageGrid apply_variation(const ImageGrid& img, VariationMode mode, double magnitude) {
  switch (mode) {
    case VariationMode::Lateral: {
      int px = static_cast<int>(std::lround(magnitude));
      if (px == 0) return img;
      return lateral_shift(img, px);
    }
    case VariationMode::Zoom:
      if (magnitude == 0.0) return img;
      return zoom_center(img, 1.0 + magnitude);
    case VariationMode::UniformIllum:
      if (magnitude == 1.0) return img;
      if (!(magnitude > 0.0)) throw ConfigError("uniform-illum gain must be positive");
      return apply_gain(img, static_cast<float>(magnitude));
    case VariationMode::DirectionalIllum:
      if (magnitude == 0.0) return img;
      return apply_gain_ramp(img, static_cast<float>(magnitude));
  }
  throw ConfigError("unknown variation mode");
}

VariationSequence generate_variation_sequence(const ImageGrid& same_seed, const ImageGrid& different_seed,
                                              VariationMode mode, const std::vector<double>& schedule) {
  if (schedule.empty()) throw ConfigError("variation schedule is empty");
  VariationSequence seq;
  seq.keyframe = same_seed;
  seq.labels = schedule;
  for (double m : schedule) {
    seq.same_place.push_back(apply_variation(same_seed, mode, m));
    seq.different_place.push_back(apply_variation(different_seed, mode, m));
  }
  return seq;
}

std::vector<double> linear_schedule(VariationMode mode, int n, double max_magnitude) {
  if (n < 1) throw ConfigError("schedule needs n >= 1");
  const double identity = mode == VariationMode::UniformIllum ? 1.0 : 0.0;
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(n == 1 ? identity : identity + (max_magnitude - identity) * i / (n - 1));
  }
  return out;
}

double area_between_curves(const std::vector<double>& same, const std::vector<double>& diff) {
  if (same.size() != diff.size()) throw EvalError("trace length mismatch");
  double abc = 0.0;
  for (size_t i = 0; i < same.size(); ++i) abc += same[i] - diff[i];
  return abc;
}

std::optional<size_t> invariance_limit(const std::vector<double>& same, const std::vector<double>& diff) {
  if (same.size() != diff.size()) throw EvalError("trace length mismatch");
  if (same.empty()) return std::nullopt;
  const double worst = *std::max_element(diff.begin(), diff.end());
  for (size_t i = 0; i < same.size(); ++i) {
    if (same[i] <= worst) return i;
  }
  return std::nullopt;
}

VariationTrace variation_trace(const VariationSequence& seq, const VprTechnique& technique) {
  if (seq.same_place.size() != seq.different_place.size()) throw ConfigError("variation sequence length mismatch");
  if (seq.same_place.empty()) throw ConfigError("variation sequence is empty");
  const Descriptor key = technique.compute_query_desc(seq.keyframe);
  VariationTrace t;
  for (size_t i = 0; i < seq.same_place.size(); ++i) {
    t.same_scores.push_back(technique.score(key, technique.compute_query_desc(seq.same_place[i])));
    t.diff_scores.push_back(technique.score(key, technique.compute_query_desc(seq.different_place[i])));
  }
  t.abc = area_between_curves(t.same_scores, t.diff_scores);
  t.limit_index = invariance_limit(t.same_scores, t.diff_scores);
  return t;
}

}  // namespace vpreval
