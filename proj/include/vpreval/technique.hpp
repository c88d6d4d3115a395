#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vpreval/image.hpp"

namespace vpreval {

enum class ElementKind { Float32, Float64 };

/// A feature vector (or tensor) with byte-size accounting.
struct Descriptor {
  std::vector<float> values;
  std::vector<size_t> dims;
  ElementKind element_kind = ElementKind::Float32;

  size_t element_count() const {
    size_t n = 1;
    for (size_t d : dims) n *= d;
    return n;
  }
  size_t byte_size() const { return element_count() * (element_kind == ElementKind::Float32 ? 4 : 8); }
  void validate() const;  // dims product vs. buffer length, all values finite
};

using DescriptorSet = std::vector<Descriptor>;

struct MatchResult {
  int best_index = -1;       // P
  double score = 0.0;        // S, in [0,1]
  std::vector<double> row;   // the query's row of the confusion matrix
};

// Similarity scores, both in [0,1]. cosine clamps negatives to 0; a vector
// with L2 norm below 1e-12 scores 0 against anything. l1 is
// 1 - |a-b|_1 / max(|a|_1 + |b|_1, 1e-12).
double cosine_score(std::span<const float> a, std::span<const float> b);
double l1_score(std::span<const float> a, std::span<const float> b);

double cosine_score(const Descriptor& a, const Descriptor& b);
double l1_score(const Descriptor& a, const Descriptor& b);

struct TimingProfile {
  double t_e_sec = 0.0;       // mean feature-encoding seconds per image
  double t_m_sec = 0.0;       // mean matching seconds per descriptor pair
  double t_e_variance = 0.0;  // across repetitions
  double t_m_variance = 0.0;
  size_t z = 1;               // map size used for the measurement
  size_t descriptor_bytes = 0;
  size_t pairs_sampled = 0;   // t_m sample size (capped, see engine)
};

/// The generic VPR technique contract: describe a query, describe the map,
/// match a query descriptor against the map.
class VprTechnique {
public:
  virtual ~VprTechnique() = default;

  virtual std::string name() const = 0;
  virtual Descriptor compute_query_desc(const ImageGrid& q) const = 0;
  virtual DescriptorSet compute_map_features(std::span<const ImageGrid> map) const;

  // Pairwise similarity between two descriptors, in [0,1].
  virtual double score(const Descriptor& a, const Descriptor& b) const = 0;

  // Scores f_q against every map descriptor. Ties at the maximum break to
  // the lowest index.
  virtual MatchResult perform_vpr(const Descriptor& f_q, const DescriptorSet& f_m) const;

  // Precomputed techniques replay stored rows instead of describing pixels;
  // the evaluation engine asks before touching images.
  virtual bool is_precomputed() const { return false; }
  virtual std::optional<TimingProfile> stored_timings() const { return std::nullopt; }
};

// Builds MatchResult from a score row (argmax, lowest-index ties).
MatchResult match_from_row(std::vector<double> row);

// Factory for the built-in technique names accepted by the CLI
// ("hog", "patchnorm"). Unknown names raise ConfigError.
std::unique_ptr<VprTechnique> make_builtin_technique(const std::string& name);

}  // namespace vpreval
