#pragma once

#include "vpreval/technique.hpp"

namespace vpreval {

/// Patch-normalized downsampling baseline: grayscale, resize to a small
/// square, zero-mean unit-std normalization per patch, flatten.
struct PatchNormConfig {
  int down_side = 64;
  int patch = 8;
  double epsilon = 1e-8;  // std-dev floor

  void validate() const;
};

Descriptor patchnorm_describe(const ImageGrid& img, const PatchNormConfig& cfg);

class PatchNormTechnique : public VprTechnique {
public:
  explicit PatchNormTechnique(PatchNormConfig cfg = {}) : cfg_(cfg) { cfg_.validate(); }

  std::string name() const override { return "patchnorm"; }
  Descriptor compute_query_desc(const ImageGrid& q) const override { return patchnorm_describe(q, cfg_); }
  double score(const Descriptor& a, const Descriptor& b) const override { return cosine_score(a, b); }
  const PatchNormConfig& config() const { return cfg_; }

private:
  PatchNormConfig cfg_;
};

}  // namespace vpreval
