#pragma once

#include "vpreval/technique.hpp"

namespace vpreval {

/// Dense HOG over a resized square image. Defaults reproduce the
/// 31 x 31 blocks x 36 values = 34596-element layout: 512 px working size,
/// 16 px cells, 2x2-cell blocks at 1-cell stride, 9 unsigned bins.
struct HogConfig {
  int image_side = 512;
  int cell = 16;
  int block_cells = 2;   // block side, in cells
  int stride_cells = 1;  // block stride, in cells
  int bins = 9;

  int cells_per_side() const { return image_side / cell; }
  int blocks_per_side() const { return (cells_per_side() - block_cells) / stride_cells + 1; }
  size_t descriptor_length() const {
    size_t b = static_cast<size_t>(blocks_per_side());
    return b * b * block_cells * block_cells * bins;
  }
  void validate() const;
};

Descriptor hog_describe(const ImageGrid& img, const HogConfig& cfg);

class HogTechnique : public VprTechnique {
public:
  explicit HogTechnique(HogConfig cfg = {}) : cfg_(cfg) { cfg_.validate(); }

  std::string name() const override { return "hog"; }
  Descriptor compute_query_desc(const ImageGrid& q) const override { return hog_describe(q, cfg_); }
  double score(const Descriptor& a, const Descriptor& b) const override { return cosine_score(a, b); }
  const HogConfig& config() const { return cfg_; }

private:
  HogConfig cfg_;
};

}  // namespace vpreval
