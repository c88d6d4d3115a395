#include "vpreval/patchnorm.hpp"

#include <cmath>

#include "vpreval/error.hpp"

namespace vpreval {

void PatchNormConfig::validate() const {
  if (down_side < 1 || patch < 1 || epsilon <= 0.0) throw ConfigError("invalid patch-norm configuration");
  if (down_side % patch != 0) {
    throw ConfigError("patch-norm side " + std::to_string(down_side) + " not divisible by patch size " +
                      std::to_string(patch));
  }
}

Descriptor patchnorm_describe(const ImageGrid& img, const PatchNormConfig& cfg) {
  cfg.validate();
  ImageGrid gray = resize_bilinear(to_grayscale(img), cfg.down_side, cfg.down_side);

  Descriptor d;
  d.dims = {1, static_cast<size_t>(cfg.down_side) * cfg.down_side};
  d.values.resize(d.element_count());
  const int patches = cfg.down_side / cfg.patch;
  const int n = cfg.patch * cfg.patch;
  for (int py = 0; py < patches; ++py) {
    for (int px = 0; px < patches; ++px) {
      double sum = 0.0, ssq = 0.0;
      for (int y = 0; y < cfg.patch; ++y) {
        for (int x = 0; x < cfg.patch; ++x) {
          double v = gray.at(py * cfg.patch + y, px * cfg.patch + x);
          sum += v;
          ssq += v * v;
        }
      }
      const double mean = sum / n;
      const double var = std::max(ssq / n - mean * mean, 0.0);
      const double stdev = std::max(std::sqrt(var), cfg.epsilon);
      for (int y = 0; y < cfg.patch; ++y) {
        for (int x = 0; x < cfg.patch; ++x) {
          const int gy = py * cfg.patch + y, gx = px * cfg.patch + x;
          d.values[static_cast<size_t>(gy) * cfg.down_side + gx] = static_cast<float>((gray.at(gy, gx) - mean) / stdev);
        }
      }
    }
  }
  return d;
}

}  // namespace vpreval
