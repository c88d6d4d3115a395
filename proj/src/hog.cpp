#include "vpreval/hog.hpp"

#include <cmath>
#include <numbers>

#include "vpreval/error.hpp"

namespace vpreval {

void HogConfig::validate() const {
  if (image_side < 2 || cell < 1 || block_cells < 1 || stride_cells < 1 || bins < 1) {
    throw ConfigError("invalid HOG configuration");
  }
  if (image_side % cell != 0) {
    throw ConfigError("HOG image side " + std::to_string(image_side) + " not divisible by cell size " +
                      std::to_string(cell));
  }
  if (cells_per_side() < block_cells) {
    throw ConfigError("HOG block of " + std::to_string(block_cells) + " cells exceeds the " +
                      std::to_string(cells_per_side()) + "-cell grid");
  }
}

Descriptor hog_describe(const ImageGrid& img, const HogConfig& cfg) {
  cfg.validate();
  if (img.height < 2 || img.width < 2) throw ConfigError("image too small for HOG (needs at least 2x2)");

  ImageGrid gray = resize_bilinear(to_grayscale(img), cfg.image_side, cfg.image_side);
  const int side = cfg.image_side;
  const int cells = cfg.cells_per_side();
  const int bins = cfg.bins;

  // Per-cell orientation histograms. Central-difference gradients with
  // replicated borders; unsigned orientation in [0, 180) with the
  // magnitude-weighted vote split linearly between the two nearest bins.
  std::vector<double> hist(static_cast<size_t>(cells) * cells * bins, 0.0);
  const double bin_width = 180.0 / bins;
  for (int y = 0; y < side; ++y) {
    const int ym = std::max(y - 1, 0), yp = std::min(y + 1, side - 1);
    for (int x = 0; x < side; ++x) {
      const int xm = std::max(x - 1, 0), xp = std::min(x + 1, side - 1);
      const double gx = gray.at(y, xp) - gray.at(y, xm);
      const double gy = gray.at(yp, x) - gray.at(ym, x);
      const double mag = std::sqrt(gx * gx + gy * gy);
      if (mag == 0.0) continue;
      double theta = std::atan2(gy, gx) * 180.0 / std::numbers::pi;
      if (theta < 0.0) theta += 180.0;
      if (theta >= 180.0) theta -= 180.0;
      // vote against bin centers at (b + 0.5) * bin_width, wrapping
      double pos = theta / bin_width - 0.5;
      int b0 = static_cast<int>(std::floor(pos));
      double frac = pos - b0;
      int lo = (b0 % bins + bins) % bins;
      int hi = (lo + 1) % bins;
      const size_t cell_idx = (static_cast<size_t>(y / cfg.cell) * cells + (x / cfg.cell)) * bins;
      hist[cell_idx + lo] += mag * (1.0 - frac);
      hist[cell_idx + hi] += mag * frac;
    }
  }

  // Blocks of block_cells x block_cells cells at stride_cells, each
  // L2-normalized, concatenated row-major.
  const int blocks = cfg.blocks_per_side();
  Descriptor d;
  d.dims = {1, cfg.descriptor_length()};
  d.values.reserve(cfg.descriptor_length());
  std::vector<double> block(static_cast<size_t>(cfg.block_cells) * cfg.block_cells * bins);
  for (int by = 0; by < blocks; ++by) {
    for (int bx = 0; bx < blocks; ++bx) {
      size_t k = 0;
      double ssq = 0.0;
      for (int cy = 0; cy < cfg.block_cells; ++cy) {
        for (int cx = 0; cx < cfg.block_cells; ++cx) {
          const size_t cell_idx =
              (static_cast<size_t>(by * cfg.stride_cells + cy) * cells + (bx * cfg.stride_cells + cx)) * bins;
          for (int b = 0; b < bins; ++b, ++k) {
            block[k] = hist[cell_idx + b];
            ssq += block[k] * block[k];
          }
        }
      }
      const double norm = std::max(std::sqrt(ssq), 1e-12);
      for (double v : block) d.values.push_back(static_cast<float>(v / norm));
    }
  }
  return d;
}

}  // namespace vpreval
