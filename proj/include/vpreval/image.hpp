#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace vpreval {

/// Row-major intensity raster with 1 (gray) or 3 (RGB, interleaved) channels.
/// Intensities live in [0,1]; images loaded from 8-bit sources are divided
/// by 255. Transform helpers below work in the float domain and do not clip,
/// so intermediate images produced by gain transforms may exceed 1.
struct ImageGrid {
  int height = 0;
  int width = 0;
  int channels = 1;
  std::vector<float> data;  // height * width * channels

  ImageGrid() = default;
  ImageGrid(int h, int w, int c) : height(h), width(w), channels(c), data(static_cast<size_t>(h) * w * c, 0.0f) {}

  float& at(int y, int x, int c = 0) { return data[(static_cast<size_t>(y) * width + x) * channels + c]; }
  float at(int y, int x, int c = 0) const { return data[(static_cast<size_t>(y) * width + x) * channels + c]; }

  size_t pixel_count() const { return static_cast<size_t>(height) * width; }
  bool operator==(const ImageGrid&) const = default;

  // Throws ConfigError when dimensions and buffer size disagree or an
  // intensity falls outside [0,1].
  void validate() const;
};

ImageGrid to_grayscale(const ImageGrid& img);
ImageGrid resize_bilinear(const ImageGrid& img, int out_h, int out_w);
ImageGrid crop(const ImageGrid& img, int y0, int x0, int h, int w);

// Multiplies every intensity by gain. No clipping.
ImageGrid apply_gain(const ImageGrid& img, float gain);

// Horizontal linear gain ramp: column x gets gain 1 + span * (x/(W-1) - 1/2).
ImageGrid apply_gain_ramp(const ImageGrid& img, float span);

// Lateral viewpoint change: drop `shift_px` columns from the left edge and
// resize the remainder back to the original size. shift_px = 0 is identity.
ImageGrid lateral_shift(const ImageGrid& img, int shift_px);

// Zoom-in: central crop by `factor` >= 1, resized back. factor = 1 is identity.
ImageGrid zoom_center(const ImageGrid& img, double factor);

// Snaps every intensity to the 8-bit grid (k/255), making a later
// save/load round trip through PNG or PGM lossless.
ImageGrid quantize_8bit(const ImageGrid& img);

// Codecs: png, jpg, jpeg, pgm, bmp. Writing picks the format from the
// extension. Read errors name the offending file.
ImageGrid read_image(const std::filesystem::path& path);
void write_image(const ImageGrid& img, const std::filesystem::path& path);

}  // namespace vpreval
