#include "vpreval/image.hpp"

#include <algorithm>
#include <cmath>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "vpreval/error.hpp"

namespace vpreval {

void ImageGrid::validate() const {
  if (height < 1 || width < 1 || (channels != 1 && channels != 3)) {
    throw ConfigError("invalid image geometry " + std::to_string(height) + "x" + std::to_string(width) + "x" +
                      std::to_string(channels));
  }
  if (data.size() != static_cast<size_t>(height) * width * channels) {
    throw ConfigError("image buffer size mismatch");
  }
  for (float v : data) {
    if (!(v >= 0.0f && v <= 1.0f)) {
      throw ConfigError("image intensity out of [0,1]");
    }
  }
}

ImageGrid to_grayscale(const ImageGrid& img) {
  if (img.channels == 1) return img;
  ImageGrid out(img.height, img.width, 1);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      out.at(y, x) = 0.299f * img.at(y, x, 0) + 0.587f * img.at(y, x, 1) + 0.114f * img.at(y, x, 2);
    }
  }
  return out;
}

ImageGrid resize_bilinear(const ImageGrid& img, int out_h, int out_w) {
  if (out_h < 1 || out_w < 1) throw ConfigError("resize target must be positive");
  if (out_h == img.height && out_w == img.width) return img;
  ImageGrid out(out_h, out_w, img.channels);
  const double sy = static_cast<double>(img.height) / out_h;
  const double sx = static_cast<double>(img.width) / out_w;
  for (int y = 0; y < out_h; ++y) {
    double fy = (y + 0.5) * sy - 0.5;
    int y0 = static_cast<int>(std::floor(fy));
    double wy = fy - y0;
    int y1 = std::min(y0 + 1, img.height - 1);
    y0 = std::max(y0, 0);
    for (int x = 0; x < out_w; ++x) {
      double fx = (x + 0.5) * sx - 0.5;
      int x0 = static_cast<int>(std::floor(fx));
      double wx = fx - x0;
      int x1 = std::min(x0 + 1, img.width - 1);
      x0 = std::max(x0, 0);
      for (int c = 0; c < img.channels; ++c) {
        double top = (1.0 - wx) * img.at(y0, x0, c) + wx * img.at(y0, x1, c);
        double bot = (1.0 - wx) * img.at(y1, x0, c) + wx * img.at(y1, x1, c);
        out.at(y, x, c) = static_cast<float>((1.0 - wy) * top + wy * bot);
      }
    }
  }
  return out;
}

ImageGrid crop(const ImageGrid& img, int y0, int x0, int h, int w) {
  if (y0 < 0 || x0 < 0 || h < 1 || w < 1 || y0 + h > img.height || x0 + w > img.width) {
    throw ConfigError("crop window exceeds image bounds");
  }
  ImageGrid out(h, w, img.channels);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < img.channels; ++c) out.at(y, x, c) = img.at(y0 + y, x0 + x, c);
  return out;
}

ImageGrid apply_gain(const ImageGrid& img, float gain) {
  ImageGrid out = img;
  for (float& v : out.data) v *= gain;
  return out;
}

ImageGrid apply_gain_ramp(const ImageGrid& img, float span) {
  ImageGrid out = img;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      float g = img.width > 1 ? 1.0f + span * (static_cast<float>(x) / (img.width - 1) - 0.5f) : 1.0f;
      for (int c = 0; c < img.channels; ++c) out.at(y, x, c) = img.at(y, x, c) * g;
    }
  }
  return out;
}

ImageGrid lateral_shift(const ImageGrid& img, int shift_px) {
  if (shift_px < 0 || shift_px >= img.width) {
    throw ConfigError("lateral shift " + std::to_string(shift_px) + " px exceeds image width " +
                      std::to_string(img.width));
  }
  if (shift_px == 0) return img;
  return resize_bilinear(crop(img, 0, shift_px, img.height, img.width - shift_px), img.height, img.width);
}

ImageGrid zoom_center(const ImageGrid& img, double factor) {
  if (factor < 1.0) throw ConfigError("zoom factor must be >= 1");
  int h = std::max(1, static_cast<int>(std::lround(img.height / factor)));
  int w = std::max(1, static_cast<int>(std::lround(img.width / factor)));
  if (h == img.height && w == img.width) return img;
  return resize_bilinear(crop(img, (img.height - h) / 2, (img.width - w) / 2, h, w), img.height, img.width);
}

ImageGrid quantize_8bit(const ImageGrid& img) {
  ImageGrid out = img;
  for (float& v : out.data) {
    float q = std::round(std::clamp(v, 0.0f, 1.0f) * 255.0f);
    v = q / 255.0f;
  }
  return out;
}

ImageGrid read_image(const std::filesystem::path& path) {
  cv::Mat m = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (m.empty()) throw ConfigError("unreadable image: " + path.string());
  if (m.depth() != CV_8U) {
    m.convertTo(m, CV_8U, 255.0 / ((m.depth() == CV_16U) ? 65535.0 : 1.0));
  }
  int channels = m.channels() >= 3 ? 3 : 1;  // alpha dropped below
  ImageGrid out(m.rows, m.cols, channels);
  for (int y = 0; y < m.rows; ++y) {
    const uint8_t* row = m.ptr<uint8_t>(y);
    for (int x = 0; x < m.cols; ++x) {
      if (channels == 1) {
        out.at(y, x) = row[x * m.channels()] / 255.0f;
      } else {
        // OpenCV stores BGR
        out.at(y, x, 0) = row[x * m.channels() + 2] / 255.0f;
        out.at(y, x, 1) = row[x * m.channels() + 1] / 255.0f;
        out.at(y, x, 2) = row[x * m.channels() + 0] / 255.0f;
      }
    }
  }
  return out;
}

void write_image(const ImageGrid& img, const std::filesystem::path& path) {
  cv::Mat m(img.height, img.width, img.channels == 1 ? CV_8UC1 : CV_8UC3);
  for (int y = 0; y < img.height; ++y) {
    uint8_t* row = m.ptr<uint8_t>(y);
    for (int x = 0; x < img.width; ++x) {
      if (img.channels == 1) {
        row[x] = static_cast<uint8_t>(std::lround(std::clamp(img.at(y, x), 0.0f, 1.0f) * 255.0f));
      } else {
        row[x * 3 + 2] = static_cast<uint8_t>(std::lround(std::clamp(img.at(y, x, 0), 0.0f, 1.0f) * 255.0f));
        row[x * 3 + 1] = static_cast<uint8_t>(std::lround(std::clamp(img.at(y, x, 1), 0.0f, 1.0f) * 255.0f));
        row[x * 3 + 0] = static_cast<uint8_t>(std::lround(std::clamp(img.at(y, x, 2), 0.0f, 1.0f) * 255.0f));
      }
    }
  }
  if (!cv::imwrite(path.string(), m)) {
    throw EvalError("failed to write image: " + path.string());
  }
}

}  // namespace vpreval
