#include "vpreval/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include <json.hpp>

#include "vpreval/error.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace vpreval {

void GroundTruth::normalize_and_validate(int z) {
  for (size_t q = 0; q < entries.size(); ++q) {
    auto& lst = entries[q];
    std::sort(lst.begin(), lst.end());
    lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
    for (int r : lst) {
      if (r < 0 || r >= z) {
        throw ConfigError("ground-truth reference index " + std::to_string(r) + " out of range for query " +
                          std::to_string(q) + " (Z=" + std::to_string(z) + ")");
      }
    }
  }
}

void Dataset::validate() const {
  if (queries.empty()) throw ConfigError("dataset '" + name + "' has no queries");
  if (references.empty()) throw ConfigError("dataset '" + name + "' has no references");
  if (ground_truth.entries.size() != queries.size()) {
    throw ConfigError("dataset '" + name + "': ground truth covers " + std::to_string(ground_truth.entries.size()) +
                      " queries, expected " + std::to_string(queries.size()));
  }
  GroundTruth copy = ground_truth;
  copy.normalize_and_validate(num_references());
  if (copy != ground_truth) throw ConfigError("dataset '" + name + "': ground-truth lists not sorted/deduped");
}

namespace {

const std::set<std::string> kImageExts = {".png", ".jpg", ".jpeg", ".pgm", ".bmp"};

// Collects <int>.<ext> files from `dir`, enforcing contiguous names 0..n-1.
std::vector<ImageGrid> load_numbered_images(const fs::path& dir, const std::string& role) {
  if (!fs::is_directory(dir)) throw ConfigError("missing folder: " + dir.string());
  std::map<int, fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::string ext = e.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (!kImageExts.count(ext)) continue;
    const std::string stem = e.path().stem().string();
    if (stem.empty() || !std::all_of(stem.begin(), stem.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw ConfigError("non-integer image name: " + e.path().string());
    }
    files[std::stoi(stem)] = e.path();
  }
  if (files.empty()) throw ConfigError("no images in folder: " + dir.string());
  std::vector<ImageGrid> out;
  out.reserve(files.size());
  int expect = 0;
  for (const auto& [idx, path] : files) {
    if (idx != expect) throw ConfigError("missing " + role + " index " + std::to_string(expect));
    out.push_back(read_image(path));
    ++expect;
  }
  return out;
}

json read_json_file(const fs::path& p) {
  std::ifstream f(p);
  if (!f) throw ConfigError("cannot open " + p.string());
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw ConfigError("malformed JSON in " + p.string() + ": " + e.what());
  }
  return j;
}

}  // namespace

Dataset load_dataset(const fs::path& root) {
  if (!fs::is_directory(root)) throw ConfigError("missing folder: " + root.string());
  Dataset d;
  d.name = root.filename().string();
  d.queries = load_numbered_images(root / "query", "query");
  d.references = load_numbered_images(root / "ref", "reference");

  const fs::path gt_path = root / "ground_truth.json";
  if (!fs::exists(gt_path)) throw ConfigError("missing file: " + gt_path.string());
  json j = read_json_file(gt_path);
  d.ground_truth.entries.assign(d.queries.size(), {});
  std::vector<bool> seen(d.queries.size(), false);
  for (const auto& entry : j.at("queries")) {
    int q = entry.at("q").get<int>();
    if (q < 0 || q >= d.num_queries()) {
      throw ConfigError("ground-truth query index " + std::to_string(q) + " out of range (T_Q=" +
                        std::to_string(d.num_queries()) + ")");
    }
    if (seen[q]) throw ConfigError("duplicate ground-truth entry for query " + std::to_string(q));
    seen[q] = true;
    d.ground_truth.entries[q] = entry.at("refs").get<std::vector<int>>();
  }
  d.ground_truth.normalize_and_validate(d.num_references());

  const fs::path meta_path = root / "meta.json";
  if (fs::exists(meta_path)) {
    json m = read_json_file(meta_path);
    d.frame_spacing_m = m.value("frame_spacing_m", 1.0);
    d.is_trajectory = m.value("is_trajectory", true);
  }
  d.validate();
  return d;
}

void save_dataset(const Dataset& d, const fs::path& root, const std::string& ext) {
  fs::create_directories(root / "query");
  fs::create_directories(root / "ref");
  for (int i = 0; i < d.num_queries(); ++i) {
    write_image(d.queries[i], root / "query" / (std::to_string(i) + "." + ext));
  }
  for (int i = 0; i < d.num_references(); ++i) {
    write_image(d.references[i], root / "ref" / (std::to_string(i) + "." + ext));
  }
  json gt;
  gt["queries"] = json::array();
  for (size_t q = 0; q < d.ground_truth.entries.size(); ++q) {
    gt["queries"].push_back({{"q", q}, {"refs", d.ground_truth.entries[q]}});
  }
  std::ofstream(root / "ground_truth.json") << gt.dump(2) << "\n";
  json meta = {{"frame_spacing_m", d.frame_spacing_m}, {"is_trajectory", d.is_trajectory}};
  std::ofstream(root / "meta.json") << meta.dump(2) << "\n";
}

Dataset interchange_query_reference(const Dataset& d) {
  d.validate();
  Dataset out;
  out.name = d.name + "-interchanged";
  out.queries = d.references;
  out.references = d.queries;
  out.frame_spacing_m = d.frame_spacing_m;
  out.is_trajectory = d.is_trajectory;
  out.ground_truth.entries.assign(d.references.size(), {});
  for (size_t q = 0; q < d.ground_truth.entries.size(); ++q) {
    for (int r : d.ground_truth.entries[q]) {
      out.ground_truth.entries[r].push_back(static_cast<int>(q));
    }
  }
  out.ground_truth.normalize_and_validate(out.num_references());
  return out;
}

Dataset widen_ground_truth(const Dataset& d, int radius) {
  if (!d.is_trajectory) {
    throw ConfigError("ground-truth widening needs trajectory data (frame adjacency is meaningless here)");
  }
  if (radius < 0) throw ConfigError("widening radius must be >= 0");
  Dataset out = d;
  out.name = d.name + "-widened" + std::to_string(radius);
  const int z = d.num_references();
  for (auto& lst : out.ground_truth.entries) {
    if (lst.empty()) continue;  // true-negative queries stay true-negative
    std::set<int> widened;
    for (int m : lst) {
      for (int r = std::max(0, m - radius); r <= std::min(z - 1, m + radius); ++r) widened.insert(r);
    }
    lst.assign(widened.begin(), widened.end());
  }
  return out;
}

Dataset inject_true_negatives(const Dataset& d, const std::vector<ImageGrid>& negatives) {
  if (negatives.empty()) throw ConfigError("no negatives supplied");
  Dataset out = d;
  out.name = d.name + "-with-negatives";
  for (const auto& img : negatives) {
    out.queries.push_back(img);
    out.ground_truth.entries.push_back({});
  }
  out.is_trajectory = false;
  return out;
}

namespace {

// mt19937 output mapped to [0,1) without std::uniform_real_distribution,
// whose rounding is implementation-defined. Keeps pixel data bit-identical
// across standard libraries.
float unit_float(std::mt19937& rng) { return static_cast<float>(rng() >> 8) * (1.0f / 16777216.0f); }

int uniform_int(std::mt19937& rng, int lo, int hi) {  // inclusive bounds
  return lo + static_cast<int>(rng() % static_cast<uint32_t>(hi - lo + 1));
}

ImageGrid box_blur(const ImageGrid& img, int r) {
  ImageGrid out(img.height, img.width, 1);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double sum = 0;
      int n = 0;
      for (int dy = -r; dy <= r; ++dy) {
        int yy = std::clamp(y + dy, 0, img.height - 1);
        for (int dx = -r; dx <= r; ++dx) {
          sum += img.at(yy, std::clamp(x + dx, 0, img.width - 1));
          ++n;
        }
      }
      out.at(y, x) = static_cast<float>(sum / n);
    }
  }
  return out;
}

}  // namespace

ImageGrid synth_place_image(uint32_t seed, int place_id, int height, int width) {
  std::mt19937 rng(seed * 2654435761u + static_cast<uint32_t>(place_id) * 40503u + 17u);
  ImageGrid img(height, width, 1);
  for (float& v : img.data) v = unit_float(rng);
  img = box_blur(img, 2);

  // Planted structures make places mutually distinguishable. Intensities are
  // kept within [0.05, 0.62] so query-side gains up to 1.5 stay inside [0,1].
  for (float& v : img.data) v = 0.05f + 0.35f * v;
  const int num_rects = 4 + place_id % 3;
  for (int k = 0; k < num_rects; ++k) {
    int h = uniform_int(rng, height / 8, height / 3);
    int w = uniform_int(rng, width / 8, width / 3);
    int y0 = uniform_int(rng, 0, height - h);
    int x0 = uniform_int(rng, 0, width - w);
    float level = 0.15f + 0.47f * unit_float(rng);
    for (int y = y0; y < y0 + h; ++y)
      for (int x = x0; x < x0 + w; ++x) img.at(y, x) = level;
  }
  // One stripe pattern per place, orientation alternates.
  const int period = 4 + uniform_int(rng, 0, 5);
  const int band = uniform_int(rng, height / 6, height / 3);
  const int offset = uniform_int(rng, 0, height - band);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      bool in_band = (place_id % 2 == 0) ? (y >= offset && y < offset + band) : (x >= offset && x < offset + band);
      if (in_band && (((place_id % 2 == 0 ? x : y) / period) % 2 == 0)) {
        img.at(y, x) = std::min(0.62f, img.at(y, x) + 0.25f);
      }
    }
  }
  return img;
}

Dataset generate_synthetic_dataset(const SynthSpec& spec) {
  if (spec.num_places < 2) throw ConfigError("synthetic dataset needs num_places >= 2");
  if (spec.height < 8 || spec.width < 8) throw ConfigError("synthetic image size must be at least 8x8");
  if (spec.viewpoint_shift_px < 0 || spec.viewpoint_shift_px >= spec.width) {
    throw ConfigError("viewpoint_shift_px must be in [0, width)");
  }
  if (!(spec.gain > 0.0)) throw ConfigError("gain must be positive");
  if (spec.directional_gain_span < 0.0) throw ConfigError("directional_gain_span must be >= 0");

  Dataset d;
  d.name = "synth-s" + std::to_string(spec.seed) + "-p" + std::to_string(spec.num_places);
  d.frame_spacing_m = 1.0;
  d.is_trajectory = true;
  for (int p = 0; p < spec.num_places; ++p) {
    ImageGrid ref = synth_place_image(spec.seed, p, spec.height, spec.width);
    ImageGrid query = ref;
    if (spec.viewpoint_shift_px > 0) query = lateral_shift(query, spec.viewpoint_shift_px);
    if (spec.gain != 1.0) query = apply_gain(query, static_cast<float>(spec.gain));
    if (spec.directional_gain_span > 0.0) query = apply_gain_ramp(query, static_cast<float>(spec.directional_gain_span));
    d.references.push_back(quantize_8bit(ref));
    d.queries.push_back(quantize_8bit(query));
    d.ground_truth.entries.push_back({p});
  }
  return d;
}

}  // namespace vpreval
