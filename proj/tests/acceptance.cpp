// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the binary exits nonzero if any criterion fails.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vpreval/experiments.hpp"
#include "vpreval/hog.hpp"
#include "vpreval/invariance.hpp"
#include "vpreval/metrics.hpp"
#include "vpreval/precomputed.hpp"
#include "vpreval/svg.hpp"

using namespace vpreval;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void criterion(int id, const std::string& label, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  std::printf("criterion %2d [%s]: %s%s%s\n", id, ok ? "PASS" : "FAIL", label.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

ImageGrid random_image(std::mt19937& rng, int h, int w) {
  ImageGrid img(h, w, 1);
  for (float& v : img.data) v = static_cast<float>(rng() % 256) / 255.0f;
  return img;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  // 1. HOG descriptor dimension: 34596 at defaults, closed form across cells.
  criterion(1, "HOG descriptor dimension 34596 and closed-form cell sweep", [](std::string& detail) {
    std::mt19937 rng(1);
    ImageGrid img = random_image(rng, 512, 512);
    Descriptor d = hog_describe(img, {});
    if (d.values.size() != 34596) {
      detail = "default length " + std::to_string(d.values.size());
      return false;
    }
    for (int cell : {8, 16, 32, 64, 128, 256}) {
      HogConfig cfg;
      cfg.cell = cell;
      size_t cells = 512 / cell;
      size_t expected = (cells - 1) * (cells - 1) * 4 * 9;
      ImageGrid small = random_image(rng, 64, 64);
      if (cfg.descriptor_length() != expected || hog_describe(small, cfg).values.size() != expected) {
        detail = "cell " + std::to_string(cell);
        return false;
      }
    }
    return true;
  });

  // 2 + 3. Metric-oracle equivalence and RR@1 = precision at max recall on
  // >= 1000 random instances.
  int instances = 0, roc_instances = 0;
  bool rr1_ok = true;
  criterion(2, "AUC-PR vs threshold oracle and AUC-ROC vs Mann-Whitney on 1000 random instances",
            [&](std::string& detail) {
              std::mt19937 rng(20240817);
              while (instances < 1000) {
                auto inst = oracles::random_instance(rng);
                ConfusionMatrix c(inst.scores);
                std::vector<oracles::Labeled> positives;
                std::vector<double> negatives;
                oracles::split_classes(c, inst.gt, positives, negatives);
                if (positives.empty()) continue;
                ++instances;

                CurveReport pr = pr_curve_auc(c, inst.gt);
                double expected = oracles::auc_pr(positives);
                if (std::abs(*pr.auc - expected) > 1e-9) {
                  detail = "AUC-PR mismatch at instance " + std::to_string(instances);
                  return false;
                }
                if (recall_rate_at_n(c, inst.gt, 1) != pr.points.back().second) rr1_ok = false;

                if (!negatives.empty()) {
                  ++roc_instances;
                  double mw = oracles::auc_roc_mann_whitney(positives, negatives);
                  if (std::abs(*roc_curve_auc(c, inst.gt).auc - mw) > 1e-9) {
                    detail = "AUC-ROC mismatch at instance " + std::to_string(instances);
                    return false;
                  }
                }
              }
              detail = std::to_string(instances) + " instances, " + std::to_string(roc_instances) + " with negatives";
              return true;
            });

  criterion(3, "RR@1 equals precision at maximum recall on every instance", [&](std::string& detail) {
    detail = std::to_string(instances) + " instances";
    return rr1_ok && instances >= 1000;
  });

  // 4. Living-Room structural anchor.
  criterion(4, "17 correct above 15 incorrect: AUC-PR = 1.0, RR@1 = 17/32", [](std::string& detail) {
    std::vector<std::vector<double>> rows;
    GroundTruth gt;
    for (int q = 0; q < 32; ++q) {
      bool correct = q < 17;
      double s = correct ? 0.95 - 0.001 * q : 0.40 - 0.001 * q;
      rows.push_back({s, 0.0});
      gt.entries.push_back({correct ? 0 : 1});
    }
    ConfusionMatrix c(rows);
    double auc = *pr_curve_auc(c, gt).auc;
    double rr1 = recall_rate_at_n(c, gt, 1);
    detail = "auc_pr=" + std::to_string(auc) + " rr@1=" + std::to_string(rr1);
    return std::abs(auc - 1.0) <= 1e-12 && std::abs(rr1 - 17.0 / 32.0) <= 1e-12;
  });

  // 5. Gain invariance on 100 random synthetic images.
  criterion(5, "HOG cosine self-score under gain 1.5 >= 1 - 1e-6 on 100 images", [](std::string& detail) {
    std::mt19937 rng(5);
    HogConfig cfg;  // defaults
    for (int i = 0; i < 100; ++i) {
      ImageGrid img = random_image(rng, 100, 100);
      double s = cosine_score(hog_describe(img, cfg), hog_describe(apply_gain(img, 1.5f), cfg));
      if (s < 1.0 - 1e-6) {
        detail = "score " + std::to_string(s) + " at image " + std::to_string(i);
        return false;
      }
    }
    return true;
  });

  // 6. Identity end-to-end for both built-ins.
  criterion(6, "identity synthetic dataset: RR@1 = AUC-PR = 1.0 for hog and patchnorm", [](std::string& detail) {
    SynthSpec spec;
    spec.num_places = 20;
    spec.height = spec.width = 128;
    spec.seed = 6;
    Dataset d = generate_synthetic_dataset(spec);
    for (const char* name : {"hog", "patchnorm"}) {
      auto technique = make_builtin_technique(name);
      ConfusionMatrix c = build_confusion_matrix(*technique, d);
      double rr1 = recall_rate_at_n(c, d.ground_truth, 1);
      double auc = *pr_curve_auc(c, d.ground_truth).auc;
      if (rr1 != 1.0 || std::abs(auc - 1.0) > 1e-12) {
        detail = std::string(name) + ": rr@1=" + std::to_string(rr1) + " auc=" + std::to_string(auc);
        return false;
      }
    }
    return true;
  });

  // 7. Ground-truth widening monotonicity on 100 random trajectory instances.
  criterion(7, "widening r in {0,1,2,5} never decreases RR@1 or AUC-PR", [](std::string& detail) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
      auto inst = oracles::random_instance(rng, 32, 32, 0.9);
      bool has_pos = false;
      for (auto& l : inst.gt.entries) has_pos |= !l.empty();
      if (!has_pos) {
        --trial;
        continue;
      }
      ConfusionMatrix c(inst.scores);
      Dataset d;
      d.name = "rand";
      d.is_trajectory = true;
      d.queries.resize(inst.scores.size(), ImageGrid(2, 2, 1));
      d.references.resize(inst.scores[0].size(), ImageGrid(2, 2, 1));
      d.ground_truth = inst.gt;
      double base_rr = recall_rate_at_n(c, d.ground_truth, 1);
      double base_auc = *pr_curve_auc(c, d.ground_truth).auc;
      double prev_rr = -1, prev_auc = -1;
      for (int r : {0, 1, 2, 5}) {
        GroundTruth widened = widen_ground_truth(d, r).ground_truth;
        double rr = recall_rate_at_n(c, widened, 1);
        double auc = *pr_curve_auc(c, widened).auc;
        if (r == 0 && (rr != base_rr || auc != base_auc)) {
          detail = "r=0 not identical at trial " + std::to_string(trial);
          return false;
        }
        if (rr < prev_rr || auc < prev_auc - 1e-12) {
          detail = "monotonicity violated at trial " + std::to_string(trial) + " r=" + std::to_string(r);
          return false;
        }
        prev_rr = rr;
        prev_auc = auc;
      }
    }
    return true;
  });

  // 8. Interchange symmetry with the cosine matcher on queries = references.
  criterion(8, "interchanged AUC-PR equals original within 1e-12 on a symmetric dataset", [](std::string& detail) {
    SynthSpec spec;
    spec.num_places = 8;
    spec.height = spec.width = 48;
    spec.seed = 8;
    Dataset d = generate_synthetic_dataset(spec);
    auto hog = make_builtin_technique("hog");
    double original = *pr_curve_auc(build_confusion_matrix(*hog, d), d.ground_truth).auc;
    Dataset swapped = interchange_query_reference(d);
    double interchanged = *pr_curve_auc(build_confusion_matrix(*hog, swapped), swapped.ground_truth).auc;
    detail = "original=" + std::to_string(original) + " interchanged=" + std::to_string(interchanged);
    return std::abs(original - interchanged) <= 1e-12;
  });

  // 9. Speed model arithmetic.
  criterion(9, "t_e=1, t_m=0.001, Z=1000, K=0.5 -> t_r=2, FPS_VPR=0.5, V_max=1", [](std::string& detail) {
    SpeedReport r = retrieval_speed_model({0.5, 1.0, 1000, 1.0, 0.001});
    detail = "t_r=" + std::to_string(r.t_r_sec) + " fps=" + std::to_string(r.fps_vpr) +
             " v_max=" + std::to_string(r.v_max);
    return r.t_r_sec == 2.0 && r.fps_vpr == 0.5 && r.v_max == 1.0;
  });

  // 10. Invariance mechanism.
  criterion(10, "ABC ideal/zero traces and HOG uniform-gain limit index", [](std::string& detail) {
    const int n = 19;
    std::vector<double> ones(n, 1.0), zeros(n, 0.0);
    if (area_between_curves(ones, zeros) != static_cast<double>(n)) return false;
    if (invariance_limit(ones, zeros).has_value()) return false;
    if (area_between_curves(ones, ones) != 0.0) return false;
    if (invariance_limit(ones, ones) != 0) return false;

    ImageGrid same = synth_place_image(10, 0, 64, 64);
    ImageGrid diff = synth_place_image(10, 1, 64, 64);
    auto seq = generate_variation_sequence(same, diff, VariationMode::UniformIllum,
                                           linear_schedule(VariationMode::UniformIllum, 8, 1.5));
    VariationTrace t = variation_trace(seq, HogTechnique{});
    double max_diff = *std::max_element(t.diff_scores.begin(), t.diff_scores.end());
    detail = "max diff score " + std::to_string(max_diff);
    if (max_diff >= 1.0 - 1e-6) return false;  // synthetic places must stay distinguishable
    return !t.limit_index.has_value();
  });

  // 11. Determinism and round trips.
  criterion(11, "parallel/serial confusion equality, export/import metric equality, SVG byte determinism",
            [](std::string& detail) {
              SynthSpec spec;
              spec.num_places = 8;
              spec.height = spec.width = 32;
              spec.seed = 11;
              spec.viewpoint_shift_px = 3;
              Dataset d = generate_synthetic_dataset(spec);
              auto hog = make_builtin_technique("hog");

              ConfusionMatrix serial = build_confusion_matrix(*hog, d, 1);
              ConfusionMatrix parallel = build_confusion_matrix(*hog, d, 8);
              if (serial.scores() != parallel.scores()) {
                detail = "parallel vs serial mismatch";
                return false;
              }

              fs::path dir = fs::temp_directory_path() / "vpreval_acceptance";
              fs::remove_all(dir);
              save_precomputed_results(dir, "hog", serial.scores(), measure_timings(*hog, d));
              ConfusionMatrix replayed = build_confusion_matrix(*load_precomputed_results(dir), d);
              bool metrics_equal =
                  *pr_curve_auc(replayed, d.ground_truth).auc == *pr_curve_auc(serial, d.ground_truth).auc &&
                  recall_rate_at_n(replayed, d.ground_truth, 1) == recall_rate_at_n(serial, d.ground_truth, 1) &&
                  replayed.scores() == serial.scores();
              if (!metrics_equal) {
                detail = "precomputed round trip mismatch";
                return false;
              }

              CurveReport pr = pr_curve_auc(serial, d.ground_truth);
              PlotSpec plot;
              plot.title = "pr";
              plot.x_label = "recall";
              plot.y_label = "precision";
              plot.series.push_back({"hog", pr.points, false});
              bool svg_ok = render_svg(plot) == render_svg(plot);
              fs::remove_all(dir);
              if (!svg_ok) detail = "svg not byte-identical";
              return svg_ok;
            });

  std::printf("%s (%d failure%s)\n", g_failures == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED", g_failures,
              g_failures == 1 ? "" : "s");
  return g_failures == 0 ? 0 : 1;
}
