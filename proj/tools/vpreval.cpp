#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vpreval/dataset.hpp"
#include "vpreval/error.hpp"
#include "vpreval/experiments.hpp"
#include "vpreval/svg.hpp"

using namespace vpreval;

namespace {

int run_evaluate(const RunConfig& cfg) {
  EvaluationReport report = run_evaluation(cfg);
  emit_outputs(report, cfg.out_dir);
  bool all_failed = !report.cells.empty();
  for (const auto& cell : report.cells) {
    if (!cell.failure) all_failed = false;
    std::string status = cell.failure ? "FAILED: " + *cell.failure : "ok";
    std::printf("[%s x %s] %s", cell.dataset.c_str(), cell.technique.c_str(), status.c_str());
    if (cell.auc_pr) std::printf("  auc_pr=%.4f", *cell.auc_pr);
    if (cell.rr_at_1) std::printf("  rr@1=%.4f", *cell.rr_at_1);
    if (cell.auc_roc) std::printf("  auc_roc=%.4f", *cell.auc_roc);
    for (const auto& [metric, reason] : cell.skips) std::printf("  [%s skipped: %s]", metric.c_str(), reason.c_str());
    std::printf("\n");
  }
  std::printf("report written to %s\n", cfg.out_dir.string().c_str());
  return all_failed ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"VPR evaluation framework"};
  app.require_subcommand(1);

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "run techniques over datasets and emit metric reports");
  RunConfig cfg;
  std::vector<std::string> dataset_args;
  evaluate->add_option("--dataset", dataset_args, "dataset root directory")->required()->expected(-1);
  evaluate->add_option("--technique", cfg.technique_specs, "hog | patchnorm | precomputed:<path>")
      ->required()
      ->expected(-1);
  evaluate->add_option("--metrics", cfg.metrics, "comma list from aucpr,rr,roc,tpdist,speed")
      ->required()
      ->delimiter(',');
  evaluate->add_option("--out", cfg.out_dir, "output directory")->required();
  evaluate->add_option("--rr-max", cfg.rr_max, "largest N for the RecallRate curve");
  evaluate->add_option("--repetitions", cfg.timing_repetitions, "timing repetitions");
  evaluate->add_option("--speed-k", cfg.speed_k, "frames-per-meter requirement K");
  evaluate->add_option("--speed-v", cfg.speed_v, "platform speed V in m/s");
  evaluate->add_option("--seed", cfg.seed, "run seed recorded in the report");

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic dataset");
  SynthSpec spec;
  std::string synth_out;
  synth->add_option("--out", synth_out, "output dataset directory")->required();
  synth->add_option("--places", spec.num_places, "number of places");
  synth->add_option("--size", spec.height, "square image side in px");
  synth->add_option("--shift", spec.viewpoint_shift_px, "lateral query shift in px");
  synth->add_option("--gain", spec.gain, "uniform query gain");
  synth->add_option("--ramp", spec.directional_gain_span, "directional gain ramp span");
  synth->add_option("--seed", spec.seed, "generator seed");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "descriptor-size sweep over a technique family");
  std::string sweep_dataset, sweep_family = "hog", sweep_out;
  std::vector<int> sweep_grid = {8, 16, 32, 64, 128, 256};
  sweep->add_option("--dataset", sweep_dataset, "dataset root")->required();
  sweep->add_option("--family", sweep_family, "hog | patchnorm");
  sweep->add_option("--cells", sweep_grid, "grid values (cell size for hog)")->delimiter(',');
  sweep->add_option("--out", sweep_out, "output CSV path")->required();

  // gtstudy
  auto* gtstudy = app.add_subcommand("gtstudy", "ground-truth manipulation study");
  std::string gt_dataset, gt_out;
  std::vector<std::string> gt_techniques = {"hog"};
  std::vector<int> gt_radii = {0, 1, 2, 5};
  bool gt_interchange = false;
  gtstudy->add_option("--dataset", gt_dataset, "dataset root")->required();
  gtstudy->add_option("--technique", gt_techniques, "techniques to study")->expected(-1);
  gtstudy->add_option("--radii", gt_radii, "widening radii")->delimiter(',');
  gtstudy->add_flag("--interchange", gt_interchange, "also interchange query and reference roles");
  gtstudy->add_option("--out", gt_out, "output CSV path")->required();

  // invariance
  auto* invariance = app.add_subcommand("invariance", "variation-sweep invariance analysis");
  std::string inv_seed_image, inv_diff_image, inv_mode = "lateral", inv_technique = "hog", inv_out;
  int inv_n = 10;
  double inv_max = 8.0;
  uint32_t inv_seed = 0;
  int inv_size = 128;
  invariance->add_option("--seed-image", inv_seed_image, "same-place image (synthetic when omitted)");
  invariance->add_option("--diff-image", inv_diff_image, "different-place image (synthetic when omitted)");
  invariance->add_option("--mode", inv_mode, "lateral | zoom | uniform-illum | directional-illum");
  invariance->add_option("--n", inv_n, "number of variation steps");
  invariance->add_option("--max", inv_max, "maximum variation magnitude");
  invariance->add_option("--technique", inv_technique, "technique under study");
  invariance->add_option("--seed", inv_seed, "seed for synthetic place images");
  invariance->add_option("--size", inv_size, "synthetic image side in px");
  invariance->add_option("--out", inv_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (evaluate->parsed()) {
      for (const auto& p : dataset_args) cfg.dataset_paths.emplace_back(p);
      return run_evaluate(cfg);
    }
    if (synth->parsed()) {
      spec.width = spec.height;
      Dataset d = generate_synthetic_dataset(spec);
      save_dataset(d, synth_out);
      std::printf("wrote %d places to %s\n", spec.num_places, synth_out.c_str());
      return 0;
    }
    if (sweep->parsed()) {
      Dataset d = load_dataset(sweep_dataset);
      auto rows = descriptor_size_sweep(d, sweep_family, sweep_grid);
      std::string csv = "param,auc_pr,descriptor_length,descriptor_kb,t_m_sec,error\n";
      for (const auto& r : rows) {
        char buf[256];
        if (r.failed) {
          std::snprintf(buf, sizeof(buf), "%d,,,,,%s\n", r.param, r.error.c_str());
        } else {
          std::snprintf(buf, sizeof(buf), "%d,%.17g,%zu,%.17g,%.17g,\n", r.param, r.auc_pr, r.descriptor_length,
                        r.descriptor_kb, r.t_m_sec);
        }
        csv += buf;
        std::fputs(buf, stdout);
      }
      write_text_file(sweep_out, csv);
      return 0;
    }
    if (gtstudy->parsed()) {
      Dataset d = load_dataset(gt_dataset);
      auto rows = gt_manipulation_report(d, gt_techniques, gt_radii, gt_interchange);
      std::string csv = "technique,variant,auc_pr,rr_at_1,skip\n";
      for (const auto& r : rows) {
        char buf[320];
        std::snprintf(buf, sizeof(buf), "%s,%s,%s,%s,%s\n", r.technique.c_str(), r.variant.c_str(),
                      r.auc_pr ? std::to_string(*r.auc_pr).c_str() : "",
                      r.rr_at_1 ? std::to_string(*r.rr_at_1).c_str() : "", r.skip.c_str());
        csv += buf;
        std::fputs(buf, stdout);
      }
      write_text_file(gt_out, csv);
      return 0;
    }
    if (invariance->parsed()) {
      VariationMode mode = parse_variation_mode(inv_mode);
      ImageGrid same = inv_seed_image.empty() ? synth_place_image(inv_seed, 0, inv_size, inv_size)
                                              : read_image(inv_seed_image);
      ImageGrid diff = inv_diff_image.empty() ? synth_place_image(inv_seed, 1, same.height, same.width)
                                              : read_image(inv_diff_image);
      auto schedule = linear_schedule(mode, inv_n, inv_max);
      auto seq = generate_variation_sequence(same, diff, mode, schedule);
      auto technique = make_technique(inv_technique);
      auto trace = variation_trace(seq, *technique);
      emit_trace(trace, schedule, "trace_" + technique->name() + "_" + inv_mode, inv_out);
      std::printf("abc=%.6f limit_index=%s\n", trace.abc,
                  trace.limit_index ? std::to_string(*trace.limit_index).c_str() : "none");
      return 0;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
