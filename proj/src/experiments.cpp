#include "vpreval/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vpreval/error.hpp"
#include "vpreval/hog.hpp"
#include "vpreval/patchnorm.hpp"
#include "vpreval/precomputed.hpp"
#include "vpreval/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace vpreval {

namespace {

const std::set<std::string> kKnownMetrics = {"aucpr", "rr", "roc", "tpdist", "speed"};

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::unique_ptr<VprTechnique> make_technique(const std::string& spec) {
  if (spec.rfind("precomputed:", 0) == 0) {
    return load_precomputed_results(spec.substr(12));
  }
  return make_builtin_technique(spec);
}

void RunConfig::validate() const {
  if (dataset_paths.empty()) throw ConfigError("no datasets given");
  if (technique_specs.empty()) throw ConfigError("no techniques given");
  if (metrics.empty()) throw ConfigError("no metrics requested");
  for (const auto& m : metrics) {
    if (!kKnownMetrics.count(m)) throw ConfigError("unknown metric: " + m);
  }
  for (const auto& p : dataset_paths) {
    if (!fs::exists(p)) throw ConfigError("dataset path does not exist: " + p.string());
  }
  if (rr_max < 1) throw ConfigError("rr-max must be >= 1");
  if (timing_repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (!(speed_k > 0.0) || !(speed_v > 0.0)) throw ConfigError("speed model k and v must be positive");
}

namespace {

bool wants(const RunConfig& cfg, const std::string& m) {
  return std::find(cfg.metrics.begin(), cfg.metrics.end(), m) != cfg.metrics.end();
}

MetricCell evaluate_cell(const RunConfig& cfg, const Dataset& d, const std::string& tech_spec) {
  MetricCell cell;
  cell.dataset = d.name;
  cell.technique = tech_spec;
  try {
    auto technique = make_technique(tech_spec);
    cell.technique = technique->name();
    ConfusionMatrix c = build_confusion_matrix(*technique, d);
    cell.confusion = c.scores();

    if (wants(cfg, "aucpr")) {
      try {
        CurveReport pr = pr_curve_auc(c, d.ground_truth);
        cell.auc_pr = pr.auc;
        cell.pr_curve = std::move(pr);
      } catch (const Error& e) {
        cell.skips["aucpr"] = e.what();
      }
    }
    if (wants(cfg, "rr")) {
      try {
        cell.rr_curve = recall_rate_curve(c, d.ground_truth, cfg.rr_max);
        cell.rr_at_1 = recall_rate_at_n(c, d.ground_truth, 1);
      } catch (const Error& e) {
        cell.skips["rr"] = e.what();
      }
    }
    if (wants(cfg, "roc")) {
      try {
        CurveReport roc = roc_curve_auc(c, d.ground_truth);
        cell.auc_roc = roc.auc;
        cell.roc_curve = std::move(roc);
      } catch (const Error& e) {
        cell.skips["roc"] = e.what();
      }
    }
    if (wants(cfg, "tpdist")) {
      try {
        cell.tp_dist = tp_distribution(c, d);
      } catch (const Error& e) {
        cell.skips["tpdist"] = e.what();
      }
    }
    cell.timings = measure_timings(*technique, d, cfg.timing_repetitions);
    if (wants(cfg, "speed")) {
      try {
        SpeedModel sm{cfg.speed_k, cfg.speed_v, cell.timings->z, cell.timings->t_e_sec, cell.timings->t_m_sec};
        cell.speed = retrieval_speed_model(sm);
      } catch (const Error& e) {
        cell.skips["speed"] = e.what();
      }
    }
  } catch (const std::exception& e) {
    cell.failure = e.what();
  }
  return cell;
}

}  // namespace

EvaluationReport run_evaluation(const RunConfig& cfg) {
  cfg.validate();
  EvaluationReport report;
  report.requested_metrics = cfg.metrics;
  report.seed = cfg.seed;
  for (const auto& path : cfg.dataset_paths) {
    Dataset d = load_dataset(path);  // invalid dataset aborts the run up front
    for (const auto& tech : cfg.technique_specs) {
      report.cells.push_back(evaluate_cell(cfg, d, tech));
    }
  }
  return report;
}

std::vector<SweepRow> descriptor_size_sweep(const Dataset& d, const std::string& family,
                                            const std::vector<int>& grid) {
  if (family != "hog" && family != "patchnorm") throw ConfigError("unknown sweep family: " + family);
  if (grid.empty()) throw ConfigError("empty sweep grid");
  std::vector<SweepRow> rows;
  for (int param : grid) {
    SweepRow row;
    row.param = param;
    try {
      std::unique_ptr<VprTechnique> technique;
      if (family == "hog") {
        HogConfig cfg;
        cfg.cell = param;  // block stays 2x2 cells, i.e. twice the cell size
        technique = std::make_unique<HogTechnique>(cfg);
      } else {
        PatchNormConfig cfg;
        cfg.down_side = param;
        technique = std::make_unique<PatchNormTechnique>(cfg);
      }
      ConfusionMatrix c = build_confusion_matrix(*technique, d);
      row.auc_pr = *pr_curve_auc(c, d.ground_truth).auc;
      Descriptor probe = technique->compute_query_desc(d.queries[0]);
      row.descriptor_length = probe.element_count();
      row.descriptor_kb = static_cast<double>(probe.byte_size()) / 1024.0;
      row.t_m_sec = measure_timings(*technique, d).t_m_sec;
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<GtStudyRow> gt_manipulation_report(const Dataset& d, const std::vector<std::string>& technique_specs,
                                               const std::vector<int>& radii, bool include_interchange) {
  std::vector<GtStudyRow> rows;
  for (const auto& spec : technique_specs) {
    auto technique = make_technique(spec);
    ConfusionMatrix c = build_confusion_matrix(*technique, d);
    auto add_row = [&](const std::string& variant, const ConfusionMatrix& cm, const GroundTruth& gt) {
      GtStudyRow row{technique->name(), variant, {}, {}, ""};
      try {
        row.auc_pr = *pr_curve_auc(cm, gt).auc;
        row.rr_at_1 = recall_rate_at_n(cm, gt, 1);
      } catch (const Error& e) {
        row.skip = e.what();
      }
      rows.push_back(std::move(row));
    };
    add_row("original", c, d.ground_truth);
    for (int r : radii) {
      if (!d.is_trajectory) {
        rows.push_back({technique->name(), "widened(" + std::to_string(r) + ")", {}, {},
                        "widening skipped: dataset is not a trajectory"});
        continue;
      }
      // widening edits only labels; the confusion matrix is reused
      add_row("widened(" + std::to_string(r) + ")", c, widen_ground_truth(d, r).ground_truth);
    }
    if (include_interchange) {
      if (technique->is_precomputed()) {
        rows.push_back({technique->name(), "interchanged", {}, {},
                        "interchange skipped: precomputed scores cannot be recomputed for swapped roles"});
      } else {
        Dataset swapped = interchange_query_reference(d);
        add_row("interchanged", build_confusion_matrix(*technique, swapped), swapped.ground_truth);
      }
    }
  }
  return rows;
}

std::string curve_to_csv(const CurveReport& curve) {
  std::ostringstream out;
  const bool has_thresholds = curve.thresholds.size() == curve.points.size();
  out << "x,y" << (has_thresholds ? ",threshold" : "") << "\n";
  for (size_t i = 0; i < curve.points.size(); ++i) {
    out << num17(curve.points[i].first) << "," << num17(curve.points[i].second);
    if (has_thresholds) out << "," << num17(curve.thresholds[i]);
    out << "\n";
  }
  return out.str();
}

CurveReport curve_from_csv(CurveKind kind, const std::string& csv) {
  CurveReport r;
  r.kind = kind;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::vector<double> vals;
    while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
    if (vals.size() < 2) throw ConfigError("malformed curve CSV line: " + line);
    r.points.emplace_back(vals[0], vals[1]);
    if (vals.size() > 2) r.thresholds.push_back(vals[2]);
  }
  return r;
}

namespace {

json curve_summary(const CurveReport& curve) {
  json j = {{"kind", to_string(curve.kind)}, {"n_points", curve.points.size()}};
  if (curve.auc) j["auc"] = *curve.auc;
  if (curve.warning_too_few_points) j["warning"] = "fewer than 2 true positives";
  return j;
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return out;
}

void emit_curve(const CurveReport& curve, const std::string& stem, const std::string& title, const std::string& xl,
                const std::string& yl, const fs::path& out_dir) {
  write_text_file((out_dir / (stem + ".csv")).string(), curve_to_csv(curve));
  PlotSpec plot;
  plot.title = title;
  plot.x_label = xl;
  plot.y_label = yl;
  plot.series.push_back({title, curve.points, curve.kind == CurveKind::TPDistribution});
  write_text_file((out_dir / (stem + ".svg")).string(), render_svg(plot));
}

}  // namespace

void emit_outputs(const EvaluationReport& report, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (!fs::is_directory(out_dir)) throw EvalError("cannot create output directory: " + out_dir.string());

  json j;
  j["seed"] = report.seed;
  j["requested_metrics"] = report.requested_metrics;
  j["timing_note"] = report.timing_note;
  j["cells"] = json::array();
  for (const auto& cell : report.cells) {
    const std::string tag = sanitize(cell.technique) + "_" + sanitize(cell.dataset);
    json jc = {{"dataset", cell.dataset}, {"technique", cell.technique}};
    if (cell.failure) {
      jc["failure"] = *cell.failure;
      j["cells"].push_back(jc);
      continue;
    }
    if (cell.auc_pr) jc["auc_pr"] = *cell.auc_pr;
    if (cell.rr_at_1) jc["rr_at_1"] = *cell.rr_at_1;
    if (cell.auc_roc) jc["auc_roc"] = *cell.auc_roc;
    if (cell.timings) {
      jc["timings"] = {{"t_e_sec", cell.timings->t_e_sec},       {"t_m_sec", cell.timings->t_m_sec},
                       {"t_e_variance", cell.timings->t_e_variance}, {"t_m_variance", cell.timings->t_m_variance},
                       {"z", cell.timings->z},                    {"descriptor_bytes", cell.timings->descriptor_bytes},
                       {"pairs_sampled", cell.timings->pairs_sampled}};
    }
    if (cell.speed) {
      jc["speed"] = {{"t_r_sec", cell.speed->t_r_sec},
                     {"fps_vpr", cell.speed->fps_vpr},
                     {"fps_req", cell.speed->fps_req},
                     {"v_max", cell.speed->v_max},
                     {"feasible", cell.speed->feasible}};
    }
    if (!cell.skips.empty()) jc["skips"] = cell.skips;

    if (cell.pr_curve) {
      jc["pr_curve"] = curve_summary(*cell.pr_curve);
      emit_curve(*cell.pr_curve, "pr_" + tag, "PR " + tag, "recall", "precision", out_dir);
    }
    if (cell.rr_curve) {
      jc["rr_curve"] = curve_summary(*cell.rr_curve);
      emit_curve(*cell.rr_curve, "rr_" + tag, "RecallRate " + tag, "N", "RecallRate@N", out_dir);
    }
    if (cell.roc_curve) {
      jc["roc_curve"] = curve_summary(*cell.roc_curve);
      emit_curve(*cell.roc_curve, "roc_" + tag, "ROC " + tag, "FPR", "TPR", out_dir);
    }
    if (cell.tp_dist) {
      jc["tp_distribution"] = curve_summary(*cell.tp_dist);
      emit_curve(*cell.tp_dist, "tpdist_" + tag, "TP gaps " + tag, "gap (m)", "count", out_dir);
    }
    if (!cell.confusion.empty() && cell.timings) {
      save_precomputed_results(out_dir / ("confusion_" + tag), cell.technique, cell.confusion, *cell.timings);
    }
    j["cells"].push_back(jc);
  }
  std::ofstream f(out_dir / "report.json");
  if (!f) throw EvalError("cannot write " + (out_dir / "report.json").string());
  f << j.dump(2) << "\n";
}

void emit_trace(const VariationTrace& trace, const std::vector<double>& labels, const std::string& stem,
                const fs::path& out_dir) {
  fs::create_directories(out_dir);
  std::ostringstream csv;
  csv << "index,label,same_score,diff_score\n";
  for (size_t i = 0; i < trace.same_scores.size(); ++i) {
    csv << i << "," << (i < labels.size() ? num17(labels[i]) : std::string("")) << "," << num17(trace.same_scores[i])
        << "," << num17(trace.diff_scores[i]) << "\n";
  }
  write_text_file((out_dir / (stem + ".csv")).string(), csv.str());

  json j = {{"abc", trace.abc}};
  if (trace.limit_index) {
    j["limit_index"] = *trace.limit_index;
  } else {
    j["limit_index"] = nullptr;
  }
  std::ofstream(out_dir / (stem + ".json")) << j.dump(2) << "\n";

  PlotSpec plot;
  plot.title = stem;
  plot.x_label = "variation index";
  plot.y_label = "matching score";
  PlotSeries same{"same place", {}, false}, diff{"different place", {}, false};
  for (size_t i = 0; i < trace.same_scores.size(); ++i) {
    same.points.emplace_back(static_cast<double>(i), trace.same_scores[i]);
    diff.points.emplace_back(static_cast<double>(i), trace.diff_scores[i]);
  }
  plot.series = {same, diff};
  write_text_file((out_dir / (stem + ".svg")).string(), render_svg(plot));
}

}  // namespace vpreval
