#include "vpreval/precomputed.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vpreval/error.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace vpreval {

PrecomputedTechnique::PrecomputedTechnique(std::string name, std::vector<std::vector<double>> scores,
                                           TimingProfile timings)
    : name_(std::move(name)), scores_(std::move(scores)), timings_(timings) {
  if (scores_.empty() || scores_[0].empty()) throw ConfigError("precomputed score matrix is empty");
  const size_t z = scores_[0].size();
  for (size_t q = 0; q < scores_.size(); ++q) {
    if (scores_[q].size() != z) {
      throw ConfigError("precomputed score matrix is ragged at row " + std::to_string(q));
    }
    for (double s : scores_[q]) {
      if (!(s >= 0.0 && s <= 1.0)) {
        throw ConfigError("precomputed score " + std::to_string(s) + " outside [0,1] at row " + std::to_string(q));
      }
    }
  }
  timings_.z = z;
}

Descriptor PrecomputedTechnique::compute_query_desc(const ImageGrid&) const {
  throw EvalError("technique '" + name_ + "' replays precomputed scores and cannot describe images");
}

double PrecomputedTechnique::score(const Descriptor&, const Descriptor&) const {
  throw EvalError("technique '" + name_ + "' replays precomputed scores and cannot match descriptors");
}

const std::vector<double>& PrecomputedTechnique::row_for_query(size_t q) const {
  if (q >= scores_.size()) throw EvalError("precomputed row " + std::to_string(q) + " out of range");
  return scores_[q];
}

std::vector<std::vector<double>> read_scores_csv(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        row.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw ConfigError("non-numeric value '" + tok + "' in " + path.string());
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_scores_csv(const fs::path& path, const std::vector<std::vector<double>>& scores) {
  std::ofstream f(path);
  if (!f) throw EvalError("cannot write " + path.string());
  char buf[40];
  for (const auto& row : scores) {
    for (size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", row[i]);  // round-trip exact
      if (i) f << ',';
      f << buf;
    }
    f << '\n';
  }
}

std::unique_ptr<PrecomputedTechnique> load_precomputed_results(const fs::path& path) {
  fs::path json_path = fs::is_directory(path) ? path / "results.json" : path;
  std::ifstream f(json_path);
  if (!f) throw ConfigError("cannot open " + json_path.string());
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw ConfigError("malformed JSON in " + json_path.string() + ": " + e.what());
  }
  TimingProfile t;
  t.t_e_sec = j.at("t_e_sec").get<double>();
  t.t_m_sec = j.at("t_m_sec").get<double>();
  t.descriptor_bytes = j.at("descriptor_bytes").get<size_t>();
  auto scores = read_scores_csv(json_path.parent_path() / j.at("scores_csv").get<std::string>());
  return std::make_unique<PrecomputedTechnique>(j.at("name").get<std::string>(), std::move(scores), t);
}

void save_precomputed_results(const fs::path& dir, const std::string& name,
                              const std::vector<std::vector<double>>& scores, const TimingProfile& timings) {
  fs::create_directories(dir);
  write_scores_csv(dir / "scores.csv", scores);
  json j = {{"name", name},
            {"t_e_sec", timings.t_e_sec},
            {"t_m_sec", timings.t_m_sec},
            {"descriptor_bytes", timings.descriptor_bytes},
            {"scores_csv", "scores.csv"}};
  std::ofstream(dir / "results.json") << j.dump(2) << "\n";
}

}  // namespace vpreval
