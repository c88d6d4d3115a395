#include "vpreval/technique.hpp"

#include <cmath>

#include "vpreval/error.hpp"
#include "vpreval/hog.hpp"
#include "vpreval/patchnorm.hpp"

namespace vpreval {

void Descriptor::validate() const {
  if (values.size() != element_count()) {
    throw EvalError("descriptor buffer length " + std::to_string(values.size()) + " does not match dims product " +
                    std::to_string(element_count()));
  }
  for (float v : values) {
    if (!std::isfinite(v)) throw EvalError("descriptor contains a non-finite value");
  }
}

namespace {

void check_dims(size_t a, size_t b) {
  if (a != b) {
    throw EvalError("descriptor dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

double cosine_score(std::span<const float> a, std::span<const float> b) {
  check_dims(a.size(), b.size());
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  na = std::sqrt(na);
  nb = std::sqrt(nb);
  if (na < 1e-12 || nb < 1e-12) return 0.0;
  double c = dot / (na * nb);
  return std::clamp(c, 0.0, 1.0);
}

double l1_score(std::span<const float> a, std::span<const float> b) {
  check_dims(a.size(), b.size());
  double diff = 0.0, suma = 0.0, sumb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    diff += std::abs(static_cast<double>(a[i]) - b[i]);
    suma += std::abs(static_cast<double>(a[i]));
    sumb += std::abs(static_cast<double>(b[i]));
  }
  return 1.0 - diff / std::max(suma + sumb, 1e-12);
}

double cosine_score(const Descriptor& a, const Descriptor& b) { return cosine_score(std::span(a.values), std::span(b.values)); }
double l1_score(const Descriptor& a, const Descriptor& b) { return l1_score(std::span(a.values), std::span(b.values)); }

DescriptorSet VprTechnique::compute_map_features(std::span<const ImageGrid> map) const {
  if (map.empty()) throw ConfigError("reference map is empty");
  DescriptorSet out;
  out.reserve(map.size());
  for (size_t i = 0; i < map.size(); ++i) {
    try {
      out.push_back(compute_query_desc(map[i]));
    } catch (const Error& e) {
      throw EvalError("map image " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

MatchResult match_from_row(std::vector<double> row) {
  MatchResult r;
  r.row = std::move(row);
  for (size_t i = 0; i < r.row.size(); ++i) {
    if (r.best_index < 0 || r.row[i] > r.score) {
      r.best_index = static_cast<int>(i);
      r.score = r.row[i];
    }
  }
  return r;
}

MatchResult VprTechnique::perform_vpr(const Descriptor& f_q, const DescriptorSet& f_m) const {
  if (f_m.empty()) throw ConfigError("reference descriptor set is empty");
  std::vector<double> row(f_m.size());
  for (size_t i = 0; i < f_m.size(); ++i) row[i] = score(f_q, f_m[i]);
  return match_from_row(std::move(row));
}

std::unique_ptr<VprTechnique> make_builtin_technique(const std::string& name) {
  if (name == "hog") return std::make_unique<HogTechnique>();
  if (name == "patchnorm") return std::make_unique<PatchNormTechnique>();
  throw ConfigError("unknown technique: " + name);
}

}  // namespace vpreval
