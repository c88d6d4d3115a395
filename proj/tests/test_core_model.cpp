#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "vpreval/dataset.hpp"
#include "vpreval/error.hpp"

using namespace vpreval;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("vpreval_test_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

Dataset tiny_identity_dataset(int n, int side = 16) {
  SynthSpec spec;
  spec.num_places = n;
  spec.height = spec.width = side;
  spec.seed = 7;
  return generate_synthetic_dataset(spec);
}

}  // namespace

TEST_CASE("load_dataset reads the directory layout and round-trips pixels") {
  fs::path root = temp_dir("load");
  Dataset d = tiny_identity_dataset(5);
  save_dataset(d, root);

  Dataset loaded = load_dataset(root);
  CHECK(loaded.num_queries() == 5);
  CHECK(loaded.num_references() == 5);
  CHECK(loaded.frame_spacing_m == 1.0);
  CHECK(loaded.is_trajectory);
  // lossless round trip: synthetic pixels are on the 8-bit grid
  for (int i = 0; i < 5; ++i) {
    CHECK(loaded.queries[i] == d.queries[i]);
    CHECK(loaded.references[i] == d.references[i]);
  }
  CHECK(loaded.ground_truth == d.ground_truth);
  fs::remove_all(root);
}

TEST_CASE("load_dataset pgm round trip") {
  fs::path root = temp_dir("pgm");
  Dataset d = tiny_identity_dataset(3);
  save_dataset(d, root, "pgm");
  Dataset loaded = load_dataset(root);
  for (int i = 0; i < 3; ++i) CHECK(loaded.references[i] == d.references[i]);
  fs::remove_all(root);
}

TEST_CASE("load_dataset error paths") {
  fs::path root = temp_dir("errors");

  SUBCASE("missing folder") {
    CHECK_THROWS_WITH_AS(load_dataset(root / "nope"), doctest::Contains("missing folder"), ConfigError);
  }

  Dataset d = tiny_identity_dataset(5);
  save_dataset(d, root);

  SUBCASE("gap in integer naming") {
    fs::remove(root / "ref" / "3.png");
    CHECK_THROWS_WITH_AS(load_dataset(root), doctest::Contains("missing reference index 3"), ConfigError);
  }
  SUBCASE("ground-truth index out of range") {
    std::ofstream(root / "ground_truth.json") << R"({"queries":[{"q":0,"refs":[9]}]})";
    CHECK_THROWS_WITH_AS(load_dataset(root), doctest::Contains("out of range"), ConfigError);
  }
  SUBCASE("ground-truth query out of range") {
    std::ofstream(root / "ground_truth.json") << R"({"queries":[{"q":7,"refs":[0]}]})";
    CHECK_THROWS_WITH_AS(load_dataset(root), doctest::Contains("query index 7"), ConfigError);
  }
  SUBCASE("unreadable image") {
    std::ofstream(root / "query" / "0.png") << "not a png";
    CHECK_THROWS_WITH_AS(load_dataset(root), doctest::Contains("0.png"), ConfigError);
  }
  fs::remove_all(root);
}

TEST_CASE("empty ground-truth list loads as a true-negative query") {
  fs::path root = temp_dir("tn");
  Dataset d = tiny_identity_dataset(3);
  d.ground_truth.entries[2] = {};
  save_dataset(d, root);
  Dataset loaded = load_dataset(root);
  CHECK(loaded.ground_truth.entries[2].empty());
  fs::remove_all(root);
}

TEST_CASE("interchange_query_reference inverts the ground-truth relation") {
  Dataset d = tiny_identity_dataset(3);
  SUBCASE("identity ground truth is symmetric") {
    Dataset swapped = interchange_query_reference(d);
    CHECK(swapped.ground_truth == d.ground_truth);
    CHECK(swapped.queries == d.references);
    CHECK(swapped.references == d.queries);
  }
  SUBCASE("hand-enumerated inverse") {
    d.ground_truth.entries = {{1, 2}, {}, {0}};
    Dataset swapped = interchange_query_reference(d);
    CHECK(swapped.ground_truth.entries == std::vector<std::vector<int>>{{2}, {0}, {0}});
  }
}

TEST_CASE("interchange preserves pair count and double-interchange restores full GTs") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 3 + rng() % 5;
    Dataset d = tiny_identity_dataset(n);
    size_t pairs = 0;
    bool every_ref_used = true;
    std::vector<bool> used(n, false);
    for (auto& lst : d.ground_truth.entries) {
      lst.clear();
      int k = rng() % 3;
      for (int i = 0; i < k; ++i) lst.push_back(rng() % n);
      std::sort(lst.begin(), lst.end());
      lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
      pairs += lst.size();
      for (int r : lst) used[r] = true;
    }
    for (bool u : used) every_ref_used &= u;

    Dataset swapped = interchange_query_reference(d);
    size_t swapped_pairs = 0;
    for (auto& lst : swapped.ground_truth.entries) swapped_pairs += lst.size();
    CHECK(swapped_pairs == pairs);

    Dataset back = interchange_query_reference(swapped);
    if (every_ref_used) {
      CHECK(back.ground_truth == d.ground_truth);
    }
  }
}

TEST_CASE("widen_ground_truth") {
  Dataset d = tiny_identity_dataset(8);
  SUBCASE("r=0 is identity") { CHECK(widen_ground_truth(d, 0).ground_truth == d.ground_truth); }
  SUBCASE("window arithmetic") {
    d.ground_truth.entries[0] = {5};
    CHECK(widen_ground_truth(d, 2).ground_truth.entries[0] == std::vector<int>{3, 4, 5, 6, 7});
  }
  SUBCASE("union with boundary clamping") {
    d.ground_truth.entries[0] = {0, 7};
    CHECK(widen_ground_truth(d, 1).ground_truth.entries[0] == std::vector<int>{0, 1, 6, 7});
  }
  SUBCASE("empty lists stay empty") {
    d.ground_truth.entries[1] = {};
    CHECK(widen_ground_truth(d, 3).ground_truth.entries[1].empty());
  }
  SUBCASE("non-trajectory data is rejected") {
    d.is_trajectory = false;
    CHECK_THROWS_AS(widen_ground_truth(d, 1), ConfigError);
  }
  SUBCASE("monotone in the radius") {
    std::mt19937 rng(3);
    for (auto& lst : d.ground_truth.entries) {
      lst.clear();
      if (rng() % 3) lst.push_back(rng() % 8);
    }
    for (int r1 = 0; r1 < 4; ++r1) {
      Dataset a = widen_ground_truth(d, r1);
      Dataset b = widen_ground_truth(d, r1 + 1);
      for (size_t q = 0; q < a.ground_truth.entries.size(); ++q) {
        CHECK(std::includes(b.ground_truth.entries[q].begin(), b.ground_truth.entries[q].end(),
                            a.ground_truth.entries[q].begin(), a.ground_truth.entries[q].end()));
      }
    }
  }
}

TEST_CASE("inject_true_negatives") {
  Dataset d = tiny_identity_dataset(4);
  std::vector<ImageGrid> negatives = {synth_place_image(99, 100, 16, 16), synth_place_image(99, 101, 16, 16)};
  Dataset out = inject_true_negatives(d, negatives);
  CHECK(out.num_queries() == 6);
  CHECK(out.num_references() == 4);
  CHECK(out.ground_truth.entries[4].empty());
  CHECK(out.ground_truth.entries[5].empty());
  CHECK_FALSE(out.is_trajectory);
  CHECK_THROWS_WITH_AS(inject_true_negatives(d, {}), doctest::Contains("no negatives"), ConfigError);
}

TEST_CASE("generate_synthetic_dataset is deterministic and validates its spec") {
  SynthSpec spec;
  spec.num_places = 6;
  spec.height = spec.width = 32;
  spec.seed = 42;
  spec.viewpoint_shift_px = 3;
  spec.gain = 1.2;
  Dataset a = generate_synthetic_dataset(spec);
  Dataset b = generate_synthetic_dataset(spec);
  CHECK(a.queries == b.queries);
  CHECK(a.references == b.references);

  spec.seed = 43;
  Dataset c = generate_synthetic_dataset(spec);
  CHECK(a.references != c.references);

  SynthSpec bad = spec;
  bad.num_places = 1;
  CHECK_THROWS_AS(generate_synthetic_dataset(bad), ConfigError);
  bad = spec;
  bad.gain = 0.0;
  CHECK_THROWS_AS(generate_synthetic_dataset(bad), ConfigError);
  bad = spec;
  bad.viewpoint_shift_px = 32;
  CHECK_THROWS_AS(generate_synthetic_dataset(bad), ConfigError);
}

TEST_CASE("synthetic images keep intensities in [0,1] and places differ") {
  SynthSpec spec;
  spec.num_places = 4;
  spec.height = spec.width = 24;
  spec.gain = 1.5;
  Dataset d = generate_synthetic_dataset(spec);
  for (const auto& img : d.queries) img.validate();
  for (const auto& img : d.references) img.validate();
  CHECK(d.references[0] != d.references[1]);
}
