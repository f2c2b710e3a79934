#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include <doctest.h>

#include "irsa/degree_dist.hpp"
#include "irsa/sic_sim.hpp"

using irsa::DecodeResult;
using irsa::DegreeDistribution;
using irsa::FrameGraph;
using irsa::SimConfig;

namespace {

DegreeDistribution lambda2() {
  return DegreeDistribution({{2, 0.5}, {3, 0.28}, {8, 0.22}});
}

std::set<int> decoded_set(const DecodeResult& result) {
  std::set<int> out;
  for (int u = 0; u < static_cast<int>(result.decoded.size()); ++u) {
    if (result.decoded[u]) out.insert(u);
  }
  return out;
}

// Reference decoder: remove one decodable user at a time until no change.
std::set<int> single_removal_oracle(const FrameGraph& graph, int mpr) {
  std::vector<int> slot_degree(graph.num_slots, 0);
  for (const auto& slots : graph.assignments) {
    for (int s : slots) ++slot_degree[s];
  }
  std::set<int> decoded;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int u = 0; u < graph.num_users; ++u) {
      if (decoded.count(u)) continue;
      const bool decodable = std::any_of(
          graph.assignments[u].begin(), graph.assignments[u].end(),
          [&](int s) { return slot_degree[s] <= mpr; });
      if (decodable) {
        decoded.insert(u);
        for (int s : graph.assignments[u]) --slot_degree[s];
        progress = true;
      }
    }
  }
  return decoded;
}

FrameGraph random_graph(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> users(1, 8);
  std::uniform_int_distribution<int> slots(1, 6);
  FrameGraph graph;
  graph.num_users = users(rng);
  graph.num_slots = slots(rng);
  graph.assignments.resize(graph.num_users);
  std::uniform_int_distribution<int> degree(0, graph.num_slots);
  std::vector<int> pool(graph.num_slots);
  std::iota(pool.begin(), pool.end(), 0);
  for (auto& slots_of_user : graph.assignments) {
    std::shuffle(pool.begin(), pool.end(), rng);
    const int d = degree(rng);
    slots_of_user.assign(pool.begin(), pool.begin() + d);
  }
  return graph;
}

}  // namespace

TEST_CASE("deterministic SIC fixture: two iterations decode everyone") {
  FrameGraph graph;
  graph.num_users = 4;
  graph.num_slots = 3;
  graph.assignments = {{0, 1}, {0, 2}, {1, 2}, {0, 2}};
  const DecodeResult result = irsa::sic_decode(graph, 2);
  CHECK(result.num_decoded == 4);
  CHECK(result.iterations == 2);

  // with K = 1 nothing is decodable: no singleton slots
  const DecodeResult k1 = irsa::sic_decode(graph, 1);
  CHECK(k1.num_decoded == 0);
  CHECK(k1.iterations == 0);
}

TEST_CASE("decoder edge cases") {
  FrameGraph collision;
  collision.num_users = 3;
  collision.num_slots = 1;
  collision.assignments = {{0}, {0}, {0}};
  CHECK(irsa::sic_decode(collision, 2).num_decoded == 0);

  FrameGraph singleton;
  singleton.num_users = 1;
  singleton.num_slots = 1;
  singleton.assignments = {{0}};
  CHECK(irsa::sic_decode(singleton, 1).num_decoded == 1);
}

TEST_CASE("sample_frame structure and determinism") {
  const SimConfig config{DegreeDistribution({{2, 1.0}}), 1, 1, 1.0 / 3.0, 1, 42};
  const FrameGraph graph = irsa::sample_frame(config, 0);
  REQUIRE(graph.num_users == 1);
  CHECK(graph.num_slots == 3);
  REQUIRE(graph.assignments[0].size() == 2);
  std::set<int> slots(graph.assignments[0].begin(), graph.assignments[0].end());
  CHECK(slots.size() == 2);
  for (int s : slots) {
    CHECK(s >= 0);
    CHECK(s < 3);
  }

  const FrameGraph again = irsa::sample_frame(config, 0);
  CHECK(again.assignments == graph.assignments);

  const SimConfig wide{lambda2(), 2, 50, 0.5, 1, 42};
  CHECK(irsa::sample_frame(wide, 0).assignments !=
        irsa::sample_frame(wide, 1).assignments);  // overwhelmingly likely

  // a degree that cannot fit in the frame is a config error
  const SimConfig bad{lambda2(), 2, 10, 2.0, 1, 1};
  CHECK_THROWS_AS(irsa::sample_frame(bad, 0), std::invalid_argument);
}

TEST_CASE("sampled degrees follow the distribution") {
  SimConfig config{lambda2(), 2, 100000, 1.0, 1, 2024};
  const FrameGraph graph = irsa::sample_frame(config, 0);
  std::map<std::size_t, int> histogram;
  for (const auto& slots : graph.assignments) ++histogram[slots.size()];
  CHECK(histogram[2] / 1e5 == doctest::Approx(0.50).epsilon(0.01));
  CHECK(histogram[3] / 1e5 == doctest::Approx(0.28).epsilon(0.01));
  CHECK(histogram[8] / 1e5 == doctest::Approx(0.22).epsilon(0.01));

  // each user's slots are distinct and in range
  for (const auto& slots : graph.assignments) {
    std::set<int> unique(slots.begin(), slots.end());
    CHECK(unique.size() == slots.size());
  }
}

TEST_CASE("property: decoder matches the single-removal oracle") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> mpr(1, 3);
  for (int trial = 0; trial < 10000; ++trial) {
    const FrameGraph graph = random_graph(rng);
    const int k = mpr(rng);
    CHECK(decoded_set(irsa::sic_decode(graph, k)) == single_removal_oracle(graph, k));
  }
}

TEST_CASE("property: confluence under user and slot relabeling") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 500; ++trial) {
    const FrameGraph graph = random_graph(rng);
    const int k = std::uniform_int_distribution<int>(1, 3)(rng);
    const std::set<int> base = decoded_set(irsa::sic_decode(graph, k));

    std::vector<int> user_perm(graph.num_users);
    std::iota(user_perm.begin(), user_perm.end(), 0);
    std::shuffle(user_perm.begin(), user_perm.end(), rng);
    std::vector<int> slot_perm(graph.num_slots);
    std::iota(slot_perm.begin(), slot_perm.end(), 0);
    std::shuffle(slot_perm.begin(), slot_perm.end(), rng);

    FrameGraph permuted = graph;
    for (int u = 0; u < graph.num_users; ++u) {
      auto& slots = permuted.assignments[user_perm[u]];
      slots = graph.assignments[u];
      for (int& s : slots) s = slot_perm[s];
    }
    const std::set<int> relabeled = decoded_set(irsa::sic_decode(permuted, k));
    std::set<int> mapped_back;
    for (int u = 0; u < graph.num_users; ++u) {
      if (relabeled.count(user_perm[u])) mapped_back.insert(u);
    }
    CHECK(mapped_back == base);
  }
}

TEST_CASE("property: decoded set grows with K and under user removal") {
  std::mt19937_64 rng(808);
  for (int trial = 0; trial < 1000; ++trial) {
    const FrameGraph graph = random_graph(rng);
    const std::set<int> k1 = decoded_set(irsa::sic_decode(graph, 1));
    const std::set<int> k2 = decoded_set(irsa::sic_decode(graph, 2));
    CHECK(std::includes(k2.begin(), k2.end(), k1.begin(), k1.end()));

    if (graph.num_users > 1) {
      const int removed = std::uniform_int_distribution<int>(0, graph.num_users - 1)(rng);
      FrameGraph reduced;
      reduced.num_slots = graph.num_slots;
      std::vector<int> kept;
      for (int u = 0; u < graph.num_users; ++u) {
        if (u == removed) continue;
        kept.push_back(u);
        reduced.assignments.push_back(graph.assignments[u]);
      }
      reduced.num_users = static_cast<int>(reduced.assignments.size());
      const std::set<int> after = decoded_set(irsa::sic_decode(reduced, 2));
      for (int i = 0; i < reduced.num_users; ++i) {
        if (k2.count(kept[i])) CHECK(after.count(i) == 1);
      }
    }
  }
}

TEST_CASE("run_trials: identities and determinism across thread counts") {
  SimConfig config{lambda2(), 2, 200, 1.2, 40, 7};
  const irsa::SimReport base = irsa::run_trials(config);
  CHECK(base.ci_low <= base.plr_estimate);
  CHECK(base.plr_estimate <= base.ci_high);
  CHECK(base.throughput ==
        doctest::Approx(base.realized_load * (1.0 - base.plr_estimate)).epsilon(1e-12));
  CHECK(base.users_observed == 200 * 40);

  for (int threads : {2, 3, 8}) {
    config.threads = threads;
    const irsa::SimReport parallel = irsa::run_trials(config);
    CHECK(parallel.plr_estimate == base.plr_estimate);
    CHECK(parallel.ci_low == base.ci_low);
    CHECK(parallel.ci_high == base.ci_high);
    CHECK(parallel.throughput == base.throughput);
  }
}

TEST_CASE("run_trials: single-user frame always decodes") {
  const SimConfig config{DegreeDistribution({{2, 1.0}}), 1, 1, 0.5, 1, 3};
  const irsa::SimReport report = irsa::run_trials(config);
  CHECK(report.plr_estimate == 0.0);
}

TEST_CASE("plr_curve is ordered and reduces to run_trials") {
  SimConfig config{lambda2(), 2, 100, 1.0, 20, 11};
  const auto points = irsa::plr_curve(config, {0.5, 1.0, 1.5});
  REQUIRE(points.size() == 3);
  CHECK(points[0].load == 0.5);
  CHECK(points[2].load == 1.5);
  // trend check: PLR nondecreasing in G within CI overlap
  for (std::size_t i = 1; i < points.size(); ++i) {
    CHECK(points[i].report.ci_high >= points[i - 1].report.ci_low);
  }

  SimConfig single = config;
  single.load = 1.0;
  single.load_index = 1;
  const irsa::SimReport direct = irsa::run_trials(single);
  CHECK(points[1].report.plr_estimate == direct.plr_estimate);

  CHECK_THROWS_AS(irsa::plr_curve(config, {}), std::invalid_argument);
  CHECK_THROWS_AS(irsa::plr_curve(config, {-1.0}), std::invalid_argument);
}
