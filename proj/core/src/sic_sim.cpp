#include "irsa/sic_sim.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "irsa/rng.hpp"

namespace irsa {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
  SplitMix64 gen(seed ^ (0x2545F4914F6CDD1Dull * (stream + 1)));
  const std::uint64_t h = gen.next();
  SplitMix64 gen2(h ^ (0x9E3779B97F4A7C15ull * (trial + 1)));
  return gen2.next();
}

int SimConfig::num_slots() const {
  if (load <= 0.0 || !std::isfinite(load)) {
    throw std::invalid_argument("load must be positive");
  }
  const long long n = std::llround(num_users / load);
  if (n < 1) throw std::invalid_argument("load too high: frame has no slots");
  return static_cast<int>(n);
}

double SimConfig::realized_load() const {
  return static_cast<double>(num_users) / num_slots();
}

namespace {

void check_config(const SimConfig& config) {
  if (config.num_users < 1) throw std::invalid_argument("num_users must be >= 1");
  if (config.mpr < 1) throw std::invalid_argument("mpr must be >= 1");
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (config.threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (config.num_slots() < config.dist.max_degree()) {
    throw std::invalid_argument("frame too short: a sampled degree could exceed the slot count");
  }
}

struct DegreeCdf {
  std::vector<int> degrees;
  std::vector<double> cumulative;

  explicit DegreeCdf(const DegreeDistribution& dist) {
    double acc = 0.0;
    for (const auto& [degree, prob] : dist.entries()) {
      acc += prob;
      degrees.push_back(degree);
      cumulative.push_back(acc);
    }
    cumulative.back() = 1.0;
  }

  int sample(double u) const {
    for (std::size_t i = 0; i < cumulative.size(); ++i) {
      if (u < cumulative[i]) return degrees[i];
    }
    return degrees.back();
  }
};

FrameGraph sample_frame_impl(const SimConfig& config, const DegreeCdf& cdf,
                             std::uint64_t trial_index, std::vector<int>& pool) {
  const int num_slots = config.num_slots();
  SplitMix64 rng(mix_seed(config.seed, config.load_index, trial_index));
  FrameGraph graph;
  graph.num_users = config.num_users;
  graph.num_slots = num_slots;
  graph.assignments.resize(config.num_users);
  for (int u = 0; u < config.num_users; ++u) {
    const int degree = cdf.sample(rng.next_unit());
    // Partial Fisher-Yates: the pool stays a permutation of the slot indices
    // across users, so each draw is uniform without replacement.
    auto& slots = graph.assignments[u];
    slots.resize(degree);
    for (int i = 0; i < degree; ++i) {
      const int j = i + static_cast<int>(rng.next_below(num_slots - i));
      std::swap(pool[i], pool[j]);
      slots[i] = pool[i];
    }
  }
  return graph;
}

}  // namespace

FrameGraph sample_frame(const SimConfig& config, std::uint64_t trial_index) {
  check_config(config);
  const DegreeCdf cdf(config.dist);
  std::vector<int> pool(config.num_slots());
  for (int i = 0; i < static_cast<int>(pool.size()); ++i) pool[i] = i;
  return sample_frame_impl(config, cdf, trial_index, pool);
}

DecodeResult sic_decode(const FrameGraph& graph, int mpr) {
  if (mpr < 1) throw std::invalid_argument("mpr must be >= 1");
  std::vector<int> slot_degree(graph.num_slots, 0);
  for (const auto& slots : graph.assignments) {
    for (int s : slots) {
      if (s < 0 || s >= graph.num_slots) {
        throw std::invalid_argument("slot index out of range");
      }
      ++slot_degree[s];
    }
  }
  DecodeResult result;
  result.decoded.assign(graph.num_users, 0);
  std::vector<int> batch;
  while (true) {
    // Decoding phase: every live user with a replica in a slot of current
    // degree <= K is decodable this iteration.
    batch.clear();
    for (int u = 0; u < graph.num_users; ++u) {
      if (result.decoded[u]) continue;
      for (int s : graph.assignments[u]) {
        if (slot_degree[s] <= mpr) {
          batch.push_back(u);
          break;
        }
      }
    }
    if (batch.empty()) break;
    ++result.iterations;
    // Subtracting phase: remove all edges of the decoded users.
    for (int u : batch) {
      result.decoded[u] = 1;
      ++result.num_decoded;
      for (int s : graph.assignments[u]) --slot_degree[s];
    }
  }
  return result;
}

SimReport run_trials(const SimConfig& config) {
  check_config(config);
  const DegreeCdf cdf(config.dist);
  std::vector<int> undecoded(config.trials, 0);
  const auto worker = [&](int first) {
    std::vector<int> pool(config.num_slots());
    for (int i = 0; i < static_cast<int>(pool.size()); ++i) pool[i] = i;
    for (int t = first; t < config.trials; t += config.threads) {
      const FrameGraph graph = sample_frame_impl(config, cdf, t, pool);
      const DecodeResult decoded = sic_decode(graph, config.mpr);
      undecoded[t] = config.num_users - decoded.num_decoded;
    }
  };
  if (config.threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(config.threads);
    for (int i = 0; i < config.threads; ++i) threads.emplace_back(worker, i);
    for (auto& th : threads) th.join();
  }
  long long lost = 0;
  for (int count : undecoded) lost += count;
  const long long observed =
      static_cast<long long>(config.num_users) * config.trials;
  const double plr = static_cast<double>(lost) / static_cast<double>(observed);

  // Wilson 95% score interval; well-behaved at plr near 0.
  const double z = 1.959963984540054;
  const double n = static_cast<double>(observed);
  const double z2 = z * z;
  const double center = (plr + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half =
      z * std::sqrt(plr * (1.0 - plr) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);

  SimReport report;
  report.plr_estimate = plr;
  // clamp against rounding so the estimate always sits inside the interval
  report.ci_low = std::min(std::max(0.0, center - half), plr);
  report.ci_high = std::max(std::min(1.0, center + half), plr);
  report.realized_load = config.realized_load();
  report.throughput = report.realized_load * (1.0 - plr);
  report.users_observed = observed;
  return report;
}

std::vector<CurvePoint> plr_curve(SimConfig base, const std::vector<double>& loads) {
  if (loads.empty()) throw std::invalid_argument("loads must be nonempty");
  std::vector<CurvePoint> points;
  points.reserve(loads.size());
  for (std::size_t j = 0; j < loads.size(); ++j) {
    if (loads[j] <= 0.0) throw std::invalid_argument("loads must be positive");
    base.load = loads[j];
    base.load_index = j;
    points.push_back({loads[j], run_trials(base)});
  }
  return points;
}

}  // namespace irsa
