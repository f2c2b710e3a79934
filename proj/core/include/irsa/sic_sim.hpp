#pragma once

#include <cstdint>
#include <vector>

#include "irsa/degree_dist.hpp"

namespace irsa {

/// One sampled bipartite user/slot frame: assignments[u] lists the distinct
/// slot indices carrying user u's replicas.
struct FrameGraph {
  int num_users = 0;
  int num_slots = 0;
  std::vector<std::vector<int>> assignments;
};

struct SimConfig {
  DegreeDistribution dist;
  int mpr = 1;          // K
  int num_users = 1000; // M
  double load = 1.0;    // G; slots per frame is round(M/G)
  int trials = 100;
  std::uint64_t seed = 1;
  int threads = 1;
  std::uint64_t load_index = 0;  // stream index for per-load seed derivation

  int num_slots() const;
  double realized_load() const;  // M / num_slots()
};

struct DecodeResult {
  std::vector<std::uint8_t> decoded;  // per-user flag
  int num_decoded = 0;
  int iterations = 0;  // decode+subtract rounds until the peeling fixed point
};

struct SimReport {
  double plr_estimate = 0.0;
  double ci_low = 0.0;   // Wilson 95% interval
  double ci_high = 0.0;
  double throughput = 0.0;  // realized_load * (1 - plr_estimate)
  long long users_observed = 0;
  double realized_load = 0.0;
};

struct CurvePoint {
  double load = 0.0;
  SimReport report;
};

/// Degrees drawn by inverse CDF, slots by partial Fisher-Yates; deterministic
/// given (seed, load_index, trial_index).
FrameGraph sample_frame(const SimConfig& config, std::uint64_t trial_index);

/// Synchronous peeling: each iteration decodes every user holding a replica
/// in a slot of current degree <= K, then subtracts all their edges.
DecodeResult sic_decode(const FrameGraph& graph, int mpr);

/// `trials` independent frames; PLR = undecoded users / (M * trials).
/// Deterministic for a fixed seed regardless of the thread count.
SimReport run_trials(const SimConfig& config);

/// run_trials per load with per-load derived seed streams, ordered as given.
std::vector<CurvePoint> plr_curve(SimConfig base, const std::vector<double>& loads);

}  // namespace irsa
