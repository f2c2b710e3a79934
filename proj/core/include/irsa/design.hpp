#pragma once

#include <optional>

#include "irsa/degree_dist.hpp"

namespace irsa {

/// Digit-by-digit search settings for the optimal exponential parameter a*.
struct SearchConfig {
  double epsilon_init = 0.1;    // initial step
  double epsilon_target = 0.01; // objective precision
  int mpr = 2;
};

struct DesignOutcome {
  double a_star = 0.0;
  int truncation = 0;  // L, support is degrees 2..L+1
  DegreeDistribution dist;
  double load_bound = 0.0;
};

/// Approximated stopping function with exp(a p) - 1 in place of G Lambda'(p).
/// K=2: e^{ap} - ap + ln(1-p) - 1.
/// General K: e^{ap} - ln(sum_{k<K} (e^{ap}-1)^k / k!) + ln(1-p) - 1,
/// which reduces to the K=2 form exactly.
double tilde_f(double p, double a, int mpr);

/// d/dp of the K=2 form: a e^{ap} - a - (1-p)^{-1}.
double tilde_f_prime(double p, double a);

/// Largest local-maximum value of tilde_f on (0,1), or nullopt when the
/// function is monotone decreasing there.
std::optional<double> max_local_maximum(double a, int mpr);

/// Largest a, resolved to epsilon_target, keeping tilde_f negative on (0,1):
/// step by epsilon, back off at the first violation, refine epsilon by 10.
double find_a_star(const SearchConfig& config);

/// Truncated-exponential distribution on degrees 2..L+1:
/// Lambda_s = (a^{s-1}/s!) / sum_{t=1..L} a^t/(t+1)!.
DegreeDistribution truncated_exp_dist(double a_star, int truncation);

/// Certified load bound sum_{t=1..L} a^t/(t+1)!; increases with L towards
/// (e^a - 1 - a)/a.
double load_bound(double a_star, int truncation);

/// find_a_star + truncated_exp_dist + load_bound in one call.
DesignOutcome design_distribution(const SearchConfig& config, int truncation);

}  // namespace irsa
