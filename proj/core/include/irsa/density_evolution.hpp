#pragma once

#include <stdexcept>
#include <vector>

#include "irsa/degree_dist.hpp"

namespace irsa {

/// Thrown when an iterative method cannot bracket or reach its target.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs of the asymptotic SIC recursion: load G, MPR capability K and the
/// user transmission distribution.
struct EvolutionParams {
  double load = 1.0;  // G, packets per slot
  int mpr = 1;        // K, max packets decodable per slot
  DegreeDistribution dist;
};

struct EvolutionTrace {
  std::vector<double> p_values;  // p_0 = 1 followed by the iterates
  bool converged = false;
  int iterations = 0;
};

struct FixedPointReport {
  double p_star = 1.0;  // largest fixed point of the recursion
  double plr = 1.0;     // Lambda(p_star)
  bool decodable = false;
  bool converged = false;
};

/// Result of checking that the fixed-point residual has no zero on (0,1].
struct GridCertificate {
  bool root_free = false;
  double min_residual = 0.0;
  double argmin_p = 0.0;
  int grid_points = 0;
};

/// p_star below this counts as fully decodable.
inline constexpr double kDecodeTolerance = 1e-6;
inline constexpr int kDefaultMaxIters = 100000;
inline constexpr double kDefaultTol = 1e-12;

/// One SIC iteration: p -> 1 - exp(-G Lambda'(p)) * sum_{k<K} (G Lambda'(p))^k / k!.
/// Monotone nondecreasing in both p and G.
double de_step(double p, const EvolutionParams& params);

/// Iterates de_step from p_0 = 1 until |p_i - p_{i-1}| < tol or max_iters.
EvolutionTrace run_evolution(const EvolutionParams& params,
                             int max_iters = kDefaultMaxIters,
                             double tol = kDefaultTol);

/// p - de_step(p); zero exactly at fixed points, positive throughout (0,1]
/// iff the load is decodable.
double residual(double p, const EvolutionParams& params);

/// K=2 stopping function f(p) = G Lambda'(p) - ln(1 + G Lambda'(p)) + ln(1-p).
/// Sign-opposite to residual away from fixed points. Requires mpr == 2.
double stop_function_k2(double p, const EvolutionParams& params);

/// Largest fixed point (limit of run_evolution from p_0 = 1) and the
/// asymptotic packet loss rate Lambda(p_star).
FixedPointReport largest_root(const EvolutionParams& params,
                              int max_iters = kDefaultMaxIters,
                              double tol = kDefaultTol);

/// Bisection on G for the load threshold G*: decodable below, stuck above.
/// g_hi <= 0 selects the default bracket top of K packets/slot.
/// Throws convergence_error if the bracket does not straddle the threshold.
double threshold_search(const DegreeDistribution& dist, int mpr, double g_tol,
                        double g_lo = 1e-3, double g_hi = 0.0);

/// Evaluates the residual on a uniform grid over (0,1], refining around the
/// minimum; root_free certifies the no-real-root decodability condition.
GridCertificate certify_root_free(const DegreeDistribution& dist, int mpr,
                                  double load, int grid_points = 10000);

}  // namespace irsa
