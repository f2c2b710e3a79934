#include "irsa/density_evolution.hpp"

#include <algorithm>
#include <cmath>

namespace irsa {

namespace {

void check_params(const EvolutionParams& params) {
  if (params.load <= 0.0 || !std::isfinite(params.load)) {
    throw std::invalid_argument("load must be positive");
  }
  if (params.mpr < 1) {
    throw std::invalid_argument("mpr must be at least 1");
  }
}

}  // namespace

double de_step(double p, const EvolutionParams& params) {
  check_params(params);
  if (p < 0.0 || p > 1.0) {
    throw std::domain_error("de_step: p outside [0, 1]");
  }
  const double x = params.load * params.dist.derivative(p);
  // Poisson tail sum_{k<K} x^k/k!, built incrementally to stay finite for
  // large K.
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < params.mpr; ++k) {
    term *= x / k;
    sum += term;
  }
  const double value = 1.0 - std::exp(-x) * sum;
  return std::clamp(value, 0.0, 1.0);
}

EvolutionTrace run_evolution(const EvolutionParams& params, int max_iters, double tol) {
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
  EvolutionTrace trace;
  double p = 1.0;
  trace.p_values.push_back(p);
  for (int i = 0; i < max_iters; ++i) {
    const double next = de_step(p, params);
    trace.p_values.push_back(next);
    trace.iterations = i + 1;
    if (std::abs(p - next) < tol) {
      trace.converged = true;
      break;
    }
    p = next;
  }
  return trace;
}

double residual(double p, const EvolutionParams& params) {
  return p - de_step(p, params);
}

double stop_function_k2(double p, const EvolutionParams& params) {
  if (params.mpr != 2) {
    throw std::invalid_argument("stop_function_k2 requires mpr == 2");
  }
  if (p < 0.0 || p >= 1.0) {
    throw std::domain_error("stop_function_k2: p outside [0, 1)");
  }
  const double x = params.load * params.dist.derivative(p);
  return x - std::log1p(x) + std::log1p(-p);
}

FixedPointReport largest_root(const EvolutionParams& params, int max_iters, double tol) {
  const EvolutionTrace trace = run_evolution(params, max_iters, tol);
  FixedPointReport report;
  report.p_star = trace.p_values.back();
  report.plr = params.dist.evaluate(report.p_star);
  report.decodable = report.p_star < kDecodeTolerance;
  report.converged = trace.converged;
  return report;
}

double threshold_search(const DegreeDistribution& dist, int mpr, double g_tol,
                        double g_lo, double g_hi) {
  if (g_tol <= 0.0) throw std::invalid_argument("g_tol must be positive");
  if (g_hi <= 0.0) g_hi = static_cast<double>(mpr);
  const auto decodable = [&](double g) {
    return largest_root(EvolutionParams{g, mpr, dist}).decodable;
  };
  if (!decodable(g_lo)) {
    throw convergence_error("threshold bracket: not decodable at g_lo");
  }
  if (decodable(g_hi)) {
    throw convergence_error("threshold bracket: still decodable at g_hi");
  }
  for (int step = 0; step < 60 && g_hi - g_lo > g_tol; ++step) {
    const double mid = 0.5 * (g_lo + g_hi);
    (decodable(mid) ? g_lo : g_hi) = mid;
  }
  return 0.5 * (g_lo + g_hi);
}

GridCertificate certify_root_free(const DegreeDistribution& dist, int mpr,
                                  double load, int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("grid_points must be >= 2");
  const EvolutionParams params{load, mpr, dist};
  GridCertificate cert;
  cert.grid_points = grid_points;
  cert.root_free = true;
  cert.min_residual = residual(1.0, params);
  cert.argmin_p = 1.0;
  for (int j = 1; j <= grid_points; ++j) {
    const double p = static_cast<double>(j) / grid_points;
    const double r = residual(p, params);
    if (r < cert.min_residual) {
      cert.min_residual = r;
      cert.argmin_p = p;
    }
    if (r <= 0.0) cert.root_free = false;
  }
  // Local refinement of the minimum (golden-section, 50 steps).
  const double h = 1.0 / grid_points;
  double lo = std::max(cert.argmin_p - h, h * 1e-6);
  double hi = std::min(cert.argmin_p + h, 1.0);
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = residual(x1, params);
  double f2 = residual(x2, params);
  for (int i = 0; i < 50; ++i) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = residual(x1, params);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = residual(x2, params);
    }
  }
  const double refined_p = 0.5 * (lo + hi);
  const double refined = residual(refined_p, params);
  if (refined < cert.min_residual) {
    cert.min_residual = refined;
    cert.argmin_p = refined_p;
  }
  if (cert.min_residual <= 0.0) cert.root_free = false;
  return cert;
}

}  // namespace irsa
