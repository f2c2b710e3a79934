#include "irsa/design.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "irsa/density_evolution.hpp"

namespace irsa {

namespace {

// Scan ceiling for p: tilde_f falls to -inf at 1, so no local maximum sits
// beyond it.
constexpr double kScanTop = 1.0 - 1e-6;
constexpr int kScanPoints = 10000;
constexpr double kFdStep = 1e-7;  // central difference for general K

double deriv_p(double p, double a, int mpr) {
  if (mpr == 2) return tilde_f_prime(p, a);
  return (tilde_f(p + kFdStep, a, mpr) - tilde_f(p - kFdStep, a, mpr)) / (2.0 * kFdStep);
}

}  // namespace

double tilde_f(double p, double a, int mpr) {
  if (p < 0.0 || p >= 1.0) {
    throw std::domain_error("tilde_f: p outside [0, 1)");
  }
  if (a <= 0.0) throw std::invalid_argument("tilde_f: a must be positive");
  if (mpr < 1) throw std::invalid_argument("tilde_f: mpr must be >= 1");
  const double eap = std::exp(a * p);
  if (mpr == 2) {
    return eap - a * p + std::log1p(-p) - 1.0;
  }
  const double y = std::expm1(a * p);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < mpr; ++k) {
    term *= y / k;
    sum += term;
  }
  return eap - std::log(sum) + std::log1p(-p) - 1.0;
}

double tilde_f_prime(double p, double a) {
  if (p < 0.0 || p >= 1.0) {
    throw std::domain_error("tilde_f_prime: p outside [0, 1)");
  }
  return a * std::exp(a * p) - a - 1.0 / (1.0 - p);
}

std::optional<double> max_local_maximum(double a, int mpr) {
  std::optional<double> best;
  double prev_p = kScanTop / kScanPoints;
  double prev_d = deriv_p(prev_p, a, mpr);
  for (int j = 2; j < kScanPoints; ++j) {
    const double p = kScanTop * j / kScanPoints;
    const double d = deriv_p(p, a, mpr);
    if (prev_d > 0.0 && d <= 0.0) {
      // Local maximum inside [prev_p, p]; pin it down by bisection on the
      // derivative.
      double lo = prev_p, hi = p;
      for (int step = 0; step < 60; ++step) {
        const double mid = 0.5 * (lo + hi);
        (deriv_p(mid, a, mpr) > 0.0 ? lo : hi) = mid;
      }
      const double value = tilde_f(0.5 * (lo + hi), a, mpr);
      if (!best || value > *best) best = value;
    }
    prev_p = p;
    prev_d = d;
  }
  return best;
}

double find_a_star(const SearchConfig& config) {
  if (config.epsilon_target <= 0.0 || config.epsilon_target > config.epsilon_init) {
    throw std::invalid_argument("require 0 < epsilon_target <= epsilon_init");
  }
  if (config.mpr < 1) throw std::invalid_argument("mpr must be >= 1");
  const auto violates = [&](double a) {
    const auto peak = max_local_maximum(a, config.mpr);
    return peak.has_value() && *peak >= 0.0;  // a tie at 0 counts as violation
  };
  double a = 0.0;
  double eps = config.epsilon_init;
  while (true) {
    a += eps;
    if (a > 64.0) {
      throw convergence_error("find_a_star: no violation below a = 64");
    }
    if (violates(a)) {
      a -= eps;
      eps /= 10.0;
      if (eps < config.epsilon_target * (1.0 - 1e-9)) break;
    }
  }
  // The search walks a decimal grid; re-quantize through a decimal print to
  // strip the accumulated floating-point noise.
  const int decimals = std::max(0, static_cast<int>(std::ceil(-std::log10(config.epsilon_target) - 1e-9)));
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, a);
  return std::strtod(buf, nullptr);
}

DegreeDistribution truncated_exp_dist(double a_star, int truncation) {
  if (truncation < 1) throw std::invalid_argument("truncation must be >= 1");
  if (truncation + 1 > DegreeDistribution::kMaxDegree) {
    throw std::invalid_argument("truncation exceeds the degree cap");
  }
  if (a_star <= 0.0) throw std::invalid_argument("a_star must be positive");
  std::map<int, double> numerators;
  double term = a_star / 2.0;  // a^{s-1}/s! at s = 2
  double denom = 0.0;
  for (int s = 2; s <= truncation + 1; ++s) {
    numerators[s] = term;
    denom += term;
    term *= a_star / (s + 1);
  }
  for (auto& [degree, value] : numerators) value /= denom;
  return DegreeDistribution(std::move(numerators));
}

double load_bound(double a_star, int truncation) {
  if (truncation < 1) throw std::invalid_argument("truncation must be >= 1");
  if (a_star <= 0.0) throw std::invalid_argument("a_star must be positive");
  double term = a_star / 2.0;  // a^t/(t+1)! at t = 1
  double sum = 0.0;
  for (int t = 1; t <= truncation; ++t) {
    sum += term;
    term *= a_star / (t + 2);
  }
  return sum;
}

DesignOutcome design_distribution(const SearchConfig& config, int truncation) {
  const double a_star = find_a_star(config);
  return DesignOutcome{a_star, truncation, truncated_exp_dist(a_star, truncation),
                       load_bound(a_star, truncation)};
}

}  // namespace irsa
