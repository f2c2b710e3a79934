#include "irsa/energy.hpp"

#include <cmath>
#include <stdexcept>

#include "irsa/design.hpp"

namespace irsa {

namespace {

void check(int truncation, double a_star) {
  if (truncation < 1) throw std::invalid_argument("truncation must be >= 1");
  if (a_star <= 0.0) throw std::invalid_argument("a_star must be positive");
}

void check_model(const PowerModel& model) {
  if (model.p_tx <= 0.0) throw std::invalid_argument("p_tx must be positive");
  if (model.p_c < 0.0) throw std::invalid_argument("p_c must be nonnegative");
  if (model.noise_power <= 0.0) throw std::invalid_argument("noise_power must be positive");
  if (model.num_users < 1) throw std::invalid_argument("num_users must be >= 1");
}

}  // namespace

std::pair<double, double> coefficients(int truncation, double a_star) {
  check(truncation, a_star);
  const double denom = load_bound(a_star, truncation);
  // sum_{u=1..L} a^u/u!, the un-normalized mean degree
  double term = a_star;
  double sum = 0.0;
  for (int u = 1; u <= truncation; ++u) {
    sum += term;
    term *= a_star / (u + 1);
  }
  return {sum / denom, 1.0 / denom};
}

double energy(int truncation, const PowerModel& model, double a_star) {
  check_model(model);
  const auto [a_l, b_l] = coefficients(truncation, a_star);
  return model.p_tx * (a_l + b_l * model.ratio());
}

double efficiency(int truncation, const PowerModel& model, double a_star) {
  return std::log2(1.0 + model.p_tx / model.noise_power) /
         energy(truncation, model, a_star);
}

double delta_ratio(int truncation, double a_star) {
  check(truncation, a_star);
  double term = a_star / 2.0;  // a^i/(i+1)! at i = 1
  double sum = 0.0;
  for (int i = 1; i <= truncation; ++i) {
    sum += term * (truncation + 1 - i);
    term *= a_star / (i + 2);
  }
  return sum;
}

OptimalL optimal_L(const PowerModel& model, double a_star, int l_max) {
  check_model(model);
  if (l_max < 1) throw std::invalid_argument("l_max must be >= 1");
  const double r = model.ratio();
  // Smallest L whose ladder value reaches r; ties go to the smaller L since
  // the energies are then equal.
  for (int l = 1; l <= l_max; ++l) {
    if (delta_ratio(l, a_star) >= r) return {l, false};
  }
  return {l_max, true};
}

std::vector<double> table1(double a_star, int l_max) {
  if (l_max < 1) throw std::invalid_argument("l_max must be >= 1");
  std::vector<double> out;
  out.reserve(l_max);
  for (int l = 1; l <= l_max; ++l) out.push_back(delta_ratio(l, a_star));
  return out;
}

EnergyProfile profile(int truncation, const PowerModel& model, double a_star) {
  check_model(model);
  const auto [a_l, b_l] = coefficients(truncation, a_star);
  const double e = model.p_tx * (a_l + b_l * model.ratio());
  return {truncation, a_l, b_l, e,
          std::log2(1.0 + model.p_tx / model.noise_power) / e};
}

}  // namespace irsa
