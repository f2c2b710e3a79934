#pragma once

#include <utility>
#include <vector>

namespace irsa {

/// Per-slot power figures; slot duration is fixed at 1.
struct PowerModel {
  double p_tx = 50.0;        // transmit power, watts
  double p_c = 0.1;          // idle/circuit power per slot, watts
  double noise_power = 1.0;  // sigma^2, watts
  int num_users = 1000;      // M

  double ratio() const { return num_users * p_c / p_tx; }  // M P_c / P_tx
};

struct EnergyProfile {
  int truncation = 0;   // L
  double coeff_a = 0.0; // A_L, mean degree of the truncated-exponential dist
  double coeff_b = 0.0; // B_L = 1 / load bound
  double consumption = 0.0;  // E_L, joules per frame per user
  double efficiency = 0.0;   // Gamma_L, bits per joule per unit bandwidth
};

struct OptimalL {
  int truncation = 1;
  bool saturated = false;  // ratio beyond the validated ladder
};

inline constexpr double kDefaultAStar = 1.73;

/// (A_L, B_L) with E_L = P_tx (A_L + B_L * M P_c / P_tx).
std::pair<double, double> coefficients(int truncation, double a_star = kDefaultAStar);

/// Per-user per-frame energy E_L.
double energy(int truncation, const PowerModel& model, double a_star = kDefaultAStar);

/// Gamma_L = log2(1 + P_tx / sigma^2) / E_L.
double efficiency(int truncation, const PowerModel& model, double a_star = kDefaultAStar);

/// dA/|dB| ladder value: sum_{i=1..L} a^i (L+1-i) / (i+1)!, strictly
/// increasing in L. E_{L+1} < E_L exactly when this is below M P_c / P_tx.
double delta_ratio(int truncation, double a_star = kDefaultAStar);

/// L* bracketing the model ratio on the delta_ratio ladder; ties resolve to
/// the smaller L, ratios beyond the ladder saturate at l_max.
OptimalL optimal_L(const PowerModel& model, double a_star = kDefaultAStar, int l_max = 20);

/// delta_ratio for L = 1..l_max.
std::vector<double> table1(double a_star = kDefaultAStar, int l_max = 7);

EnergyProfile profile(int truncation, const PowerModel& model, double a_star = kDefaultAStar);

}  // namespace irsa
