#include "irsa/degree_dist.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace irsa {

DegreeDistribution::DegreeDistribution(std::map<int, double> entries) {
  if (entries.empty()) {
    throw std::invalid_argument("degree distribution must have at least one entry");
  }
  double sum = 0.0;
  for (auto it = entries.begin(); it != entries.end();) {
    const auto [degree, prob] = *it;
    if (degree < 1 || degree > kMaxDegree) {
      throw std::invalid_argument("degree out of range [1, 64]: " + std::to_string(degree));
    }
    if (prob < 0.0 || prob > 1.0 || !std::isfinite(prob)) {
      throw std::invalid_argument("probability out of [0, 1] for degree " +
                                  std::to_string(degree));
    }
    if (prob == 0.0) {
      it = entries.erase(it);  // zero-probability entries are not stored
      continue;
    }
    sum += prob;
    ++it;
  }
  if (entries.empty()) {
    throw std::invalid_argument("degree distribution has only zero-probability entries");
  }
  const double off = std::abs(sum - 1.0);
  if (off > kNormalizeTolerance) {
    std::ostringstream msg;
    msg << "degree distribution probabilities sum to " << sum << ", not 1";
    throw std::invalid_argument(msg.str());
  }
  if (off > kSumTolerance) {
    std::cerr << "irsa: renormalizing degree distribution (sum off by " << sum - 1.0
              << ")\n";
    for (auto& [degree, prob] : entries) prob /= sum;
  }
  entries_ = std::move(entries);
}

double DegreeDistribution::evaluate(double x) const {
  if (x < 0.0 || x > 1.0) {
    throw std::domain_error("evaluate: x outside [0, 1]");
  }
  double value = 0.0;
  for (const auto& [degree, prob] : entries_) {
    value += prob * std::pow(x, degree);
  }
  return value;
}

double DegreeDistribution::derivative(double x) const {
  if (x < 0.0 || x > 1.0) {
    throw std::domain_error("derivative: x outside [0, 1]");
  }
  double value = 0.0;
  for (const auto& [degree, prob] : entries_) {
    value += degree * prob * std::pow(x, degree - 1);
  }
  return value;
}

std::string DegreeDistribution::to_json() const {
  nlohmann::ordered_json out;
  out["entries"] = nlohmann::ordered_json::array();
  for (const auto& [degree, prob] : entries_) {
    out["entries"].push_back({{"degree", degree}, {"prob", prob}});
  }
  return out.dump(2);
}

DegreeDistribution DegreeDistribution::from_json(const std::string& text) {
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw io_error(std::string("distribution JSON parse failure: ") + e.what());
  }
  if (!parsed.contains("entries") || !parsed["entries"].is_array()) {
    throw io_error("distribution JSON must contain an \"entries\" array");
  }
  std::map<int, double> entries;
  for (const auto& item : parsed["entries"]) {
    if (!item.contains("degree") || !item.contains("prob")) {
      throw io_error("each entry needs \"degree\" and \"prob\" fields");
    }
    const int degree = item["degree"].get<int>();
    const double prob = item["prob"].get<double>();
    if (entries.count(degree)) {
      throw io_error("duplicate degree in distribution file: " + std::to_string(degree));
    }
    entries[degree] = prob;
  }
  return DegreeDistribution(std::move(entries));
}

DegreeDistribution DegreeDistribution::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw io_error("cannot open distribution file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

double EdgeView::evaluate(double x) const {
  if (x < 0.0 || x > 1.0) {
    throw std::domain_error("evaluate: x outside [0, 1]");
  }
  double value = 0.0;
  for (const auto& [degree, prob] : entries_) {
    value += prob * std::pow(x, degree - 1);
  }
  return value;
}

EdgeView edge_perspective(const DegreeDistribution& dist) {
  const double mean = dist.mean_degree();
  if (mean <= 0.0) {
    throw std::invalid_argument("degenerate distribution: zero mean degree");
  }
  std::map<int, double> entries;
  for (const auto& [degree, prob] : dist.entries()) {
    entries[degree] = degree * prob / mean;
  }
  return EdgeView(std::move(entries));
}

DegreeDistribution node_perspective(const EdgeView& view, double mean_degree) {
  std::map<int, double> entries;
  for (const auto& [degree, prob] : view.entries()) {
    entries[degree] = prob * mean_degree / degree;
  }
  return DegreeDistribution(std::move(entries));
}

}  // namespace irsa
