#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace irsa {

/// Thrown on unreadable/unparseable input files.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Node-perspective degree distribution Lambda(x) = sum_r Lambda_r x^r,
/// stored as a sparse degree -> probability map.
///
/// Immutable after construction; safe to share across threads.
class DegreeDistribution {
 public:
  static constexpr int kMaxDegree = 64;
  /// Totals within this of 1 are accepted as-is.
  static constexpr double kSumTolerance = 1e-12;
  /// Totals within this of 1 are renormalized (hand-entered literature
  /// distributions like 0.5/0.28/0.22 land here); beyond it construction fails.
  static constexpr double kNormalizeTolerance = 1e-6;

  explicit DegreeDistribution(std::map<int, double> entries);

  /// Lambda(x) for x in [0,1].
  double evaluate(double x) const;
  /// Lambda'(x) = sum_r r Lambda_r x^(r-1).
  double derivative(double x) const;
  /// Lambda'(1), the average number of replicas per user.
  double mean_degree() const { return derivative(1.0); }

  const std::map<int, double>& entries() const { return entries_; }
  int min_degree() const { return entries_.begin()->first; }
  int max_degree() const { return entries_.rbegin()->first; }

  std::string to_json() const;
  static DegreeDistribution from_json(const std::string& text);
  static DegreeDistribution load_file(const std::string& path);

 private:
  std::map<int, double> entries_;
};

/// Edge-perspective view lambda_r = r Lambda_r / Lambda'(1).
class EdgeView {
 public:
  explicit EdgeView(std::map<int, double> entries) : entries_(std::move(entries)) {}

  /// lambda(x) = sum_r lambda_r x^(r-1).
  double evaluate(double x) const;

  const std::map<int, double>& entries() const { return entries_; }

 private:
  std::map<int, double> entries_;
};

EdgeView edge_perspective(const DegreeDistribution& dist);

/// Inverse of edge_perspective: Lambda_r = lambda_r * mean_degree / r.
DegreeDistribution node_perspective(const EdgeView& view, double mean_degree);

}  // namespace irsa
