#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lewis {

/// Strictly positive, finite length-n vector with a cached l1 norm.
///
/// Holds Lewis weights, their approximations, and (weighted) leverage scores.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> values);

  static WeightVector constant(std::size_t n, double value);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }

  double l1() const noexcept { return l1_; }
  double min() const;
  double max() const;

  WeightVector scaled(double factor) const;

  /// True if any entry sits at or below `floor`.
  bool touches_floor(double floor) const;

 private:
  std::vector<double> values_;
  double l1_ = 0.0;
};

}  // namespace lewis
