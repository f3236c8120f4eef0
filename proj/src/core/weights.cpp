#include "lewis/weights.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lewis/errors.hpp"

namespace lewis {

namespace {

// Neumaier summation; keeps the cached norm within a few ulps of the true sum.
double compensated_sum(std::span<const double> xs) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

}  // namespace

WeightVector::WeightVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InputError("weight vector must be non-empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double x = values_[i];
    if (!std::isfinite(x) || x <= 0.0) {
      throw InputError("weight vector entry " + std::to_string(i) +
                       " is not strictly positive and finite (" + std::to_string(x) + ")");
    }
  }
  l1_ = compensated_sum(values_);
}

WeightVector WeightVector::constant(std::size_t n, double value) {
  return WeightVector(std::vector<double>(n, value));
}

double WeightVector::min() const { return *std::min_element(values_.begin(), values_.end()); }

double WeightVector::max() const { return *std::max_element(values_.begin(), values_.end()); }

WeightVector WeightVector::scaled(double factor) const {
  std::vector<double> out(values_);
  for (double& x : out) x *= factor;
  return WeightVector(std::move(out));
}

bool WeightVector::touches_floor(double floor) const {
  return std::any_of(values_.begin(), values_.end(), [floor](double x) { return x <= floor; });
}

}  // namespace lewis
