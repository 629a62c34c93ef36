#pragma once

#include <cmath>
#include <span>

namespace linkrank {

// Neumaier-compensated accumulator; keeps long reductions accurate enough
// for the 1e-12 mass-conservation and normalization guarantees.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
  CompensatedSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

inline double l1_norm(std::span<const double> xs) {
  CompensatedSum acc;
  for (double x : xs) acc.add(std::abs(x));
  return acc.value();
}

}  // namespace linkrank
