#pragma once

#include <cmath>
#include <cstddef>

namespace lindiff {

/// Neumaier-compensated running sum.
template <typename Scalar>
class CompensatedSum {
 public:
  void add(Scalar x) {
    const Scalar t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      carry_ += (sum_ - t) + x;
    else
      carry_ += (x - t) + sum_;
    sum_ = t;
    ++count_;
  }

  Scalar value() const { return sum_ + carry_; }
  std::size_t count() const { return count_; }

 private:
  Scalar sum_{0};
  Scalar carry_{0};
  std::size_t count_{0};
};

/// Streaming mean and standard error built on compensated sums.
template <typename Scalar>
class MeanAccumulator {
 public:
  void add(Scalar x) {
    sum_.add(x);
    squares_.add(x * x);
  }

  std::size_t count() const { return sum_.count(); }
  Scalar mean() const { return count() ? sum_.value() / Scalar(count()) : Scalar(0); }

  /// Unbiased sample standard deviation; zero for fewer than two values.
  Scalar stddev() const {
    const std::size_t n = count();
    if (n < 2) return Scalar(0);
    const Scalar m = mean();
    const Scalar var = (squares_.value() - Scalar(n) * m * m) / Scalar(n - 1);
    return var > 0 ? std::sqrt(var) : Scalar(0);
  }

  Scalar stderror() const {
    return count() ? stddev() / std::sqrt(Scalar(count())) : Scalar(0);
  }

 private:
  CompensatedSum<Scalar> sum_;
  CompensatedSum<Scalar> squares_;
};

}  // namespace lindiff
