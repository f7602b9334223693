#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace bernprim::detail {

// Shortest decimal form that reads back to the same double, locale-free.
// Integral values below 1e15 print without an exponent.
inline std::string format_double(double v) {
  char buf[64];
  const bool integral = std::abs(v) < 1e15 && v == std::trunc(v);
  const auto res = integral ? std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed)
                            : std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace bernprim::detail
