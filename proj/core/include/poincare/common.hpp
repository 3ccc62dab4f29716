#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace poincare {

enum class ErrorCode {
  invalid_argument,
  bad_shape,
  unbounded_domain,
  gradient_free,
  singular_cell,
  no_convergence,
  degenerate_domain,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/** Kahan-Babuska (Neumaier) compensated accumulator.
 *
 * Carries a correction term so the running sum stays near the exact value
 * even when term magnitudes differ wildly. The result depends only on the
 * order terms were added, which keeps reductions bit-reproducible. */
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace poincare
