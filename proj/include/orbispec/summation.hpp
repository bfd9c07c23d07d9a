#pragma once

#include <cstddef>

namespace orbispec {

// Neumaier-compensated accumulator.  Every series in the library is summed
// through this in a documented deterministic order, so repeated runs produce
// bit-identical results.
class CompensatedSum {
 public:
  void add(double x) {
    double t = s_ + x;
    if ((s_ >= 0 ? s_ : -s_) >= (x >= 0 ? x : -x))
      c_ += (s_ - t) + x;
    else
      c_ += (x - t) + s_;
    s_ = t;
    ++n_;
  }
  double value() const { return s_ + c_; }
  std::size_t count() const { return n_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
  std::size_t n_ = 0;
};

}  // namespace orbispec
