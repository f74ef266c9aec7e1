#pragma once

#include <cmath>

namespace tempcorr {

// Compensated accumulator (Neumaier variant of Kahan summation). Long
// alternating sums keep near-1-ulp accuracy, and the running sum of absolute
// values lets callers detect catastrophic cancellation.
class StableSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
        abs_ += std::abs(x);
    }

    double value() const { return sum_ + comp_; }
    double abs_total() const { return abs_; }

    // Ratio of accumulated magnitude to the result; large values mean the
    // digits left after cancellation are unreliable.
    double condition() const {
        double v = std::abs(value());
        if (v == 0.0) return abs_ == 0.0 ? 1.0 : 1e300;
        return abs_ / v;
    }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
    double abs_ = 0.0;
};

}  // namespace tempcorr
