#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>

namespace ubm {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(sum(exp(v))); -inf for an empty span or all -inf entries.
inline double log_sum_exp(std::span<const double> v) {
    double hi = kNegInf;
    for (double x : v) hi = std::max(hi, x);
    if (hi == kNegInf) return kNegInf;
    double acc = 0.0;
    for (double x : v) acc += std::exp(x - hi);
    return hi + std::log(acc);
}

// Neumaier-compensated running sum. Adding -inf makes the sum -inf for good.
class CompensatedSum {
public:
    void add(double x) {
        if (!std::isfinite(x) || !std::isfinite(sum_)) {
            sum_ += x;
            compensation_ = 0.0;
            return;
        }
        const double t = sum_ + x;
        compensation_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

inline double nats_to_bits(double nats) { return nats / std::numbers::ln2; }

}  // namespace ubm
