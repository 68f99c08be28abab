#include "schromax/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace schromax {

void CompensatedSum::add(double value) noexcept {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
        compensation_ += (sum_ - t) + value;
    } else {
        compensation_ += (value - t) + sum_;
    }
    sum_ = t;
}

double compensated_sum(std::span<const double> values) noexcept {
    CompensatedSum acc;
    for (double v : values) acc.add(v);
    return acc.value();
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("least_squares_slope: need at least two (x, y) pairs");
    }
    const double n = static_cast<double>(x.size());
    const double mean_x = compensated_sum(x) / n;
    const double mean_y = compensated_sum(y) / n;
    CompensatedSum sxy, sxx;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mean_x;
        sxy.add(dx * (y[i] - mean_y));
        sxx.add(dx * dx);
    }
    if (sxx.value() <= 0.0) {
        throw std::invalid_argument("least_squares_slope: abscissae are all equal");
    }
    return sxy.value() / sxx.value();
}

}  // namespace schromax
