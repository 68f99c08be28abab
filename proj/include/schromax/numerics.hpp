#pragma once

#include <cstddef>
#include <span>

namespace schromax {

/// Neumaier-compensated accumulator. Summation order is the call order, so
/// results are reproducible bit for bit.
class CompensatedSum {
public:
    void add(double value) noexcept;
    double value() const noexcept { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

double compensated_sum(std::span<const double> values) noexcept;

/// Ordinary least-squares slope of y against x. Requires at least two
/// distinct abscissae.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

}  // namespace schromax
