#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "schromax/grid.hpp"

namespace schromax::test {

inline std::vector<Complex> random_values(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<Complex> v(count);
    for (auto& z : v) z = {normal(rng), normal(rng)};
    return v;
}

inline double max_abs_diff(std::span<const Complex> x, std::span<const Complex> y) {
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
    return d;
}

inline double max_abs(std::span<const Complex> x) {
    double d = 0.0;
    for (auto z : x) d = std::max(d, std::abs(z));
    return d;
}

// Plain O(N^2) DFT of a 1-D sample vector, forward sign, no scaling.
inline std::vector<Complex> naive_dft(std::span<const Complex> x) {
    const std::size_t n = x.size();
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc{};
        for (std::size_t j = 0; j < n; ++j) {
            const double angle = -2.0 * M_PI * static_cast<double>((k * j) % n) / static_cast<double>(n);
            acc += x[j] * Complex(std::cos(angle), std::sin(angle));
        }
        out[k] = acc;
    }
    return out;
}

}  // namespace schromax::test
