#pragma once

#include <complex>
#include <span>

#include "schromax/grid.hpp"

namespace schromax::detail {

enum class FftDirection { forward, backward };

/// Unnormalized in-place DFT over the grid's n-dimensional array.
/// Forward uses e^{-2 pi i k j / N}, backward e^{+2 pi i k j / N}.
/// Plans are cached per (dim, N, direction); execution is thread-safe.
void fft_inplace(std::span<Complex> data, const GridSpec& spec, FftDirection direction);

}  // namespace schromax::detail
