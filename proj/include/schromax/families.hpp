#pragma once

#include <cstdint>
#include <filesystem>

#include "schromax/grid.hpp"

namespace schromax {

/// e^{-|x|^2 / 2} sampled on the grid.
GridFunction gaussian(const GridSpec& spec);

/// e^{i lambda x_1} e^{-|x|^2 / 2}.
GridFunction modulated_gaussian(const GridSpec& spec, double lambda);

/// Closed-form transform (2 pi)^{n/2} e^{-|xi - lambda e_1|^2 / 2} of the
/// modulated Gaussian, sampled on the frequency grid.
SpectralFunction modulated_gaussian_spectrum(const GridSpec& spec, double lambda);

/// Coefficient 1 where |xi| <= radius, 0 elsewhere.
SpectralFunction indicator_spectrum(const GridSpec& spec, double radius);

/// Independent uniform draws from the unit disk for |xi| <= radius, zero
/// elsewhere. Deterministic in seed.
SpectralFunction random_band_limited(const GridSpec& spec, double radius, std::uint64_t seed);

/// Reads N^n lines "re im" in storage order (FFT frequency order).
SpectralFunction load_spectrum(const std::filesystem::path& path, const GridSpec& spec);

}  // namespace schromax
