#pragma once

// Periodic discretization of R^n on the torus [-L/2, L/2)^n.
//
// Transforms use the non-unitary convention
//   fhat(xi) = int e^{-i xi.x} f(x) dx,
//   f(x)     = (2 pi)^{-n} int e^{i xi.x} fhat(xi) dxi,
// realized by quadrature: forward sums carry h^n, inverse sums carry
// (2 pi / L)^n (2 pi)^{-n}. Arrays are row-major with axis 0 slowest;
// frequencies are stored in FFT order (0, 1, ..., N/2-1, -N/2, ..., -1).

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace schromax {

using Complex = std::complex<double>;

inline constexpr int kMaxDim = 3;

class GridSpec {
public:
    /// Throws std::invalid_argument unless 1 <= dim <= 3, length > 0 and
    /// samples is a power of two >= 16.
    GridSpec(int dim, double length, std::size_t samples);

    /// Default grids: L = 40, N = 4096 in 1-D; L = 20, N = 256 in 2-D;
    /// L = 20, N = 64 in 3-D.
    static GridSpec standard(int dim);

    int dim() const noexcept { return dim_; }
    double length() const noexcept { return length_; }
    std::size_t samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return size_; }
    double spacing() const noexcept { return length_ / static_cast<double>(samples_); }
    double frequency_step() const noexcept;
    /// Largest representable |xi_j| along one axis, pi N / L.
    double nyquist() const noexcept;
    /// Cell volume h^n and dual cell volume (2 pi / L)^n.
    double cell_volume() const noexcept;
    double dual_cell_volume() const noexcept;

    double position(std::size_t j) const noexcept;
    /// Signed frequency of per-axis index j (FFT order).
    double frequency(std::size_t j) const noexcept;
    /// Signed integer wavenumber of per-axis index j.
    long wavenumber(std::size_t j) const noexcept;

    std::array<std::size_t, kMaxDim> axis_indices(std::size_t flat) const noexcept;
    double frequency_norm_sq(std::size_t flat) const noexcept;
    /// |xi|^2 for every flat index.
    std::vector<double> frequency_norms_sq() const;
    /// Frequency components, laid out as dim() consecutive blocks of size().
    std::vector<double> frequency_components() const;
    /// Spatial coordinates of a flat index.
    std::array<double, kMaxDim> coordinates(std::size_t flat) const noexcept;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
    int dim_;
    double length_;
    std::size_t samples_;
    std::size_t size_;
};

/// Complex samples of f on the spatial grid.
class GridFunction {
public:
    GridFunction(GridSpec spec, std::vector<Complex> values);
    static GridFunction zeros(const GridSpec& spec);

    const GridSpec& spec() const noexcept { return spec_; }
    std::span<const Complex> values() const noexcept { return values_; }
    Complex operator[](std::size_t i) const noexcept { return values_[i]; }

private:
    GridSpec spec_;
    std::vector<Complex> values_;
};

/// Complex samples of fhat on the frequency grid.
class SpectralFunction {
public:
    SpectralFunction(GridSpec spec, std::vector<Complex> coefficients);
    static SpectralFunction zeros(const GridSpec& spec);

    const GridSpec& spec() const noexcept { return spec_; }
    std::span<const Complex> coefficients() const noexcept { return coefficients_; }
    Complex operator[](std::size_t i) const noexcept { return coefficients_[i]; }

private:
    GridSpec spec_;
    std::vector<Complex> coefficients_;
};

SpectralFunction to_spectrum(const GridFunction& f);
GridFunction from_spectrum(const SpectralFunction& spectrum);

/// (sum |f|^2 h^n)^{1/2}, compensated summation in storage order.
double l2_norm(const GridFunction& f);
double l2_norm(std::span<const Complex> values, const GridSpec& spec);

/// (sum |F|^2 (2 pi / L)^n)^{1/2}. Plancherel: equals (2 pi)^{n/2} l2_norm.
double frequency_norm(const SpectralFunction& spectrum);

}  // namespace schromax
