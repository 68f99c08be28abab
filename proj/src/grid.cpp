#include "schromax/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "schromax/fft.hpp"
#include "schromax/numerics.hpp"

namespace schromax {
namespace {

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

template <class T>
void require_finite(std::span<const T> values, const char* what) {
    for (const auto& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw std::invalid_argument(std::string(what) + ": non-finite entry");
        }
    }
}

// Parity of the summed per-axis indices. Wavenumbers k and k + N share
// parity for even N, so this is the sign (-1)^{k_1 + ... + k_n} of the
// e^{i xi.L/2} phase that shifts the DFT origin to -L/2.
bool odd_index_sum(const GridSpec& spec, std::size_t flat) {
    const auto idx = spec.axis_indices(flat);
    std::size_t total = 0;
    for (int d = 0; d < spec.dim(); ++d) total += idx[static_cast<std::size_t>(d)];
    return (total & 1U) != 0;
}

}  // namespace

GridSpec::GridSpec(int dim, double length, std::size_t samples)
    : dim_(dim), length_(length), samples_(samples), size_(1) {
    if (dim < 1 || dim > kMaxDim) {
        throw std::invalid_argument("GridSpec: spatial dimension must be 1, 2 or 3");
    }
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw std::invalid_argument("GridSpec: domain length must be positive and finite");
    }
    if (samples < 16 || !is_power_of_two(samples)) {
        throw std::invalid_argument("GridSpec: samples per axis must be a power of two >= 16");
    }
    for (int d = 0; d < dim; ++d) size_ *= samples;
}

GridSpec GridSpec::standard(int dim) {
    switch (dim) {
        case 1: return GridSpec(1, 40.0, 4096);
        case 2: return GridSpec(2, 20.0, 256);
        case 3: return GridSpec(3, 20.0, 64);
        default: throw std::invalid_argument("GridSpec: spatial dimension must be 1, 2 or 3");
    }
}

double GridSpec::frequency_step() const noexcept { return 2.0 * std::numbers::pi / length_; }

double GridSpec::nyquist() const noexcept {
    return std::numbers::pi * static_cast<double>(samples_) / length_;
}

double GridSpec::cell_volume() const noexcept { return std::pow(spacing(), dim_); }

double GridSpec::dual_cell_volume() const noexcept { return std::pow(frequency_step(), dim_); }

double GridSpec::position(std::size_t j) const noexcept {
    return -0.5 * length_ + static_cast<double>(j) * spacing();
}

long GridSpec::wavenumber(std::size_t j) const noexcept {
    const auto half = samples_ / 2;
    return j < half ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(samples_);
}

double GridSpec::frequency(std::size_t j) const noexcept {
    return frequency_step() * static_cast<double>(wavenumber(j));
}

std::array<std::size_t, kMaxDim> GridSpec::axis_indices(std::size_t flat) const noexcept {
    std::array<std::size_t, kMaxDim> idx{};
    for (int d = dim_ - 1; d >= 0; --d) {
        idx[static_cast<std::size_t>(d)] = flat % samples_;
        flat /= samples_;
    }
    return idx;
}

double GridSpec::frequency_norm_sq(std::size_t flat) const noexcept {
    const auto idx = axis_indices(flat);
    double sum = 0.0;
    for (int d = 0; d < dim_; ++d) {
        const double xi = frequency(idx[static_cast<std::size_t>(d)]);
        sum += xi * xi;
    }
    return sum;
}

std::vector<double> GridSpec::frequency_norms_sq() const {
    std::vector<double> out(size_);
    for (std::size_t i = 0; i < size_; ++i) out[i] = frequency_norm_sq(i);
    return out;
}

std::vector<double> GridSpec::frequency_components() const {
    std::vector<double> out(size_ * static_cast<std::size_t>(dim_));
    for (std::size_t i = 0; i < size_; ++i) {
        const auto idx = axis_indices(i);
        for (int d = 0; d < dim_; ++d) {
            out[static_cast<std::size_t>(d) * size_ + i] =
                frequency(idx[static_cast<std::size_t>(d)]);
        }
    }
    return out;
}

std::array<double, kMaxDim> GridSpec::coordinates(std::size_t flat) const noexcept {
    const auto idx = axis_indices(flat);
    std::array<double, kMaxDim> x{};
    for (int d = 0; d < dim_; ++d) {
        x[static_cast<std::size_t>(d)] = position(idx[static_cast<std::size_t>(d)]);
    }
    return x;
}

GridFunction::GridFunction(GridSpec spec, std::vector<Complex> values)
    : spec_(spec), values_(std::move(values)) {
    if (values_.size() != spec_.size()) {
        throw std::invalid_argument("GridFunction: value count must equal N^n");
    }
    require_finite<Complex>(values_, "GridFunction");
}

GridFunction GridFunction::zeros(const GridSpec& spec) {
    return GridFunction(spec, std::vector<Complex>(spec.size()));
}

SpectralFunction::SpectralFunction(GridSpec spec, std::vector<Complex> coefficients)
    : spec_(spec), coefficients_(std::move(coefficients)) {
    if (coefficients_.size() != spec_.size()) {
        throw std::invalid_argument("SpectralFunction: coefficient count must equal N^n");
    }
    require_finite<Complex>(coefficients_, "SpectralFunction");
}

SpectralFunction SpectralFunction::zeros(const GridSpec& spec) {
    return SpectralFunction(spec, std::vector<Complex>(spec.size()));
}

SpectralFunction to_spectrum(const GridFunction& f) {
    const GridSpec& spec = f.spec();
    std::vector<Complex> data(f.values().begin(), f.values().end());
    detail::fft_inplace(data, spec, detail::FftDirection::forward);
    const double scale = spec.cell_volume();
    for (std::size_t i = 0; i < data.size(); ++i) {
        data[i] *= odd_index_sum(spec, i) ? -scale : scale;
    }
    return SpectralFunction(spec, std::move(data));
}

GridFunction from_spectrum(const SpectralFunction& spectrum) {
    const GridSpec& spec = spectrum.spec();
    std::vector<Complex> data(spectrum.coefficients().begin(), spectrum.coefficients().end());
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (odd_index_sum(spec, i)) data[i] = -data[i];
    }
    detail::fft_inplace(data, spec, detail::FftDirection::backward);
    const double scale = 1.0 / std::pow(spec.length(), spec.dim());
    for (auto& v : data) v *= scale;
    return GridFunction(spec, std::move(data));
}

double l2_norm(std::span<const Complex> values, const GridSpec& spec) {
    CompensatedSum acc;
    for (const auto& v : values) acc.add(std::norm(v));
    return std::sqrt(acc.value() * spec.cell_volume());
}

double l2_norm(const GridFunction& f) { return l2_norm(f.values(), f.spec()); }

double frequency_norm(const SpectralFunction& spectrum) {
    CompensatedSum acc;
    for (const auto& v : spectrum.coefficients()) acc.add(std::norm(v));
    return std::sqrt(acc.value() * spectrum.spec().dual_cell_volume());
}

}  // namespace schromax
