#include "schromax/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "schromax/fft.hpp"
#include "schromax/numerics.hpp"

namespace schromax {

Propagator::Propagator(SpectralFunction spectrum, double a)
    : spectrum_(std::move(spectrum)), a_(a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw std::invalid_argument("propagate: dispersion exponent a must be positive");
    }
    const auto norms = spectrum_.spec().frequency_norms_sq();
    dispersion_.resize(norms.size());
    for (std::size_t i = 0; i < norms.size(); ++i) {
        dispersion_[i] = norms[i] == 0.0 ? 0.0 : std::pow(norms[i], 0.5 * a_);
    }
    components_ = spectrum_.spec().frequency_components();
    const GridSpec& spec = spectrum_.spec();
    odd_.resize(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const auto idx = spec.axis_indices(i);
        std::size_t parity = 0;
        for (int d = 0; d < spec.dim(); ++d) parity += idx[static_cast<std::size_t>(d)];
        odd_[i] = static_cast<unsigned char>(parity & 1U);
    }
}

void Propagator::evaluate(double t, std::span<const double> shift, std::span<Complex> out) const {
    const GridSpec& spec = spectrum_.spec();
    if (!shift.empty() && shift.size() != static_cast<std::size_t>(spec.dim())) {
        throw std::invalid_argument("propagate: shift dimension does not match the grid");
    }
    if (!std::isfinite(t)) throw std::invalid_argument("propagate: time must be finite");
    if (out.size() != spec.size()) {
        throw std::invalid_argument("propagate: output buffer has the wrong size");
    }
    const std::size_t size = spec.size();
    const auto coeffs = spectrum_.coefficients();
    for (std::size_t i = 0; i < size; ++i) {
        double phase = t * dispersion_[i];
        for (std::size_t d = 0; d < shift.size(); ++d) phase += components_[d * size + i] * shift[d];
        const Complex value = coeffs[i] * std::polar(1.0, phase);
        // Inverse transform carries the (-1)^k origin shift, as in from_spectrum.
        out[i] = odd_[i] ? -value : value;
    }
    detail::fft_inplace(out, spec, detail::FftDirection::backward);
    const double scale = 1.0 / std::pow(spec.length(), spec.dim());
    for (auto& v : out) v *= scale;
}

GridFunction Propagator::evaluate(double t, std::span<const double> shift) const {
    std::vector<Complex> out(spectrum_.spec().size());
    evaluate(t, shift, out);
    return GridFunction(spectrum_.spec(), std::move(out));
}

GridFunction propagate(const SpectralFunction& spectrum, const PropagatorParams& params) {
    return Propagator(spectrum, params.a).evaluate(params.t, params.shift);
}

double sobolev_norm(const SpectralFunction& spectrum, double s) {
    if (!std::isfinite(s)) throw std::invalid_argument("sobolev_norm: s must be finite");
    const GridSpec& spec = spectrum.spec();
    const auto coeffs = spectrum.coefficients();
    CompensatedSum acc;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const double weight = s == 0.0 ? 1.0 : std::pow(1.0 + spec.frequency_norm_sq(i), s);
        acc.add(weight * std::norm(coeffs[i]));
    }
    return std::sqrt(acc.value() * spec.dual_cell_volume());
}

int dyadic_index(double norm_sq) noexcept {
    if (norm_sq <= 1.0) return 0;
    // Smallest k with 4^k >= |xi|^2, i.e. 2^{k-1} < |xi| <= 2^k.
    int k = static_cast<int>(std::ceil(0.5 * std::log2(norm_sq)));
    k = std::max(k, 1);
    while (k > 1 && std::ldexp(1.0, 2 * (k - 1)) >= norm_sq) --k;
    while (std::ldexp(1.0, 2 * k) < norm_sq) ++k;
    return k;
}

DyadicDecomposition dyadic_split(const SpectralFunction& spectrum) {
    const GridSpec& spec = spectrum.spec();
    const auto coeffs = spectrum.coefficients();
    std::vector<int> shell(coeffs.size());
    int top = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        shell[i] = dyadic_index(spec.frequency_norm_sq(i));
        top = std::max(top, shell[i]);
    }
    std::vector<std::vector<Complex>> parts(static_cast<std::size_t>(top) + 1,
                                            std::vector<Complex>(coeffs.size()));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        parts[static_cast<std::size_t>(shell[i])][i] = coeffs[i];
    }
    DyadicDecomposition out;
    out.pieces.reserve(parts.size());
    for (auto& p : parts) out.pieces.emplace_back(spec, std::move(p));
    return out;
}

SpectralFunction band_limit(const SpectralFunction& spectrum, double radius) {
    const GridSpec& spec = spectrum.spec();
    if (!(radius > 0.0) || radius > spec.nyquist()) {
        throw std::invalid_argument("band_limit: radius must lie in (0, pi N / L]");
    }
    const double radius_sq = radius * radius;
    std::vector<Complex> out(spectrum.coefficients().begin(), spectrum.coefficients().end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (spec.frequency_norm_sq(i) > radius_sq) out[i] = Complex{};
    }
    return SpectralFunction(spec, std::move(out));
}

}  // namespace schromax
