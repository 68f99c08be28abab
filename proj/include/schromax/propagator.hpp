#pragma once

#include <span>
#include <vector>

#include "schromax/grid.hpp"

namespace schromax {

/// Dispersion exponent a, time t and spatial shift y of S_t f(x + y).
/// An empty shift means y = 0.
struct PropagatorParams {
    double a = 2.0;
    double t = 0.0;
    std::vector<double> shift{};
};

/// Evaluates S_t f(x + y) = (2 pi)^{-n} int e^{i xi.(x+y)} e^{i t |xi|^a} fhat dxi
/// for a fixed spectrum and exponent. The multiplier is applied exactly, so
/// there is no time-stepping error and y need not be grid aligned.
class Propagator {
public:
    Propagator(SpectralFunction spectrum, double a);

    const GridSpec& spec() const noexcept { return spectrum_.spec(); }
    double exponent() const noexcept { return a_; }

    /// Writes S_t f(x + y) into out, which must hold N^n values. Safe to call
    /// concurrently from several threads with distinct output buffers.
    void evaluate(double t, std::span<const double> shift, std::span<Complex> out) const;
    GridFunction evaluate(double t, std::span<const double> shift = {}) const;

private:
    SpectralFunction spectrum_;
    double a_;
    std::vector<double> dispersion_;   // |xi|^a, with 0^a = 0
    std::vector<double> components_;   // xi_j blocks, see GridSpec::frequency_components
    std::vector<unsigned char> odd_;   // origin-shift sign (-1)^{k_1+...+k_n}
};

/// Rejects a <= 0 and shifts whose length differs from the grid dimension.
GridFunction propagate(const SpectralFunction& spectrum, const PropagatorParams& params);

/// (sum (1 + |xi|^2)^s |F|^2 (2 pi / L)^n)^{1/2}. With s = 0 this is
/// (2 pi)^{n/2} times the L^2 norm of f.
double sobolev_norm(const SpectralFunction& spectrum, double s);

/// Sharp dyadic shells: piece 0 keeps |xi| <= 1, piece k >= 1 keeps
/// 2^{k-1} < |xi| <= 2^k. Pieces have disjoint supports and sum to the input.
struct DyadicDecomposition {
    std::vector<SpectralFunction> pieces;
    int top_index() const noexcept { return static_cast<int>(pieces.size()) - 1; }
};

/// Shell index of a frequency with |xi|^2 = norm_sq.
int dyadic_index(double norm_sq) noexcept;

DyadicDecomposition dyadic_split(const SpectralFunction& spectrum);

/// Zeroes every coefficient with |xi| > radius. Accepts 0 < radius <= pi N / L.
SpectralFunction band_limit(const SpectralFunction& spectrum, double radius);

}  // namespace schromax
