#include "schromax/families.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace schromax {

GridFunction modulated_gaussian(const GridSpec& spec, double lambda) {
    std::vector<Complex> values(spec.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto x = spec.coordinates(i);
        double r2 = 0.0;
        for (int d = 0; d < spec.dim(); ++d) r2 += x[static_cast<std::size_t>(d)] * x[static_cast<std::size_t>(d)];
        values[i] = std::exp(-0.5 * r2) * std::polar(1.0, lambda * x[0]);
    }
    return GridFunction(spec, std::move(values));
}

GridFunction gaussian(const GridSpec& spec) { return modulated_gaussian(spec, 0.0); }

SpectralFunction modulated_gaussian_spectrum(const GridSpec& spec, double lambda) {
    const double norm = std::pow(2.0 * std::numbers::pi, 0.5 * spec.dim());
    std::vector<Complex> coeffs(spec.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const auto idx = spec.axis_indices(i);
        double r2 = 0.0;
        for (int d = 0; d < spec.dim(); ++d) {
            double xi = spec.frequency(idx[static_cast<std::size_t>(d)]);
            if (d == 0) xi -= lambda;
            r2 += xi * xi;
        }
        coeffs[i] = norm * std::exp(-0.5 * r2);
    }
    return SpectralFunction(spec, std::move(coeffs));
}

SpectralFunction indicator_spectrum(const GridSpec& spec, double radius) {
    std::vector<Complex> coeffs(spec.size());
    const double radius_sq = radius * radius;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (spec.frequency_norm_sq(i) <= radius_sq) coeffs[i] = 1.0;
    }
    return SpectralFunction(spec, std::move(coeffs));
}

SpectralFunction random_band_limited(const GridSpec& spec, double radius, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Complex> coeffs(spec.size());
    const double radius_sq = radius * radius;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (spec.frequency_norm_sq(i) > radius_sq) continue;
        const double rho = std::sqrt(unit(rng));
        const double theta = 2.0 * std::numbers::pi * unit(rng);
        coeffs[i] = std::polar(rho, theta);
    }
    return SpectralFunction(spec, std::move(coeffs));
}

SpectralFunction load_spectrum(const std::filesystem::path& path, const GridSpec& spec) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_spectrum: cannot open " + path.string());
    std::vector<Complex> coeffs;
    coeffs.reserve(spec.size());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        double re = 0.0, im = 0.0;
        if (!(fields >> re)) {
            throw std::invalid_argument("load_spectrum: bad number at line " + std::to_string(line_no));
        }
        fields >> im;
        coeffs.emplace_back(re, im);
    }
    if (coeffs.size() != spec.size()) {
        throw std::invalid_argument("load_spectrum: expected " + std::to_string(spec.size()) +
                                    " coefficients, found " + std::to_string(coeffs.size()));
    }
    return SpectralFunction(spec, std::move(coeffs));
}

}  // namespace schromax
