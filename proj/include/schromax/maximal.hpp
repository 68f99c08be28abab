#pragma once

#include <cstddef>
#include <vector>

#include "schromax/covering.hpp"
#include "schromax/grid.hpp"
#include "schromax/settools.hpp"

namespace schromax {

/// Pointwise max over samples (y, t) of |S_t f(x + y)| on the spatial grid.
/// A finite sampling can only under-estimate the supremum over E.
struct MaximalField {
    GridSpec spec;
    std::vector<double> values;
    std::size_t sample_count = 0;
};

/// Streams one propagated field per worker; the max-reduction is exact, so
/// the result does not depend on scheduling. threads = 0 picks the hardware
/// concurrency.
MaximalField maximal_field(const SpectralFunction& spectrum, const SpaceTimeSamples& samples, double a,
                           unsigned threads = 0);

double l2_norm(const MaximalField& field);

struct RatioOptions {
    int m_min = 0;
    int m_max = 10;
    /// Parameter step for sampling E.
    double resolution = 1.0 / 1024.0;
    /// Largest spatial move between consecutive samples; 0 means the grid spacing.
    double max_spatial_move = 0.0;
    SumMode mode = SumMode::thm1;
    unsigned threads = 0;
};

/// Both sides of
///   int |S_E^* f|^2 dx  <~  (sum_m N(2^{-m}) w_m) ||f||_{H_s}^2
/// with lhs = ||S_E^* f||_2 and rhs = (truncated sum)^{1/2} ||f||_{H_s}.
struct RatioReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    double sobolev = 0.0;
    SumReport sum;
    CoveringProfile profile;
    double a = 0.0;
    double s = 0.0;
    std::size_t sample_count = 0;
    double sample_density = 0.0;
    /// The truncated series is classified summable.
    bool conclusive = false;
};

/// In thmA mode the set must be time-only; the profile uses intervals
/// (b = 1) and weights 2^{-2ms/a}. In thm1 mode the profile uses a-cubes.
RatioReport maximal_ratio(const SpectralFunction& spectrum, const SetSpec& set, double a, double s,
                          const RatioOptions& options = {});

}  // namespace schromax
