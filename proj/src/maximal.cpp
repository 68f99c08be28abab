#include "schromax/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "schromax/numerics.hpp"
#include "schromax/propagator.hpp"

namespace schromax {

MaximalField maximal_field(const SpectralFunction& spectrum, const SpaceTimeSamples& samples, double a,
                           unsigned threads) {
    if (samples.size() == 0) throw std::invalid_argument("maximal_field: empty sample set");
    const GridSpec& spec = spectrum.spec();
    if (samples.dim != spec.dim()) {
        throw std::invalid_argument("maximal_field: sample dimension does not match the grid");
    }
    const Propagator propagator(spectrum, a);

    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, samples.size()));

    std::vector<std::vector<double>> partial(threads, std::vector<double>(spec.size(), 0.0));
    auto work = [&](unsigned worker) {
        std::vector<Complex> buffer(spec.size());
        auto& local = partial[worker];
        for (std::size_t i = worker; i < samples.size(); i += threads) {
            propagator.evaluate(samples.times[i], samples.position(i), buffer);
            for (std::size_t x = 0; x < buffer.size(); ++x) local[x] = std::max(local[x], std::abs(buffer[x]));
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    }

    MaximalField field{spec, std::move(partial[0]), samples.size()};
    for (unsigned w = 1; w < threads; ++w) {
        for (std::size_t x = 0; x < field.values.size(); ++x) {
            field.values[x] = std::max(field.values[x], partial[w][x]);
        }
    }
    return field;
}

double l2_norm(const MaximalField& field) {
    CompensatedSum acc;
    for (double v : field.values) acc.add(v * v);
    return std::sqrt(acc.value() * field.spec.cell_volume());
}

RatioReport maximal_ratio(const SpectralFunction& spectrum, const SetSpec& set, double a, double s,
                          const RatioOptions& options) {
    if (!(s > 0.0)) throw std::invalid_argument("maximal_ratio: s must be positive");
    if (!(a > 0.0)) throw std::invalid_argument("maximal_ratio: a must be positive");
    if (options.mode == SumMode::thmA && !set.time_only()) {
        throw std::invalid_argument("maximal_ratio: interval-covering mode needs a time-only set");
    }
    if (set.dim() != spectrum.spec().dim()) {
        throw std::invalid_argument("maximal_ratio: set dimension does not match the grid");
    }
    RatioReport report;
    report.a = a;
    report.s = s;

    SamplingLimits limits;
    limits.max_spatial_move =
        options.max_spatial_move > 0.0 ? options.max_spatial_move : spectrum.spec().spacing();
    const auto samples = sample_set(set, options.resolution, limits);
    const MaximalField field = maximal_field(spectrum, samples, a, options.threads);
    report.lhs = l2_norm(field);
    report.sample_count = samples.size();
    report.sample_density = samples.density;

    const double b = options.mode == SumMode::thm1 ? a : 1.0;
    report.profile = covering_profile(set, b, options.m_min, options.m_max);
    report.sum = rhs_sum(report.profile, s, options.mode, a);
    report.sobolev = sobolev_norm(spectrum, s);
    report.rhs = std::sqrt(report.sum.total()) * report.sobolev;
    report.ratio = report.lhs / report.rhs;
    report.conclusive = report.sum.summable;
    return report;
}

}  // namespace schromax
