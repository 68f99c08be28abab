#include "schromax/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace schromax::detail {
namespace {

class PlanCache {
public:
    fftw_plan get(const GridSpec& spec, FftDirection direction) {
        const auto key = std::make_tuple(spec.dim(), spec.samples(), direction);
        std::lock_guard lock(mutex_);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;

        // FFTW planning is not thread-safe; execution with new arrays is.
        std::vector<int> extents(static_cast<std::size_t>(spec.dim()),
                                 static_cast<int>(spec.samples()));
        std::vector<Complex> scratch(spec.size());
        auto* buffer = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan plan = fftw_plan_dft(spec.dim(), extents.data(), buffer, buffer,
                                       direction == FftDirection::forward ? FFTW_FORWARD
                                                                          : FFTW_BACKWARD,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (plan == nullptr) throw std::runtime_error("fftw: plan creation failed");
        plans_.emplace(key, plan);
        return plan;
    }

    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<int, std::size_t, FftDirection>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

}  // namespace

void fft_inplace(std::span<Complex> data, const GridSpec& spec, FftDirection direction) {
    if (data.size() != spec.size()) {
        throw std::invalid_argument("fft_inplace: array size does not match grid");
    }
    fftw_plan plan = plan_cache().get(spec, direction);
    auto* buffer = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buffer, buffer);
}

}  // namespace schromax::detail
