#include "fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace tadecay::detail {
namespace {
// The FFTW planner is not thread-safe; execution is.
std::mutex planner_mutex;
} // namespace

void fft(std::vector<std::complex<double>>& x, int sign) {
    if (x.empty()) return;
    auto* p = reinterpret_cast<fftw_complex*>(x.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        plan = fftw_plan_dft_1d(static_cast<int>(x.size()), p, p, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(planner_mutex);
    fftw_destroy_plan(plan);
}

std::size_t next_pow2(std::size_t n) {
    std::size_t l = 1;
    while (l < n) l <<= 1;
    return l;
}

} // namespace tadecay::detail
