#include "toeform/fft.hpp"

#include <algorithm>
#include <mutex>

#include <fftw3.h>

namespace toeform::fft {
namespace {

// The FFTW planner is not reentrant; execution on distinct arrays is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

std::vector<cplx> transform(std::span<const cplx> x, int sign) {
    const auto n = x.size();
    std::vector<cplx> out(x.begin(), x.end());
    if (n <= 1) return out;
    auto* data = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(n), data, data, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

}  // namespace

std::vector<cplx> forward(std::span<const cplx> x) { return transform(x, FFTW_FORWARD); }
std::vector<cplx> inverse(std::span<const cplx> x) { return transform(x, FFTW_BACKWARD); }

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace toeform::fft
