#include "affine/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace affine {

namespace {
std::mutex planMutex;  // fftw planner is not reentrant
}

void dft(std::vector<std::complex<double>>& a, int d, const std::int64_t* n, bool forward)
{
    int dims[2];
    std::int64_t total = 1;
    for (int t = 0; t < d; ++t) {
        dims[t] = static_cast<int>(n[t]);
        total *= n[t];
    }
    if (static_cast<std::int64_t>(a.size()) != total)
        throw std::invalid_argument("dft: size mismatch");
    auto* p = reinterpret_cast<fftw_complex*>(a.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planMutex);
        plan = fftw_plan_dft(d, dims, p, p, forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(planMutex);
    fftw_destroy_plan(plan);
}

const char* fftVersion()
{
    return fftw_version;
}

}  // namespace affine
