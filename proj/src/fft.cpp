#include "oscillab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace oscillab {
namespace {

// One in-place plan per (size, direction). FFTW_ESTIMATE keeps planning cheap
// and, unlike the measuring modes, never touches the caller's buffer.
class PlanCache {
  public:
    fftw_plan get(std::size_t n, int sign, std::complex<double>* buf) {
        std::lock_guard<std::mutex> lock(mu_);
        const auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        // Plan on a scratch buffer so the cached plan is buffer-agnostic via
        // fftw_execute_dft (alignment is equal for vectors from new[]).
        (void)buf;
        std::vector<std::complex<double>> scratch(n);
        auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), p, p, sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan) throw std::runtime_error("fftw planning failed");
        plans_.emplace(key, plan);
        return plan;
    }

  private:
    std::mutex mu_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void run(std::vector<std::complex<double>>& data, int sign) {
    if (data.empty()) throw std::domain_error("fft of empty buffer");
    fftw_plan plan = cache().get(data.size(), sign, data.data());
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, p, p);
}

} // namespace

void fft_forward(std::vector<std::complex<double>>& data) { run(data, FFTW_FORWARD); }
void fft_inverse(std::vector<std::complex<double>>& data) { run(data, FFTW_BACKWARD); }

} // namespace oscillab
