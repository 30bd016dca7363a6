#include "nlwave/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

namespace nlwave::detail {

namespace {

// One cached plan with its own aligned buffers; executed under a lock so the
// buffers are never shared between concurrent calls.
struct PlanSlot {
  fftw_plan plan = nullptr;
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
  std::int64_t count = 0;

  PlanSlot(int n, int sign) {
    count = static_cast<std::int64_t>(n) * n * n;
    in = fftw_alloc_complex(static_cast<size_t>(count));
    out = fftw_alloc_complex(static_cast<size_t>(count));
    // FFTW_ESTIMATE keeps plan selection independent of runtime timings,
    // which the bit-exact reproducibility guarantee relies on.
    plan = fftw_plan_dft_3d(n, n, n, in, out, sign, FFTW_ESTIMATE);
  }
  ~PlanSlot() {
    if (plan) fftw_destroy_plan(plan);
    if (in) fftw_free(in);
    if (out) fftw_free(out);
  }
  PlanSlot(const PlanSlot&) = delete;
  PlanSlot& operator=(const PlanSlot&) = delete;
};

std::mutex g_mutex;
std::map<std::pair<int, int>, std::unique_ptr<PlanSlot>>& slots() {
  static std::map<std::pair<int, int>, std::unique_ptr<PlanSlot>> m;
  return m;
}

}  // namespace

void dft3(const std::complex<double>* in, std::complex<double>* out, int n, int sign) {
  std::lock_guard<std::mutex> lock(g_mutex);
  auto& slot = slots()[{n, sign}];
  if (!slot) slot = std::make_unique<PlanSlot>(n, sign);
  std::memcpy(slot->in, static_cast<const void*>(in), sizeof(fftw_complex) * static_cast<size_t>(slot->count));
  fftw_execute(slot->plan);
  std::memcpy(static_cast<void*>(out), slot->out, sizeof(fftw_complex) * static_cast<size_t>(slot->count));
}

}  // namespace nlwave::detail
