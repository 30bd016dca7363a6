#include "nlwave/dealias.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace nlwave {

namespace {

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct PaddedEvaluator::Impl {
  fftw_plan c2r = nullptr;
  fftw_plan r2c = nullptr;
  fftw_complex* spec = nullptr;  // m * m * (m/2 + 1) half spectrum
  double* real = nullptr;        // m^3 samples
  std::int64_t spec_count = 0;
  std::int64_t real_count = 0;
  mutable std::mutex mu;  // plans share the internal buffers

  Impl(int n, int m) {
    (void)n;
    spec_count = static_cast<std::int64_t>(m) * m * (m / 2 + 1);
    real_count = static_cast<std::int64_t>(m) * m * m;
    spec = fftw_alloc_complex(static_cast<std::size_t>(spec_count));
    real = fftw_alloc_real(static_cast<std::size_t>(real_count));
    if (spec == nullptr || real == nullptr) {
      throw std::bad_alloc();
    }
    // FFTW_ESTIMATE keeps plan selection timing-independent so repeated runs
    // stay bit-identical; it also leaves the buffers untouched during planning.
    c2r = fftw_plan_dft_c2r_3d(m, m, m, spec, real, FFTW_ESTIMATE);
    r2c = fftw_plan_dft_r2c_3d(m, m, m, real, spec, FFTW_ESTIMATE);
    if (c2r == nullptr || r2c == nullptr) {
      throw std::runtime_error("PaddedEvaluator: FFTW plan creation failed");
    }
  }

  ~Impl() {
    if (c2r != nullptr) fftw_destroy_plan(c2r);
    if (r2c != nullptr) fftw_destroy_plan(r2c);
    if (spec != nullptr) fftw_free(spec);
    if (real != nullptr) fftw_free(real);
  }
};

PaddedEvaluator::PaddedEvaluator(int n, int m) : n_(n), m_(m) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("PaddedEvaluator: source size must be even and >= 4");
  }
  if (m < n || m % 2 != 0) {
    throw std::invalid_argument("PaddedEvaluator: padded size must be even and >= n");
  }
  impl_ = new Impl(n, m);
}

PaddedEvaluator::~PaddedEvaluator() { delete impl_; }

void PaddedEvaluator::to_padded(const SpectralField& f, std::vector<double>& phys) const {
  if (f.grid.n != n_) {
    throw std::invalid_argument("PaddedEvaluator::to_padded: grid mismatch");
  }
  const int m = m_;
  const int half = n_ / 2;
  const int mc = m / 2 + 1;
  std::lock_guard<std::mutex> lock(impl_->mu);
  std::memset(impl_->spec, 0, sizeof(fftw_complex) * static_cast<std::size_t>(impl_->spec_count));
  // Only k3 >= 0 is stored in the half spectrum; the k3 < 0 content of f is
  // implied by Hermitian symmetry of the (real) source field.
  for (int k1 = -(half - 1); k1 <= half - 1; ++k1) {
    const int a = (k1 + m) % m;
    for (int k2 = -(half - 1); k2 <= half - 1; ++k2) {
      const int b = (k2 + m) % m;
      fftw_complex* row = impl_->spec + (static_cast<std::int64_t>(a) * m + b) * mc;
      for (int k3 = 0; k3 <= half - 1; ++k3) {
        const cdouble z = f.coeffs[f.grid.flat(f.grid.index_of(k1), f.grid.index_of(k2),
                                              f.grid.index_of(k3))];
        row[k3][0] = z.real();
        row[k3][1] = z.imag();
      }
    }
  }
  fftw_execute(impl_->c2r);
  phys.assign(impl_->real, impl_->real + impl_->real_count);
}

SpectralField PaddedEvaluator::from_padded(const std::vector<double>& phys) const {
  if (phys.size() != static_cast<std::size_t>(impl_->real_count)) {
    throw std::invalid_argument("PaddedEvaluator::from_padded: sample count mismatch");
  }
  const int m = m_;
  const int half = n_ / 2;
  const int mc = m / 2 + 1;
  SpectralField out(TorusGrid{n_});
  std::lock_guard<std::mutex> lock(impl_->mu);
  std::copy(phys.begin(), phys.end(), impl_->real);
  fftw_execute(impl_->r2c);
  const double scale = 1.0 / static_cast<double>(impl_->real_count);
  for (int k1 = -(half - 1); k1 <= half - 1; ++k1) {
    const int a = (k1 + m) % m;
    const int an = (m - a) % m;
    for (int k2 = -(half - 1); k2 <= half - 1; ++k2) {
      const int b = (k2 + m) % m;
      const int bn = (m - b) % m;
      const fftw_complex* row = impl_->spec + (static_cast<std::int64_t>(a) * m + b) * mc;
      const fftw_complex* mrow =
          impl_->spec + (static_cast<std::int64_t>(an) * m + bn) * mc;
      for (int k3 = -(half - 1); k3 <= half - 1; ++k3) {
        cdouble z;
        if (k3 >= 0) {
          z = cdouble{row[k3][0], row[k3][1]};
        } else {
          // Hermitian completion: coefficient at k equals conj at -k.
          z = cdouble{mrow[-k3][0], -mrow[-k3][1]};
        }
        out.coeffs[out.grid.flat(out.grid.index_of(k1), out.grid.index_of(k2),
                                 out.grid.index_of(k3))] = z * scale;
      }
    }
  }
  return out;
}

const PaddedEvaluator& PaddedEvaluator::shared(int n, int m) {
  static std::map<std::pair<int, int>, std::unique_ptr<PaddedEvaluator>> cache;
  std::lock_guard<std::mutex> lock(cache_mutex());
  auto& slot = cache[{n, m}];
  if (!slot) {
    slot = std::make_unique<PaddedEvaluator>(n, m);
  }
  return *slot;
}

int dealias_padded_size(int n, double alpha) {
  if (alpha == 3.0) return 2 * n;
  if (alpha == 5.0) return 3 * n;
  const int m = (3 * n + 1) / 2;
  return m + (m % 2);
}

}  // namespace nlwave
