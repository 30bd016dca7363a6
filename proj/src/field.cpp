#include "nlwave/field.hpp"

#include <cmath>
#include <stdexcept>

#include "nlwave/fft.hpp"

namespace nlwave {

SpectralField to_spectral(const TorusGrid& g, const std::vector<double>& samples) {
  if (static_cast<std::int64_t>(samples.size()) != g.size())
    throw std::invalid_argument("to_spectral: sample count does not match grid");
  std::vector<cdouble> buf(samples.begin(), samples.end());
  SpectralField f(g);
  detail::dft3(buf.data(), f.coeffs.data(), g.n, -1);
  const double scale = 1.0 / static_cast<double>(g.size());
  for (auto& c : f.coeffs) c *= scale;
  return f;
}

std::vector<cdouble> to_physical(const SpectralField& f) {
  std::vector<cdouble> out(f.coeffs.size());
  detail::dft3(f.coeffs.data(), out.data(), f.grid.n, +1);
  return out;
}

std::vector<double> to_physical_real(const SpectralField& f) {
  const auto z = to_physical(f);
  std::vector<double> out(z.size());
  for (size_t i = 0; i < z.size(); ++i) out[i] = z[i].real();
  return out;
}

double max_imag_physical(const SpectralField& f) {
  const auto z = to_physical(f);
  double m = 0.0;
  for (const auto& c : z) m = std::max(m, std::abs(c.imag()));
  return m;
}

double hermitian_defect(const SpectralField& f) {
  const int n = f.grid.n;
  double defect = 0.0;
  for (int i1 = 0; i1 < n; ++i1) {
    const int j1 = (n - i1) % n;
    for (int i2 = 0; i2 < n; ++i2) {
      const int j2 = (n - i2) % n;
      for (int i3 = 0; i3 < n; ++i3) {
        const int j3 = (n - i3) % n;
        const cdouble a = f.coeffs[static_cast<size_t>(f.grid.flat(i1, i2, i3))];
        const cdouble b = f.coeffs[static_cast<size_t>(f.grid.flat(j1, j2, j3))];
        defect = std::max(defect, std::abs(a - std::conj(b)));
      }
    }
  }
  return defect;
}

SpectralField apply_multiplier(const SpectralField& f,
                               const std::function<cdouble(int, int, int)>& symbol) {
  SpectralField out(f.grid);
  const int n = f.grid.n;
  std::int64_t idx = 0;
  for (int i1 = 0; i1 < n; ++i1) {
    const int k1 = f.grid.wavenumber(i1);
    for (int i2 = 0; i2 < n; ++i2) {
      const int k2 = f.grid.wavenumber(i2);
      for (int i3 = 0; i3 < n; ++i3, ++idx) {
        const int k3 = f.grid.wavenumber(i3);
        const cdouble s = symbol(k1, k2, k3);
        const cdouble c = f.coeffs[static_cast<size_t>(idx)];
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
          if (c != cdouble(0.0, 0.0))
            throw std::invalid_argument("apply_multiplier: non-finite symbol at an occupied mode");
          continue;
        }
        out.coeffs[static_cast<size_t>(idx)] = s * c;
      }
    }
  }
  return out;
}

void lowpass_inplace(SpectralField& f, double K) {
  if (!std::isfinite(K)) {
    if (K > 0) return;  // +inf keeps everything
    throw std::invalid_argument("lowpass: K must be positive and finite or +inf");
  }
  if (K <= 0) throw std::invalid_argument("lowpass: K must be positive");
  const auto& ksq = squared_wavenumbers(f.grid);
  const double K2 = K * K;
  for (size_t i = 0; i < f.coeffs.size(); ++i) {
    // open ball: keep iff |k|^2 < K^2, with |k|^2 integer so the boundary
    // |k| = K is decided exactly
    if (static_cast<double>(ksq[i]) >= K2) f.coeffs[i] = cdouble(0.0, 0.0);
  }
}

SpectralField lowpass(const SpectralField& f, double K) {
  SpectralField out = f;
  lowpass_inplace(out, K);
  return out;
}

bool lowpass_is_identity(const TorusGrid& g, double K) {
  const double half = g.n / 2;
  return K * K > 3.0 * half * half;
}

}  // namespace nlwave
