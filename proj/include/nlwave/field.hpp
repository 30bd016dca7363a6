#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "nlwave/grid.hpp"

namespace nlwave {

using cdouble = std::complex<double>;

/// Fourier coefficients of a scalar field on a TorusGrid, with the convention
///   u(x) = sum_k u_hat_k e^{i k.x}.
/// A field representing a real-valued function satisfies the Hermitian
/// symmetry u_hat_{-k} = conj(u_hat_k); complex fields (half-wave orbits) are
/// also allowed and every operation states which case it needs.
struct SpectralField {
  TorusGrid grid;
  std::vector<cdouble> coeffs;

  SpectralField() = default;
  explicit SpectralField(TorusGrid g) : grid(g), coeffs(static_cast<size_t>(g.size())) {}

  cdouble& at(int k1, int k2, int k3) {
    return coeffs[static_cast<size_t>(
        grid.flat(grid.index_of(k1), grid.index_of(k2), grid.index_of(k3)))];
  }
  const cdouble& at(int k1, int k2, int k3) const {
    return coeffs[static_cast<size_t>(
        grid.flat(grid.index_of(k1), grid.index_of(k2), grid.index_of(k3)))];
  }
};

/// Forward transform of real samples (row-major grid order). Normalized so
/// that Parseval reads ||u||_L2^2 = (2pi)^3 sum_k |u_hat_k|^2.
SpectralField to_spectral(const TorusGrid& g, const std::vector<double>& samples);

/// Inverse transform to complex point values u(x_j).
std::vector<cdouble> to_physical(const SpectralField& f);

/// Inverse transform keeping real parts only; valid for Hermitian fields.
std::vector<double> to_physical_real(const SpectralField& f);

/// max_j |Im u(x_j)|, a reality-defect diagnostic.
double max_imag_physical(const SpectralField& f);

/// max_k |u_hat_{-k} - conj(u_hat_k)| over the lattice.
double hermitian_defect(const SpectralField& f);

/// Pointwise Fourier multiplier: out_hat_k = symbol(k1,k2,k3) * u_hat_k.
/// Throws if the symbol is non-finite at a mode carrying a nonzero coefficient.
SpectralField apply_multiplier(const SpectralField& f,
                               const std::function<cdouble(int, int, int)>& symbol);

/// Sharp cutoff to the open ball |k| < K (boundary modes |k| = K are dropped).
SpectralField lowpass(const SpectralField& f, double K);
void lowpass_inplace(SpectralField& f, double K);

/// True when the cutoff K keeps every mode of the grid, i.e. lowpass is the
/// identity because the open ball already covers the resolved lattice.
bool lowpass_is_identity(const TorusGrid& g, double K);

}  // namespace nlwave
