#pragma once

#include <cstdint>

#include "nlwave/field.hpp"

namespace nlwave {

/// Random real field with prescribed Sobolev regularity:
///   u_hat_k = amplitude * |k|^{-s - 3/2 - eps} * zeta_k,   eps = 0.01,
/// with unit-modulus phases zeta_k drawn deterministically from (seed, k),
/// Hermitian symmetry, zero mean mode, and empty Nyquist planes |k_i| = N/2
/// (the dynamic band; see README). The field lies in H^{s'} for s' < s + eps
/// while its H^{s''} norms for s'' > s grow as the grid refines. Coefficients
/// at a given k are identical across grid sizes for a fixed seed.
SpectralField sobolev_noise(const TorusGrid& g, double s, std::uint64_t seed,
                            double amplitude);

}  // namespace nlwave
