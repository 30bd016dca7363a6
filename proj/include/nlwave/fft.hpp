#pragma once

#include <complex>

namespace nlwave::detail {

/// Unnormalized 3d complex DFT, n points per dimension, row-major layout.
/// sign -1 is the forward transform (e^{-ik.x}), +1 the backward one.
/// Plans are cached per (n, sign) and reused; deterministic for a fixed build.
void dft3(const std::complex<double>* in, std::complex<double>* out, int n, int sign);

}  // namespace nlwave::detail
