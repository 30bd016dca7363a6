#pragma once

#include "nlwave/field.hpp"

namespace nlwave {

/// Sobolev weight choice: homogeneous |k|^s with the zero mode dropped
/// (weight 0, never divided by), or inhomogeneous (1+|k|^2)^{s/2}.
struct SobolevSpec {
  double s = 0.0;
  bool homogeneous = true;
};

/// ((2pi)^3 sum_k w(k)^2 |u_hat_k|^2)^{1/2} with the weight w chosen above.
double sobolev_norm(const SpectralField& f, const SobolevSpec& spec);

/// Rectangle-rule L^q norm of |u(x)| on the grid; q = inf is the grid max.
/// Works for complex-valued fields (modulus is used). Throws for q < 1.
double lebesgue_norm(const SpectralField& f, double q);

}  // namespace nlwave
