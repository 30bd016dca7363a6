#include "nlwave/norms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nlwave {

namespace {

constexpr double kTwoPiCubed = 8.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi;

// |z|^q for integer q via repeated squaring on |z|^2, avoiding pow and, for
// even q, the square root.
double abs_pow_int(const cdouble& z, int q) {
  const double m2 = std::norm(z);
  double acc = 1.0;
  double base = m2;
  int e = q / 2;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  if (q & 1) acc *= std::sqrt(m2);
  return acc;
}

}  // namespace

double sobolev_norm(const SpectralField& f, const SobolevSpec& spec) {
  const auto& ksq = squared_wavenumbers(f.grid);
  long double acc = 0.0L;
  if (spec.homogeneous) {
    for (size_t i = 0; i < f.coeffs.size(); ++i) {
      if (ksq[i] == 0) continue;
      const double w2 = std::pow(static_cast<double>(ksq[i]), spec.s);
      acc += static_cast<long double>(w2) * std::norm(f.coeffs[i]);
    }
  } else {
    for (size_t i = 0; i < f.coeffs.size(); ++i) {
      const double w2 = std::pow(1.0 + static_cast<double>(ksq[i]), spec.s);
      acc += static_cast<long double>(w2) * std::norm(f.coeffs[i]);
    }
  }
  return std::sqrt(static_cast<double>(acc) * kTwoPiCubed);
}

double lebesgue_norm(const SpectralField& f, double q) {
  if (q < 1.0) throw std::invalid_argument("lebesgue_norm: q must be >= 1");
  const auto z = to_physical(f);
  if (std::isinf(q)) {
    double m = 0.0;
    for (const auto& c : z) m = std::max(m, std::abs(c));
    return m;
  }
  const double cell = kTwoPiCubed / static_cast<double>(f.grid.size());
  long double acc = 0.0L;
  const int qi = static_cast<int>(q);
  if (static_cast<double>(qi) == q) {
    for (const auto& c : z) acc += abs_pow_int(c, qi);
  } else {
    for (const auto& c : z) acc += std::pow(std::abs(c), q);
  }
  return std::pow(static_cast<double>(acc) * cell, 1.0 / q);
}

}  // namespace nlwave
