#include "nlwave/noise.hpp"

#include <cmath>
#include <numbers>

namespace nlwave {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t mode_key(int k1, int k2, int k3) {
  const auto u = [](int k) { return static_cast<std::uint64_t>(static_cast<std::uint16_t>(k)); };
  return (u(k1) << 32) | (u(k2) << 16) | u(k3);
}

// Canonical representative of each {k, -k} pair; the mirror gets the
// conjugate phase so the field is real.
bool canonical(int k1, int k2, int k3) {
  if (k3 != 0) return k3 > 0;
  if (k2 != 0) return k2 > 0;
  return k1 > 0;
}

}  // namespace

SpectralField sobolev_noise(const TorusGrid& g, double s, std::uint64_t seed,
                            double amplitude) {
  SpectralField f(g);
  const int b = g.n / 2 - 1;  // sub-Nyquist band
  const double expo = -(s + 1.5 + 0.01);
  const std::uint64_t seed_mix = splitmix64(seed);
  for (int k1 = -b; k1 <= b; ++k1) {
    for (int k2 = -b; k2 <= b; ++k2) {
      for (int k3 = -b; k3 <= b; ++k3) {
        if (!canonical(k1, k2, k3)) continue;
        const double ksq = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2 +
                           static_cast<double>(k3) * k3;
        const double mag = amplitude * std::pow(ksq, 0.5 * expo);
        const std::uint64_t h = splitmix64(seed_mix ^ mode_key(k1, k2, k3));
        const double phase =
            2.0 * std::numbers::pi * static_cast<double>(h >> 11) * 0x1.0p-53;
        const cdouble z = std::polar(mag, phase);
        f.at(k1, k2, k3) = z;
        f.at(-k1, -k2, -k3) = std::conj(z);
      }
    }
  }
  return f;
}

}  // namespace nlwave
