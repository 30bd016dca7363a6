#pragma once

#include <vector>

#include "nlwave/field.hpp"

namespace nlwave {

/// Zero-padded pointwise evaluation bridge for polynomial nonlinearities.
///
/// A source field band-limited to |k_i| <= n/2 - 1 is embedded into an m^3
/// grid, transformed to physical space (real transforms), combined pointwise,
/// and truncated back to the n lattice. With m >= 2n a cubic product and with
/// m >= 3n a quintic product of such fields is exactly alias-free on the
/// whole target band. Nyquist planes |k_i| = n/2 are dropped on input and
/// stay empty on output (the dynamic band convention, see README).
class PaddedEvaluator {
 public:
  PaddedEvaluator(int n, int m);
  ~PaddedEvaluator();
  PaddedEvaluator(const PaddedEvaluator&) = delete;
  PaddedEvaluator& operator=(const PaddedEvaluator&) = delete;

  int source_n() const { return n_; }
  int padded_n() const { return m_; }
  std::int64_t padded_size() const { return static_cast<std::int64_t>(m_) * m_ * m_; }

  /// Spectral coefficients -> real samples on the padded grid.
  /// Requires a Hermitian (real-valued) source field.
  void to_padded(const SpectralField& f, std::vector<double>& phys) const;

  /// Real samples on the padded grid -> coefficients on the n lattice.
  SpectralField from_padded(const std::vector<double>& phys) const;

  /// Process-wide cached instance per (n, m).
  static const PaddedEvaluator& shared(int n, int m);

 private:
  struct Impl;
  Impl* impl_;
  int n_, m_;
};

/// Padded grid size for the -mu |u|^{alpha-1} u nonlinearity: 2n for the cubic
/// case, 3n for the quintic one, and the 3/2 rule (rounded up to even) for the
/// remaining alphas, whose powers are not polynomial and keep residual
/// aliasing regardless of padding.
int dealias_padded_size(int n, double alpha);

}  // namespace nlwave
