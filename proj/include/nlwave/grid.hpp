#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace nlwave {

/// Uniform N^3 collocation grid on the torus [0,2pi)^3.
///
/// Wave vectors are the integer lattice k in {-N/2+1,...,N/2}^3. Coefficients
/// are stored row major over FFT indices (i1,i2,i3), where index i maps to
/// wave number k = i for i <= N/2 and k = i - N otherwise. Physical samples
/// use the same row-major order with x_j = 2*pi*j/N.
struct TorusGrid {
  int n = 0;

  TorusGrid() = default;
  explicit TorusGrid(int n_per_dim) : n(n_per_dim) {
    if (n < 4 || n % 2 != 0)
      throw std::invalid_argument("TorusGrid: n_per_dim must be even and >= 4");
  }

  std::int64_t size() const { return static_cast<std::int64_t>(n) * n * n; }

  /// FFT index -> signed wave number.
  int wavenumber(int idx) const { return idx <= n / 2 ? idx : idx - n; }

  /// Signed wave number -> FFT index.
  int index_of(int k) const { return k >= 0 ? k : k + n; }

  std::int64_t flat(int i1, int i2, int i3) const {
    return (static_cast<std::int64_t>(i1) * n + i2) * n + i3;
  }
};

inline bool operator==(const TorusGrid& a, const TorusGrid& b) { return a.n == b.n; }
inline bool operator!=(const TorusGrid& a, const TorusGrid& b) { return a.n != b.n; }

/// |k|^2 at every flat index; cached per grid size.
const std::vector<int>& squared_wavenumbers(const TorusGrid& g);

}  // namespace nlwave
