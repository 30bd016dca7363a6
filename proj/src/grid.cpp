#include "nlwave/grid.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace nlwave {

const std::vector<int>& squared_wavenumbers(const TorusGrid& g) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<std::vector<int>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& entry = cache[g.n];
  if (!entry) {
    entry = std::make_unique<std::vector<int>>();
    entry->resize(static_cast<size_t>(g.size()));
    auto& tab = *entry;
    std::int64_t idx = 0;
    for (int i1 = 0; i1 < g.n; ++i1) {
      const int k1 = g.wavenumber(i1);
      for (int i2 = 0; i2 < g.n; ++i2) {
        const int k2 = g.wavenumber(i2);
        const int head = k1 * k1 + k2 * k2;
        for (int i3 = 0; i3 < g.n; ++i3, ++idx) {
          const int k3 = g.wavenumber(i3);
          tab[static_cast<size_t>(idx)] = head + k3 * k3;
        }
      }
    }
  }
  return *entry;
}

}  // namespace nlwave
