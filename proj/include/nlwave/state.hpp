#pragma once

#include <stdexcept>

#include "nlwave/field.hpp"

namespace nlwave {

/// Pair (u, v) = (u, du/dt) of spectral fields on one grid; the object all
/// propagators and time-stepping schemes act on.
struct State {
  SpectralField u;
  SpectralField v;

  State() = default;
  explicit State(TorusGrid g) : u(g), v(g) {}
  State(SpectralField u_in, SpectralField v_in) : u(std::move(u_in)), v(std::move(v_in)) {
    if (u.grid != v.grid) throw std::invalid_argument("State: components on different grids");
  }

  TorusGrid grid() const { return u.grid; }
};

inline void lowpass_inplace(State& U, double K) {
  lowpass_inplace(U.u, K);
  lowpass_inplace(U.v, K);
}

inline State lowpass(const State& U, double K) {
  State out = U;
  lowpass_inplace(out, K);
  return out;
}

}  // namespace nlwave
