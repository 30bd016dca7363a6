#include "nlwave/propagator.hpp"

#include <cmath>
#include <stdexcept>

namespace nlwave {

namespace phi2_detail {

// Series through theta^6; at |theta| < 0.05 the first dropped term is below
// 1e-18 relative, while the direct formulas are good to ~5e-13 there, so the
// two branches overlap well inside the 1e-12 continuity requirement.

double f_cos_series(double theta) {
  const double t2 = theta * theta;
  return 0.5 - t2 / 24.0 + t2 * t2 / 720.0 - t2 * t2 * t2 / 40320.0;
}

double f_cos_direct(double theta) {
  // 1 - cos t = 2 sin^2(t/2) avoids the cancellation entirely
  const double s = std::sin(0.5 * theta) / (0.5 * theta);
  return 0.5 * s * s;
}

double f_cos(double theta) {
  return std::abs(theta) < kSeriesThreshold ? f_cos_series(theta) : f_cos_direct(theta);
}

double f_sin_series(double theta) {
  const double t2 = theta * theta;
  return 1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0 - t2 * t2 * t2 / 362880.0;
}

double f_sin_direct(double theta) { return (theta - std::sin(theta)) / (theta * theta * theta); }

double f_sin(double theta) {
  return std::abs(theta) < kSeriesThreshold ? f_sin_series(theta) : f_sin_direct(theta);
}

double f_lin(double theta) { return -theta * theta * f_sin(theta); }

}  // namespace phi2_detail

WaveFlow::WaveFlow(TorusGrid g, double t) : grid_(g), t_(t) {
  if (!std::isfinite(t)) throw std::invalid_argument("WaveFlow: non-finite t");
  const auto& ksq = squared_wavenumbers(g);
  const size_t m = ksq.size();
  a_.resize(m);
  b_.resize(m);
  c_.resize(m);
  for (size_t i = 0; i < m; ++i) {
    if (ksq[i] == 0) {
      a_[i] = 1.0;
      b_[i] = t;
      c_[i] = 0.0;
    } else {
      const double lambda = std::sqrt(static_cast<double>(ksq[i]));
      const double s = std::sin(t * lambda);
      a_[i] = std::cos(t * lambda);
      b_[i] = s / lambda;
      c_[i] = -lambda * s;
    }
  }
}

void WaveFlow::apply_inplace(State& U) const {
  if (U.grid() != grid_) throw std::invalid_argument("WaveFlow: grid mismatch");
  cdouble* u = U.u.coeffs.data();
  cdouble* v = U.v.coeffs.data();
  const size_t m = a_.size();
  for (size_t i = 0; i < m; ++i) {
    const cdouble uu = u[i], vv = v[i];
    u[i] = a_[i] * uu + b_[i] * vv;
    v[i] = c_[i] * uu + a_[i] * vv;
  }
}

State WaveFlow::operator()(const State& U) const {
  State out = U;
  apply_inplace(out);
  return out;
}

Phi2Flow::Phi2Flow(TorusGrid g, double t) : grid_(g), t_(t) {
  if (!std::isfinite(t)) throw std::invalid_argument("Phi2Flow: non-finite t");
  const auto& ksq = squared_wavenumbers(g);
  const size_t m = ksq.size();
  a_.resize(m);
  b_.resize(m);
  c_.resize(m);
  for (size_t i = 0; i < m; ++i) {
    if (ksq[i] == 0) {
      a_[i] = 0.5;
      b_[i] = t / 6.0;
      c_[i] = 0.0;
    } else {
      const double lambda = std::sqrt(static_cast<double>(ksq[i]));
      const double theta = t * lambda;
      if (t == 0.0) {
        a_[i] = 0.5;
        b_[i] = 0.0;
        c_[i] = 0.0;
      } else {
        const double fs = phi2_detail::f_sin(theta);
        a_[i] = phi2_detail::f_cos(theta);
        b_[i] = t * fs;
        c_[i] = -lambda * theta * fs;  // = lambda (sin theta - theta)/theta^2
      }
    }
  }
}

void Phi2Flow::apply_inplace(State& U) const {
  if (U.grid() != grid_) throw std::invalid_argument("Phi2Flow: grid mismatch");
  cdouble* u = U.u.coeffs.data();
  cdouble* v = U.v.coeffs.data();
  const size_t m = a_.size();
  for (size_t i = 0; i < m; ++i) {
    const cdouble uu = u[i], vv = v[i];
    u[i] = a_[i] * uu + b_[i] * vv;
    v[i] = c_[i] * uu + a_[i] * vv;
  }
}

State Phi2Flow::operator()(const State& U) const {
  State out = U;
  apply_inplace(out);
  return out;
}

State wave_group(const State& U, double t) { return WaveFlow(U.grid(), t)(U); }

SpectralField half_wave(const SpectralField& f, double t) {
  const auto& ksq = squared_wavenumbers(f.grid);
  SpectralField out(f.grid);
  for (size_t i = 0; i < f.coeffs.size(); ++i) {
    const double theta = t * std::sqrt(static_cast<double>(ksq[i]));
    out.coeffs[i] = f.coeffs[i] * cdouble(std::cos(theta), std::sin(theta));
  }
  return out;
}

SpectralField s_map(const SpectralField& f, const SpectralField& g, double t) {
  if (f.grid != g.grid) throw std::invalid_argument("s_map: grid mismatch");
  const auto& ksq = squared_wavenumbers(f.grid);
  SpectralField out(f.grid);
  for (size_t i = 0; i < f.coeffs.size(); ++i) {
    if (ksq[i] == 0) {
      out.coeffs[i] = f.coeffs[i] + t * g.coeffs[i];
    } else {
      const double lambda = std::sqrt(static_cast<double>(ksq[i]));
      out.coeffs[i] = std::cos(t * lambda) * f.coeffs[i] +
                      (std::sin(t * lambda) / lambda) * g.coeffs[i];
    }
  }
  return out;
}

State phi2_apply(const State& W, double t) { return Phi2Flow(W.grid(), t)(W); }

}  // namespace nlwave
