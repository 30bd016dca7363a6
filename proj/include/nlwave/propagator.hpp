#pragma once

#include "nlwave/state.hpp"

namespace nlwave {

// Per-mode evaluation helpers for the phi_2 matrix entries, exposed for
// their branch-accuracy tests. theta = t*|k|.
namespace phi2_detail {

/// Branch switch point between the Taylor series and the direct formulas.
inline constexpr double kSeriesThreshold = 0.05;

// (1 - cos theta)/theta^2
double f_cos_series(double theta);
double f_cos_direct(double theta);
double f_cos(double theta);

// (theta - sin theta)/theta^3
double f_sin_series(double theta);
double f_sin_direct(double theta);
double f_sin(double theta);

// (sin theta - theta)/theta
double f_lin(double theta);

}  // namespace phi2_detail

/// Exact linear wave flow e^{tA} as a cached per-mode 2x2 action:
/// at lambda = |k| > 0 the matrix (cos(t l), sin(t l)/l; -l sin(t l), cos(t l)),
/// at k = 0 the limit (u,v) -> (u + t v, v).
class WaveFlow {
 public:
  WaveFlow(TorusGrid g, double t);
  void apply_inplace(State& U) const;
  State operator()(const State& U) const;
  double t() const { return t_; }

 private:
  TorusGrid grid_;
  double t_;
  std::vector<double> a_, b_, c_;  // cos, sin/lambda, -lambda*sin
};

/// phi_2(tA) as a cached per-mode 2x2 action. With theta = t*lambda the
/// entries are
///   a = (1-cos theta)/theta^2            b = (theta - sin theta)/(theta^2 lambda)
///   c = (sin theta - theta)/(t^2 lambda) d = a
/// and the zero-mode limit matrix is (1/2, t/6; 0, 1/2). phi_2(0) = I/2.
class Phi2Flow {
 public:
  Phi2Flow(TorusGrid g, double t);
  void apply_inplace(State& U) const;
  State operator()(const State& U) const;
  double t() const { return t_; }

 private:
  TorusGrid grid_;
  double t_;
  std::vector<double> a_, b_, c_;
};

State wave_group(const State& U, double t);

/// Half-wave group e^{it|nabla|}: multiplies u_hat_k by e^{it|k|}.
SpectralField half_wave(const SpectralField& f, double t);

/// u-component of the linear flow: cos(t|nabla|)f + |nabla|^{-1}sin(t|nabla|)g,
/// zero mode f_0 + t g_0.
SpectralField s_map(const SpectralField& f, const SpectralField& g, double t);

State phi2_apply(const State& W, double t);

}  // namespace nlwave
