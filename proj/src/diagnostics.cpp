#include "nlwave/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "nlwave/propagator.hpp"

namespace nlwave {

namespace {

constexpr double kTwoPiCubed =
    8.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi;
constexpr double kErrorFloor = 1e-10;

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

long floor_steps(double t_end, double tau) {
  return static_cast<long>(std::floor(t_end / tau + 1e-12));
}

}  // namespace

double pair_norm(const State& U, const PairNormSpec& spec) {
  const double nu = sobolev_norm(U.u, SobolevSpec{spec.s, spec.homogeneous});
  const double nv = sobolev_norm(U.v, SobolevSpec{spec.s - 1.0, spec.homogeneous});
  return std::hypot(nu, nv);
}

double error_norm_l2_hm1(const State& U) {
  const auto& ksq = squared_wavenumbers(U.grid());
  long double acc = 0.0L;
  const std::size_t size = U.u.coeffs.size();
  for (std::size_t i = 0; i < size; ++i) {
    acc += static_cast<long double>(std::norm(U.u.coeffs[i]));
    // |k|^-2 weight on v, except weight 1 on the zero mode.
    const long double wv = ksq[i] == 0 ? 1.0L : 1.0L / static_cast<long double>(ksq[i]);
    acc += wv * static_cast<long double>(std::norm(U.v.coeffs[i]));
  }
  return std::sqrt(static_cast<double>(acc) * kTwoPiCubed);
}

double error_norm_h1_l2(const State& U) {
  const double nu = sobolev_norm(U.u, SobolevSpec{1.0, false});
  const double nv = sobolev_norm(U.v, SobolevSpec{0.0, false});
  return std::hypot(nu, nv);
}

double spacetime_norm(const std::vector<SpectralField>& seq,
                      const SpacetimeNormSpec& spec) {
  if (seq.empty()) {
    throw std::invalid_argument("spacetime_norm: empty sequence");
  }
  if (!(spec.q >= 1.0)) {
    throw std::invalid_argument("spacetime_norm: q must be >= 1");
  }
  const bool p_inf = std::isinf(spec.p);
  if (!p_inf && !(spec.p >= 1.0)) {
    throw std::invalid_argument("spacetime_norm: p must be >= 1 or infinity");
  }
  if (!p_inf && !(spec.tau > 0.0)) {
    throw std::invalid_argument("spacetime_norm: tau must be > 0");
  }
  double best = 0.0;
  long double acc = 0.0L;
  for (const SpectralField& f : seq) {
    const double x = lebesgue_norm(f, spec.q);
    if (p_inf) {
      best = std::max(best, x);
    } else {
      acc += std::pow(static_cast<long double>(x), static_cast<long double>(spec.p));
    }
  }
  if (p_inf) return best;
  return std::pow(spec.tau * static_cast<double>(acc), 1.0 / spec.p);
}

bool wave_admissible(double p, double q, double gamma) {
  if (!(p > 2.0)) return false;  // p = inf passes
  if (!(q >= 2.0) || std::isinf(q)) return false;
  const double ip = std::isinf(p) ? 0.0 : 1.0 / p;
  const double iq = 1.0 / q;
  if (ip + iq > 0.5 + 1e-12) return false;
  return std::fabs(ip + 3.0 * iq - (1.5 - gamma)) <= 1e-12;
}

double strichartz_ratio(const SpectralField& f, double cutoff, double tau, double p,
                        double q, double gamma, double t_end) {
  if (!wave_admissible(p, q, gamma)) {
    throw std::invalid_argument("strichartz_ratio: (p, q, gamma) is not wave-admissible");
  }
  if (!(tau > 0.0)) {
    throw std::invalid_argument("strichartz_ratio: tau must be > 0");
  }
  if (!(t_end >= 0.0)) {
    throw std::invalid_argument("strichartz_ratio: t_end must be >= 0");
  }
  if (cutoff < 1.0 / tau - 1e-9) {
    throw std::invalid_argument("strichartz_ratio: requires K >= 1/tau");
  }
  const double denom = sobolev_norm(f, SobolevSpec{gamma, true});
  if (!(denom > 0.0)) {
    throw std::invalid_argument("strichartz_ratio: datum has zero homogeneous norm");
  }
  // Pi_K commutes with the phase flow, so project once up front.
  const SpectralField base = lowpass(f, cutoff);
  const long n_steps = floor_steps(t_end, tau);
  const bool p_inf = std::isinf(p);
  double best = 0.0;
  long double acc = 0.0L;
  for (long n = 0; n <= n_steps; ++n) {
    const SpectralField fn = half_wave(base, static_cast<double>(n) * tau);
    const double x = lebesgue_norm(fn, q);
    if (p_inf) {
      best = std::max(best, x);
    } else {
      acc += std::pow(static_cast<long double>(x), static_cast<long double>(p));
    }
  }
  const double num = p_inf ? best : std::pow(tau * static_cast<double>(acc), 1.0 / p);
  return num / denom;
}

double endpoint_ratio(const SpectralField& f, double cutoff, double tau, long n_steps) {
  if (!(tau > 0.0)) {
    throw std::invalid_argument("endpoint_ratio: tau must be > 0");
  }
  if (n_steps < 0) {
    throw std::invalid_argument("endpoint_ratio: n_steps must be >= 0");
  }
  if (cutoff < 1.0 / tau - 1e-9) {
    throw std::invalid_argument("endpoint_ratio: requires K >= 1/tau");
  }
  const double h1 = sobolev_norm(f, SobolevSpec{1.0, true});
  if (!(h1 > 0.0)) {
    throw std::invalid_argument("endpoint_ratio: datum has zero homogeneous H^1 norm");
  }
  const SpectralField base = lowpass(f, cutoff);
  long double acc = 0.0L;
  for (long n = 0; n <= n_steps; ++n) {
    const SpectralField fn = half_wave(base, static_cast<double>(n) * tau);
    const double x = lebesgue_norm(fn, std::numeric_limits<double>::infinity());
    acc += static_cast<long double>(x) * x;
  }
  const double num = std::sqrt(tau * static_cast<double>(acc));
  const double scale =
      std::sqrt(cutoff * tau + std::log1p(cutoff * static_cast<double>(n_steps) * tau));
  return num / (scale * h1);
}

FitResult fit_order(const std::vector<std::pair<double, double>>& tau_err) {
  std::vector<double> xs, ys;
  xs.reserve(tau_err.size());
  ys.reserve(tau_err.size());
  for (const auto& [tau, err] : tau_err) {
    if (!(tau > 0.0)) {
      throw std::invalid_argument("fit_order: tau must be > 0");
    }
    if (!std::isfinite(err) || err <= kErrorFloor) continue;
    xs.push_back(std::log2(tau));
    ys.push_back(std::log2(err));
  }
  if (xs.size() < 3) {
    throw std::invalid_argument("fit_order: fewer than 3 rows above the error floor");
  }
  const std::size_t n = xs.size();
  long double sx = 0.0L, sy = 0.0L, sxx = 0.0L, sxy = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += static_cast<long double>(xs[i]) * xs[i];
    sxy += static_cast<long double>(xs[i]) * ys[i];
  }
  const long double det = static_cast<long double>(n) * sxx - sx * sx;
  if (det == 0.0L) {
    throw std::invalid_argument("fit_order: degenerate tau values");
  }
  const double slope = static_cast<double>((static_cast<long double>(n) * sxy - sx * sy) / det);
  const double intercept = static_cast<double>((sy - slope * sx) / static_cast<long double>(n));
  double residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    residual = std::max(residual, std::fabs(ys[i] - (intercept + slope * xs[i])));
  }
  return FitResult{slope, residual, static_cast<int>(n)};
}

std::string to_csv(const ConvergenceReport& report) {
  std::string out = "tau,K,err_l2hm1,err_h1l2\n";
  for (const ConvergenceRow& r : report.rows) {
    out += fmt17(r.tau);
    out += ',';
    out += fmt17(r.cutoff);
    out += ',';
    out += fmt17(r.err_l2hm1);
    out += ',';
    out += fmt17(r.err_h1l2);
    out += '\n';
  }
  return out;
}

std::string to_json(const ConvergenceReport& report) {
  nlohmann::ordered_json j;
  j["format"] = "nlwave-convergence-v1";
  nlohmann::ordered_json manifest = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.manifest) {
    manifest[key] = value;
  }
  j["manifest"] = std::move(manifest);
  if (report.fit_valid) {
    j["fit"] = {{"slope", report.fit.slope},
                {"residual", report.fit.residual},
                {"n_used", report.fit.n_used}};
  } else {
    j["fit"] = nullptr;
  }
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const ConvergenceRow& r : report.rows) {
    nlohmann::ordered_json row;
    row["tau"] = r.tau;
    if (std::isinf(r.cutoff)) {
      row["K"] = "inf";
    } else {
      row["K"] = r.cutoff;
    }
    row["err_l2hm1"] = r.err_l2hm1;
    row["err_h1l2"] = r.err_h1l2;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

}  // namespace nlwave
