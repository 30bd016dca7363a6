#include "nlwave/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "nlwave/dealias.hpp"
#include "nlwave/propagator.hpp"

namespace nlwave {

namespace {

constexpr double kTwoPiCubed =
    8.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi;
constexpr double kBlowupFactor = 1e8;

// |x|^{alpha-1} x for real samples, with exact polynomial fast paths.
inline double nonlinear_power(double x, double alpha) {
  if (alpha == 3.0) return x * x * x;
  if (alpha == 5.0) {
    const double x2 = x * x;
    return x2 * x2 * x;
  }
  return std::pow(std::fabs(x), alpha - 1.0) * x;
}

// H^1 x L^2 norm used by the blow-up guard.
double guard_norm(const State& U) {
  const auto& ksq = squared_wavenumbers(U.grid());
  long double acc = 0.0L;
  const std::size_t size = U.u.coeffs.size();
  for (std::size_t i = 0; i < size; ++i) {
    acc += (1.0L + static_cast<long double>(ksq[i])) * std::norm(U.u.coeffs[i]);
    acc += static_cast<long double>(std::norm(U.v.coeffs[i]));
  }
  return std::sqrt(static_cast<double>(acc) * kTwoPiCubed);
}

inline void axpy(SpectralField& y, double a, const SpectralField& x) {
  const std::size_t size = y.coeffs.size();
  for (std::size_t i = 0; i < size; ++i) {
    y.coeffs[i] += a * x.coeffs[i];
  }
}

long step_count(const SchemeConfig& cfg) {
  // The tiny slack absorbs representation error in t_end / tau when t_end is
  // an exact multiple of tau.
  return static_cast<long>(std::floor(cfg.t_end / cfg.tau + 1e-12));
}

// Per-run machinery: the linear flows are tabulated once, then every step is
// the literal composition from the scheme definitions.
class Evolver {
 public:
  Evolver(const TorusGrid& grid, const ModelParams& p, const SchemeConfig& cfg)
      : p_(p), cfg_(cfg), cutoff_(resolve_cutoff(cfg)), flow_full_(grid, cfg.tau) {
    if (cfg.scheme == Scheme::strang_ref) {
      flow_half_.emplace(grid, cfg.tau / 2.0);
    }
    if (cfg.scheme == Scheme::corrected_lie) {
      phi2_.emplace(grid, -2.0 * cfg.tau);
    }
  }

  void prepare_initial(State& U) const {
    if (cfg_.scheme != Scheme::strang_ref) {
      lowpass_inplace(U, cutoff_);
    }
  }

  void step(State& U) const {
    switch (cfg_.scheme) {
      case Scheme::lie: {
        if (!p_.linear) {
          SpectralField gk = g_apply(U.u, p_);
          lowpass_inplace(gk, cutoff_);
          axpy(U.v, cfg_.tau, gk);
        }
        flow_full_.apply_inplace(U);
        break;
      }
      case Scheme::corrected_lie: {
        if (!p_.linear) {
          SpectralField gk = g_apply(U.u, p_);
          State w = h_apply(U, p_);
          phi2_->apply_inplace(w);
          const double tau = cfg_.tau;
          axpy(U.v, tau, gk);
          axpy(U.u, tau * tau, w.u);
          axpy(U.v, tau * tau, w.v);
          lowpass_inplace(U, cutoff_);
        }
        flow_full_.apply_inplace(U);
        break;
      }
      case Scheme::strang_ref: {
        flow_half_->apply_inplace(U);
        if (!p_.linear) {
          SpectralField gk = g_apply(U.u, p_);
          axpy(U.v, cfg_.tau, gk);
        }
        flow_half_->apply_inplace(U);
        break;
      }
    }
  }

 private:
  ModelParams p_;
  SchemeConfig cfg_;
  double cutoff_;
  WaveFlow flow_full_;
  std::optional<WaveFlow> flow_half_;
  std::optional<Phi2Flow> phi2_;
};

}  // namespace

void validate_model(const ModelParams& p) {
  if (!(p.alpha >= 3.0 && p.alpha <= 5.0)) {
    throw std::invalid_argument("ModelParams: alpha must lie in [3, 5]");
  }
  if (p.mu != 1 && p.mu != -1) {
    throw std::invalid_argument("ModelParams: mu must be +1 or -1");
  }
}

double resolve_cutoff(const SchemeConfig& cfg) {
  switch (cfg.k_rule) {
    case KRule::none:
      return std::numeric_limits<double>::infinity();
    case KRule::inverse_tau:
      return cfg.c / cfg.tau;
    case KRule::inverse_tau_3_2:
      return cfg.c * std::pow(cfg.tau, -1.5);
    case KRule::fixed:
      return cfg.fixed_k;
  }
  throw std::logic_error("resolve_cutoff: unknown rule");
}

void validate_scheme_config(const SchemeConfig& cfg, const TorusGrid& grid,
                            const ModelParams& p) {
  validate_model(p);
  if (!(cfg.tau > 0.0) || cfg.tau > 1.0) {
    throw std::invalid_argument("SchemeConfig: tau must lie in (0, 1]");
  }
  if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end)) {
    throw std::invalid_argument("SchemeConfig: t_end must be finite and >= 0");
  }
  if (cfg.scheme == Scheme::corrected_lie && !p.linear && p.alpha != 3.0) {
    throw std::invalid_argument(
        "SchemeConfig: the corrected scheme needs the cubic nonlinearity");
  }
  if ((cfg.k_rule == KRule::inverse_tau || cfg.k_rule == KRule::inverse_tau_3_2) &&
      !(cfg.c > 0.0)) {
    throw std::invalid_argument("SchemeConfig: cutoff prefactor c must be > 0");
  }
  const double cutoff = resolve_cutoff(cfg);
  if (cfg.k_rule != KRule::none) {
    // Slack covers 1/tau itself computed in floating point.
    if (cutoff < 1.0 / cfg.tau - 1e-9) {
      throw std::invalid_argument("SchemeConfig: cutoff rule must give K >= 1/tau");
    }
  }
  if (cfg.k_rule == KRule::fixed) {
    if (!(cfg.fixed_k > 0.0)) {
      throw std::invalid_argument("SchemeConfig: fixed cutoff must be > 0");
    }
    if (cfg.fixed_k > grid.n / 2 - 1) {
      throw std::invalid_argument(
          "SchemeConfig: fixed cutoff exceeds the resolved band n/2 - 1");
    }
  }
}

BlowupError::BlowupError(long step_, double norm_, double initial_norm_)
    : std::runtime_error("solution blew up at step " + std::to_string(step_)),
      step(step_),
      norm(norm_),
      initial_norm(initial_norm_) {}

SpectralField g_apply(const SpectralField& u, const ModelParams& p) {
  validate_model(p);
  if (p.linear) {
    return SpectralField(u.grid);
  }
  const int m = dealias_padded_size(u.grid.n, p.alpha);
  const PaddedEvaluator& ev = PaddedEvaluator::shared(u.grid.n, m);
  std::vector<double> phys;
  ev.to_padded(u, phys);
  const double mu = static_cast<double>(p.mu);
  for (double& x : phys) {
    x = -mu * nonlinear_power(x, p.alpha);
  }
  return ev.from_padded(phys);
}

State h_apply(const State& U, const ModelParams& p) {
  validate_model(p);
  if (!p.linear && p.alpha != 3.0) {
    throw std::invalid_argument("h_apply: defined for the cubic nonlinearity only");
  }
  if (p.linear) {
    State zero = U;
    std::fill(zero.u.coeffs.begin(), zero.u.coeffs.end(), cdouble{0.0, 0.0});
    std::fill(zero.v.coeffs.begin(), zero.v.coeffs.end(), cdouble{0.0, 0.0});
    return zero;
  }
  const int n = U.grid().n;
  const int m = dealias_padded_size(n, p.alpha);
  const PaddedEvaluator& ev = PaddedEvaluator::shared(n, m);
  std::vector<double> uphys, vphys;
  ev.to_padded(U.u, uphys);
  ev.to_padded(U.v, vphys);
  const double mu = static_cast<double>(p.mu);
  // First component -g(u) = mu u^3, second g'(u) v = -3 mu u^2 v.
  std::vector<double> first(uphys.size());
  for (std::size_t i = 0; i < uphys.size(); ++i) {
    const double x = uphys[i];
    first[i] = mu * x * x * x;
    vphys[i] = -3.0 * mu * x * x * vphys[i];
  }
  return State{ev.from_padded(first), ev.from_padded(vphys)};
}

State lie_step(const State& U, const ModelParams& p, const SchemeConfig& cfg) {
  if (cfg.scheme != Scheme::lie) {
    throw std::invalid_argument("lie_step: cfg.scheme mismatch");
  }
  validate_scheme_config(cfg, U.grid(), p);
  Evolver e(U.grid(), p, cfg);
  State out = U;
  e.step(out);
  return out;
}

State corrected_lie_step(const State& U, const ModelParams& p, const SchemeConfig& cfg) {
  if (cfg.scheme != Scheme::corrected_lie) {
    throw std::invalid_argument("corrected_lie_step: cfg.scheme mismatch");
  }
  validate_scheme_config(cfg, U.grid(), p);
  Evolver e(U.grid(), p, cfg);
  State out = U;
  e.step(out);
  return out;
}

State strang_reference_step(const State& U, const ModelParams& p, double tau) {
  SchemeConfig cfg;
  cfg.tau = tau;
  cfg.scheme = Scheme::strang_ref;
  cfg.k_rule = KRule::none;
  cfg.t_end = tau;
  validate_scheme_config(cfg, U.grid(), p);
  Evolver e(U.grid(), p, cfg);
  State out = U;
  e.step(out);
  return out;
}

State evolve_observed(const State& U0, const ModelParams& p, const SchemeConfig& cfg,
                      long stride,
                      const std::function<void(long, double, const State&)>& observer) {
  validate_scheme_config(cfg, U0.grid(), p);
  if (stride < 1) {
    throw std::invalid_argument("evolve: stride must be >= 1");
  }
  Evolver e(U0.grid(), p, cfg);
  State U = U0;
  e.prepare_initial(U);
  const long nsteps = step_count(cfg);
  const double initial = guard_norm(U);
  const double limit = kBlowupFactor * initial;
  if (observer) observer(0, 0.0, U);
  for (long n = 1; n <= nsteps; ++n) {
    e.step(U);
    const double norm = guard_norm(U);
    if (!std::isfinite(norm) || (initial > 0.0 && norm > limit)) {
      throw BlowupError(n, norm, initial);
    }
    if (observer && (n % stride == 0 || n == nsteps)) {
      observer(n, static_cast<double>(n) * cfg.tau, U);
    }
  }
  return U;
}

Trajectory evolve(const State& U0, const ModelParams& p, const SchemeConfig& cfg,
                  long stride) {
  Trajectory traj;
  evolve_observed(U0, p, cfg, stride,
                  [&traj](long step, double t, const State& s) {
                    traj.push_back(TrajectoryEntry{step, t, s});
                  });
  return traj;
}

State evolve_final(const State& U0, const ModelParams& p, const SchemeConfig& cfg) {
  return evolve_observed(U0, p, cfg, 1, nullptr);
}

double energy(const State& U, const ModelParams& p) {
  validate_model(p);
  const auto& ksq = squared_wavenumbers(U.grid());
  long double quad = 0.0L;
  const std::size_t size = U.u.coeffs.size();
  for (std::size_t i = 0; i < size; ++i) {
    quad += static_cast<long double>(ksq[i]) * std::norm(U.u.coeffs[i]);
    quad += static_cast<long double>(std::norm(U.v.coeffs[i]));
  }
  double total = 0.5 * static_cast<double>(quad) * kTwoPiCubed;
  if (p.linear) return total;
  const int n = U.grid().n;
  const int m = dealias_padded_size(n, p.alpha);
  const PaddedEvaluator& ev = PaddedEvaluator::shared(n, m);
  std::vector<double> phys;
  ev.to_padded(U.u, phys);
  const double q = p.alpha + 1.0;
  long double pot = 0.0L;
  if (p.alpha == 3.0) {
    for (double x : phys) {
      const double x2 = x * x;
      pot += static_cast<long double>(x2 * x2);
    }
  } else if (p.alpha == 5.0) {
    for (double x : phys) {
      const double x2 = x * x;
      pot += static_cast<long double>(x2 * x2 * x2);
    }
  } else {
    for (double x : phys) {
      pot += static_cast<long double>(std::pow(std::fabs(x), q));
    }
  }
  const double cell = kTwoPiCubed / static_cast<double>(phys.size());
  total += static_cast<double>(p.mu) / q * static_cast<double>(pot) * cell;
  return total;
}

}  // namespace nlwave
