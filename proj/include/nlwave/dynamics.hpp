#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "nlwave/state.hpp"

namespace nlwave {

/// Right-hand side data for  d^2/dt^2 u = Lap u - mu |u|^{alpha-1} u  on the
/// 2pi-periodic torus, written first order in U = (u, v = du/dt).
struct ModelParams {
  double alpha = 3.0;  // nonlinearity power, in [3, 5]
  int mu = 1;          // +1 defocusing, -1 focusing
  bool linear = false; // drop the nonlinearity entirely (free wave)
};

void validate_model(const ModelParams& p);

enum class Scheme { lie, corrected_lie, strang_ref };

enum class KRule {
  none,            // no frequency cutoff
  inverse_tau,     // K = c / tau
  inverse_tau_3_2, // K = c * tau^{-3/2}
  fixed,           // K = fixed_k
};

struct SchemeConfig {
  double tau = 0.0;
  Scheme scheme = Scheme::lie;
  KRule k_rule = KRule::inverse_tau;
  double c = 1.0;        // prefactor for the derived rules
  double fixed_k = 0.0;  // cutoff for KRule::fixed
  double t_end = 1.0;
};

/// Resolved cutoff value; +infinity when no rule is active.
double resolve_cutoff(const SchemeConfig& cfg);

/// Rejects non-positive or > 1 steps, inconsistent cutoff rules (an active
/// rule must give K >= 1/tau), the corrected scheme outside alpha = 3, and a
/// fixed cutoff beyond the resolved lattice band (n/2 - 1).
void validate_scheme_config(const SchemeConfig& cfg, const TorusGrid& grid,
                            const ModelParams& p);

struct BlowupError : std::runtime_error {
  BlowupError(long step_, double norm_, double initial_norm_);
  long step;            // first step whose output tripped the guard
  double norm;          // H^1 x L^2 norm at that step (may be inf/nan)
  double initial_norm;  // same norm of the (filtered) initial state
};

/// g(u) = -mu |u|^{alpha-1} u, evaluated pointwise on the dealiasing grid and
/// truncated back to the band |k_i| <= n/2 - 1. Zero for linear models.
SpectralField g_apply(const SpectralField& u, const ModelParams& p);

/// H(U) = (-g(u), g'(u) v) with g'(u) = -3 mu u^2; defined for alpha = 3 only.
State h_apply(const State& U, const ModelParams& p);

/// One step of each scheme. With W(t) the wave group, Pi_K the cutoff and
/// G(U) = (0, g(u)):
///
///   lie:        U+ = W(tau) [ U + tau Pi_K G(U) ]
///   corrected:  U+ = W(tau) Pi_K [ U + tau G(U) + tau^2 phi2(-2 tau A) H(U) ]
///   strang_ref: U+ = W(tau/2) [ W(tau/2) U + tau G(W(tau/2) U) ]   (no cutoff)
///
/// The caller's cfg.scheme must match the function used.
State lie_step(const State& U, const ModelParams& p, const SchemeConfig& cfg);
State corrected_lie_step(const State& U, const ModelParams& p, const SchemeConfig& cfg);
State strang_reference_step(const State& U, const ModelParams& p, double tau);

struct TrajectoryEntry {
  long step = 0;
  double t = 0.0;
  State state;
};

using Trajectory = std::vector<TrajectoryEntry>;

/// Runs floor(t_end / tau) steps of cfg.scheme from the scheme's own initial
/// state (Pi_K U0 for the filtered schemes, U0 for the reference). Entry 0 is
/// that initial state; later entries are kept every `stride` steps plus the
/// final one. Throws BlowupError when the H^1 x L^2 norm exceeds 1e8 times
/// its initial value or stops being finite.
Trajectory evolve(const State& U0, const ModelParams& p, const SchemeConfig& cfg,
                  long stride = 1);

/// Same time loop without storage; returns the final state.
State evolve_final(const State& U0, const ModelParams& p, const SchemeConfig& cfg);

/// Same loop, invoking observer(step, t, state) at entry 0, every `stride`
/// steps, and at the final step.
State evolve_observed(const State& U0, const ModelParams& p, const SchemeConfig& cfg,
                      long stride,
                      const std::function<void(long, double, const State&)>& observer);

/// H(U) = 1/2 ||v||_{L2}^2 + 1/2 ||grad u||_{L2}^2 + mu/(alpha+1) ||u||^{alpha+1}_{L^{alpha+1}}.
/// The potential term is integrated on the dealiasing grid, which is exact
/// for the polynomial powers; linear models keep only the quadratic part.
double energy(const State& U, const ModelParams& p);

}  // namespace nlwave
