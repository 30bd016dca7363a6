#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nlwave/norms.hpp"
#include "nlwave/state.hpp"

namespace nlwave {

/// Product norm on (u, v): u in X^s, v in X^{s-1}, homogeneous or not.
struct PairNormSpec {
  double s = 1.0;
  bool homogeneous = false;
};

double pair_norm(const State& U, const PairNormSpec& spec);

/// L^2 x H^-1 error norm: u in L^2, v in homogeneous H^-1 except that the
/// v zero mode enters with weight 1 (pure |k|^-1 weighting would drop it).
double error_norm_l2_hm1(const State& U);

/// H^1 x L^2 norm with the inhomogeneous H^1 weight (1 + |k|^2)^{1/2}.
double error_norm_h1_l2(const State& U);

/// Discrete space-time norm ell^p_tau L^q over a sampled sequence:
/// (tau * sum_n ||f_n||_{L^q}^p)^{1/p}, max over n when p = inf.
struct SpacetimeNormSpec {
  double p = 2.0;  // may be +infinity
  double q = 2.0;
  double tau = 1.0;
};

double spacetime_norm(const std::vector<SpectralField>& seq,
                      const SpacetimeNormSpec& spec);

/// Wave-admissibility of (p, q, gamma) in three space dimensions:
/// p in (2, inf], q in [2, inf), 1/p + 1/q <= 1/2 and 1/p + 3/q = 3/2 - gamma.
bool wave_admissible(double p, double q, double gamma);

/// ell^p_tau L^q norm of n -> Pi_K e^{i n tau |grad|} f over n = 0..floor(T/tau),
/// divided by ||f||_{H^gamma homogeneous}. Requires admissibility and K >= 1/tau.
double strichartz_ratio(const SpectralField& f, double cutoff, double tau, double p,
                        double q, double gamma, double t_end);

/// ell^2_tau L^inf norm of the same sequence divided by
/// sqrt(K tau + log(1 + K N tau)) * ||f||_{H^1 homogeneous}.
double endpoint_ratio(const SpectralField& f, double cutoff, double tau, long n_steps);

struct FitResult {
  double slope = 0.0;
  double residual = 0.0;  // max |log2 err - fitted| over the used rows
  int n_used = 0;
};

/// Least-squares slope of log2(err) against log2(tau). Rows whose error is
/// non-finite or <= 1e-10 are excluded; fewer than 3 surviving rows is an error.
FitResult fit_order(const std::vector<std::pair<double, double>>& tau_err);

struct ConvergenceRow {
  double tau = 0.0;
  double cutoff = 0.0;  // resolved K (may be +infinity)
  double err_l2hm1 = 0.0;
  double err_h1l2 = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;  // tau strictly descending
  FitResult fit;                     // fitted on err_l2hm1
  bool fit_valid = false;
  /// Resolved run parameters in emission order (stable across runs).
  std::vector<std::pair<std::string, std::string>> manifest;
};

/// Canonical CSV: header tau,K,err_l2hm1,err_h1l2 then one row per tau,
/// every value printed with %.17g. Byte-stable for identical inputs.
std::string to_csv(const ConvergenceReport& report);

/// JSON mirror of the CSV plus the manifest and the fit block.
std::string to_json(const ConvergenceReport& report);

}  // namespace nlwave
