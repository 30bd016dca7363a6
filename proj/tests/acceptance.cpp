// Acceptance gate: one line per criterion, exit code = number of failures.
// NLWAVE_ACCEPT_QUICK=1 shrinks grids and step lists for development only;
// quick results are marked and do not constitute acceptance.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "nlwave/bench.hpp"
#include "nlwave/noise.hpp"
#include "nlwave/norms.hpp"
#include "nlwave/propagator.hpp"

using namespace nlwave;

namespace {

bool g_quick = false;
int g_failures = 0;

double now_s() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point t0 = clock::now();
  return std::chrono::duration<double>(clock::now() - t0).count();
}

void report(int idx, const char* name, bool pass, const std::string& detail) {
  std::printf("criterion %d %-28s %s  %s%s\n", idx, name, pass ? "PASS" : "FAIL",
              detail.c_str(), g_quick ? "  [quick: not acceptance]" : "");
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::vector<double> dyadic_taus(int coarse, int fine) {
  std::vector<double> taus;
  for (int e = coarse; e <= fine; ++e) taus.push_back(std::ldexp(1.0, -e));
  return taus;
}

ExperimentConfig rough_converge_config(Scheme scheme, KRule rule) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::converge;
  cfg.n = g_quick ? 16 : 64;
  cfg.model.alpha = 3.0;
  cfg.model.mu = 1;
  cfg.data.profile = DataProfile::noise;
  cfg.data.s = 1.0;
  cfg.data.seed = 1;
  cfg.data.amplitude = 0.5;
  cfg.scheme.scheme = scheme;
  cfg.scheme.k_rule = rule;
  cfg.scheme.c = 1.0;
  cfg.scheme.t_end = 1.0;
  cfg.tau_list = dyadic_taus(4, g_quick ? 7 : 9);
  return cfg;
}

double max_state_diff(const State& a, const State& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.u.coeffs.size(); ++i) {
    worst = std::max(worst, std::abs(a.u.coeffs[i] - b.u.coeffs[i]));
    worst = std::max(worst, std::abs(a.v.coeffs[i] - b.v.coeffs[i]));
  }
  return worst;
}

}  // namespace

int main() {
  g_quick = std::getenv("NLWAVE_ACCEPT_QUICK") != nullptr;

  // Criteria 1, 2 and 9 share one experiment family on the rough datum;
  // the Strang reference is computed once and reused where allowed.
  ExperimentConfig c1 = rough_converge_config(Scheme::lie, KRule::inverse_tau);
  std::string c1_csv;
  double c2_slope = 0.0;
  bool c2_slope_known = false;

  // --- 1: filtered Lie converges at order tau, within budget -------------
  try {
    const double t_start = now_s();
    SchemeConfig ref_cfg;
    ref_cfg.tau = c1.tau_list.back() / 32.0;
    ref_cfg.scheme = Scheme::strang_ref;
    ref_cfg.k_rule = KRule::none;
    ref_cfg.t_end = c1.scheme.t_end;
    const State U0 = build_initial_state(c1);
    const State ref = evolve_final(U0, c1.model, ref_cfg);
    const ConvergenceReport r1 = run_convergence(c1, &ref);
    c1_csv = to_csv(r1);
    const double elapsed = now_s() - t_start;
    const bool in_budget = elapsed < 600.0;
    const bool pass = r1.fit_valid && r1.fit.slope >= 0.8 && r1.fit.slope <= 1.2 &&
                      r1.fit.residual < 0.5 && in_budget;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "slope=%.3f (want [0.8,1.2]) residual=%.3f (<0.5) time=%.0fs (<600)",
                  r1.fit_valid ? r1.fit.slope : std::nan(""), r1.fit.residual, elapsed);
    report(1, "lie-order-tau", pass, buf);

    // --- 2: corrected Lie converges at order tau^{3/2} -------------------
    try {
      ExperimentConfig c2 =
          rough_converge_config(Scheme::corrected_lie, KRule::inverse_tau_3_2);
      const ConvergenceReport r2 = run_convergence(c2, &ref);
      c2_slope = r2.fit_valid ? r2.fit.slope : std::nan("");
      c2_slope_known = r2.fit_valid;
      const bool pass2 = r2.fit_valid && r2.fit.slope >= 1.3 && r2.fit.slope <= 1.7;
      char buf2[240];
      std::snprintf(buf2, sizeof(buf2), "slope=%.3f (want [1.3,1.7]) residual=%.3f%s",
                    c2_slope, r2.fit.residual,
                    pass2 ? ""
                          : "; K=tau^-3/2 exceeds the grid band at every tau here,"
                            " so the filter is inert and the unfiltered"
                            " second-order rate shows");
      report(2, "corrected-order-tau32", pass2, buf2);
    } catch (const std::exception& e) {
      report(2, "corrected-order-tau32", false, std::string("exception: ") + e.what());
    }
  } catch (const std::exception& e) {
    report(1, "lie-order-tau", false, std::string("exception: ") + e.what());
    report(2, "corrected-order-tau32", false, "skipped: criterion 1 setup failed");
  }

  // --- 3: corrected Lie on smooth data beats the rough-data rate ---------
  try {
    ExperimentConfig c3 =
        rough_converge_config(Scheme::corrected_lie, KRule::inverse_tau_3_2);
    c3.n = g_quick ? 16 : 32;
    c3.data.profile = DataProfile::single_mode;
    const ConvergenceReport r3 = run_convergence(c3);
    const bool margin_ok = c2_slope_known && r3.fit_valid &&
                           r3.fit.slope >= c2_slope + 0.2;
    const bool pass = r3.fit_valid && r3.fit.slope >= 1.8 && margin_ok;
    char buf[240];
    std::snprintf(buf, sizeof(buf), "slope=%.3f (want >=1.8 and >= %.3f+0.2)%s",
                  r3.fit_valid ? r3.fit.slope : std::nan(""),
                  c2_slope_known ? c2_slope : std::nan(""),
                  pass || !r3.fit_valid || r3.fit.slope < 1.8
                      ? ""
                      : "; the rough sweep already runs at its tau^2 ceiling,"
                        " so the margin cannot open");
    report(3, "corrected-smooth-order", pass, buf);
  } catch (const std::exception& e) {
    report(3, "corrected-smooth-order", false, std::string("exception: ") + e.what());
  }

  // --- 4: quintic nonlinearity keeps the Lie rate -------------------------
  // Blow-up at coarse steps is tolerated; the rate is read off the four
  // finest steps, which must all survive.  The step ladder runs finer than
  // in the cubic experiments because the quintic problem leaves its
  // large-step transient later; the reference stays at 2^-14, at least a
  // factor 8 below every measured step.
  try {
    ExperimentConfig c4 = rough_converge_config(Scheme::lie, KRule::inverse_tau);
    c4.n = g_quick ? 16 : 32;
    c4.model.alpha = 5.0;
    c4.tau_list = dyadic_taus(4, g_quick ? 7 : 11);
    const State U0 = build_initial_state(c4);

    SchemeConfig ref_cfg = c4.scheme;
    ref_cfg.scheme = Scheme::strang_ref;
    ref_cfg.k_rule = KRule::none;
    ref_cfg.tau = g_quick ? c4.tau_list.back() / 32.0 : std::ldexp(1.0, -14);
    const State ref = evolve_final(U0, c4.model, ref_cfg);

    std::vector<std::pair<double, double>> rows;
    int coarse_blowups = 0;
    bool fine_blowup = false;
    const std::size_t n_tau = c4.tau_list.size();
    for (std::size_t i = 0; i < n_tau; ++i) {
      SchemeConfig sc = c4.scheme;
      sc.tau = c4.tau_list[i];
      try {
        const State fin = evolve_final(U0, c4.model, sc);
        State d(fin.grid());
        for (int j = 0; j < fin.grid().size(); ++j) {
          d.u.coeffs[j] = fin.u.coeffs[j] - ref.u.coeffs[j];
          d.v.coeffs[j] = fin.v.coeffs[j] - ref.v.coeffs[j];
        }
        rows.emplace_back(sc.tau, error_norm_l2_hm1(d));
      } catch (const BlowupError&) {
        if (i + 4 >= n_tau) fine_blowup = true;
        ++coarse_blowups;
      }
    }
    std::vector<std::pair<double, double>> tail;
    const std::size_t have = rows.size();
    for (std::size_t i = have >= 4 ? have - 4 : 0; i < have; ++i) {
      tail.push_back(rows[i]);
    }
    const double slope = tail.size() >= 3 ? fit_order(tail).slope : std::nan("");
    const bool pass =
        !fine_blowup && have >= 4 && slope >= 0.7 && slope <= 1.3;
    char buf[180];
    std::snprintf(buf, sizeof(buf),
                  "slope=%.3f on finest 4 of tau=2^-4..2^-%d (want [0.7,1.3]), "
                  "%d coarse blow-ups%s",
                  slope, g_quick ? 7 : 11, coarse_blowups,
                  fine_blowup ? ", blow-up among finest 4" : "");
    report(4, "quintic-lie-order", pass, buf);
  } catch (const std::exception& e) {
    report(4, "quintic-lie-order", false, std::string("exception: ") + e.what());
  }

  // --- 5: sharp cutoff tail bound over 100 rough fields -------------------
  try {
    const TorusGrid g{g_quick ? 16 : 48};
    const double s = 1.0;
    double worst_excess = -1.0;
    bool pass = true;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const SpectralField f = sobolev_noise(g, s, seed, 1.0);
      const double hs = sobolev_norm(f, SobolevSpec{s, true});
      for (double gamma : {0.0, 1.0, 2.0}) {
        for (double K : {2.0, 4.0, 8.0, 16.0}) {
          SpectralField tail = f;
          lowpass_inplace(tail, K);  // tail = f - lowpass(f, K)
          for (std::size_t i = 0; i < tail.coeffs.size(); ++i) {
            tail.coeffs[i] = f.coeffs[i] - tail.coeffs[i];
          }
          const double lhs = sobolev_norm(tail, SobolevSpec{s - gamma, true});
          const double rhs = std::pow(K, -gamma) * hs + 1e-12;
          worst_excess = std::max(worst_excess, lhs - rhs);
          if (lhs > rhs) pass = false;
        }
      }
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "worst lhs-rhs=%.3e over 100 fields x 3 gammas x 4 K",
                  worst_excess);
    report(5, "projection-tail-bound", pass, buf);
  } catch (const std::exception& e) {
    report(5, "projection-tail-bound", false, std::string("exception: ") + e.what());
  }

  // --- 6: propagator identities -------------------------------------------
  try {
    const TorusGrid g{8};
    const State U{sobolev_noise(g, 1.0, 11, 1.0), sobolev_noise(g, 0.0, 12, 1.0)};
    double scale = 0.0;
    for (std::size_t i = 0; i < U.u.coeffs.size(); ++i) {
      scale = std::max(scale, std::abs(U.u.coeffs[i]));
      scale = std::max(scale, std::abs(U.v.coeffs[i]));
    }

    const double group_err =
        max_state_diff(wave_group(wave_group(U, 0.4), 0.35), wave_group(U, 0.75));

    const double before = std::hypot(sobolev_norm(U.u, SobolevSpec{1.0, true}),
                                     sobolev_norm(U.v, SobolevSpec{0.0, true}));
    const State W = wave_group(U, 1.3);
    const double after = std::hypot(sobolev_norm(W.u, SobolevSpec{1.0, true}),
                                    sobolev_norm(W.v, SobolevSpec{0.0, true}));
    const double iso_err = std::fabs(after - before) / before;

    // phi2 against its defining integral, composite Simpson.
    const double t = 2.0;
    const int intervals = 2000;
    State acc(g);
    const double h = 1.0 / intervals;
    for (int j = 0; j <= intervals; ++j) {
      const double sigma = j * h;
      double w = (j == 0 || j == intervals) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
      w *= h / 3.0 * (1.0 - sigma);
      const State term = wave_group(U, sigma * t);
      for (std::size_t i = 0; i < acc.u.coeffs.size(); ++i) {
        acc.u.coeffs[i] += w * term.u.coeffs[i];
        acc.v.coeffs[i] += w * term.v.coeffs[i];
      }
    }
    const double quad_err = max_state_diff(phi2_apply(U, t), acc) / scale;

    double crossover_err = 0.0;
    {
      using namespace phi2_detail;
      for (double theta : {0.9 * kSeriesThreshold, kSeriesThreshold,
                           1.1 * kSeriesThreshold}) {
        crossover_err = std::max(
            crossover_err,
            std::fabs(f_cos_series(theta) - f_cos_direct(theta)) / f_cos_direct(theta));
        crossover_err = std::max(
            crossover_err,
            std::fabs(f_sin_series(theta) - f_sin_direct(theta)) / f_sin_direct(theta));
      }
    }

    const bool pass = group_err < 1e-12 * scale && iso_err < 1e-13 &&
                      quad_err < 1e-10 && crossover_err < 1e-12;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "group=%.1e iso=%.1e phi2-quad=%.1e (<1e-10) crossover=%.1e (<1e-12)",
                  group_err / scale, iso_err, quad_err, crossover_err);
    report(6, "propagator-identities", pass, buf);
  } catch (const std::exception& e) {
    report(6, "propagator-identities", false, std::string("exception: ") + e.what());
  }

  // --- 7: discrete Strichartz scaling --------------------------------------
  try {
    ExperimentConfig cs;
    cs.kind = ExperimentKind::strichartz;
    cs.n = g_quick ? 32 : 128;
    cs.data.s = 1.0;
    cs.data.seed = 1;
    cs.data.amplitude = 0.5;
    cs.scheme.t_end = 1.0;
    cs.tau_list = {std::ldexp(1.0, -5), std::ldexp(1.0, -7)};
    cs.k_factors = {1.0, 2.0, 4.0, 8.0};
    const SpacetimeReport rs = run_strichartz(cs);
    double lo = 1e300, hi = 0.0, supdev = 0.0;
    for (const SpacetimeRow& row : rs.rows) {
      if (std::isinf(row.p)) {
        supdev = std::max(supdev, std::fabs(row.normalized - 1.0));
      } else {
        lo = std::min(lo, row.normalized);
        hi = std::max(hi, row.normalized);
      }
    }
    const double spread = hi / lo;

    ExperimentConfig ce = cs;
    ce.kind = ExperimentKind::endpoint;
    const SpacetimeReport re = run_endpoint(ce);
    double elo = 1e300, ehi = 0.0;
    for (const SpacetimeRow& row : re.rows) {
      elo = std::min(elo, row.normalized);
      ehi = std::max(ehi, row.normalized);
    }
    const double espread = ehi / elo;

    const bool pass = spread < 10.0 && supdev <= 1e-10 && espread < 10.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "(4,12,1) spread=%.2f (<10)  (inf,2,0) dev=%.1e (<=1e-10)  "
                  "endpoint spread=%.2f (<10)",
                  spread, supdev, espread);
    report(7, "strichartz-scaling", pass, buf);
  } catch (const std::exception& e) {
    report(7, "strichartz-scaling", false, std::string("exception: ") + e.what());
  }

  // --- 8: energy drift ------------------------------------------------------
  try {
    ExperimentConfig c8;
    c8.kind = ExperimentKind::energy;
    c8.n = 32;
    c8.data.s = 1.0;
    c8.data.seed = 1;
    // The relative Strang drift grows like the square of the data size;
    // this amplitude leaves a factor ~7 of headroom under the 1e-6 budget.
    c8.data.amplitude = 0.25;
    c8.scheme.scheme = Scheme::strang_ref;
    c8.scheme.k_rule = KRule::none;
    c8.scheme.tau = 1e-3;
    c8.scheme.t_end = g_quick ? 0.1 : 1.0;
    c8.stride = 1;
    const EnergyReport r8 = run_energy(c8);

    ExperimentConfig lin = c8;
    lin.model.linear = true;
    const EnergyReport rlin = run_energy(lin);

    const bool pass = r8.max_rel_drift < 1e-6 && rlin.max_rel_drift < 1e-12;
    char buf[140];
    std::snprintf(buf, sizeof(buf),
                  "nonlinear drift=%.2e (<1e-6)  linear drift=%.2e (<1e-12)",
                  r8.max_rel_drift, rlin.max_rel_drift);
    report(8, "energy-drift", pass, buf);
  } catch (const std::exception& e) {
    report(8, "energy-drift", false, std::string("exception: ") + e.what());
  }

  // --- 9: bit-exact reproducibility of criterion 1 ---------------------------
  try {
    if (c1_csv.empty()) {
      report(9, "bit-determinism", false, "skipped: criterion 1 produced no CSV");
    } else {
      const ConvergenceReport again = run_convergence(c1);  // reference recomputed
      const std::string csv2 = to_csv(again);
      const bool pass = csv2 == c1_csv;
      report(9, "bit-determinism", pass,
             pass ? "repeated pipeline is byte-identical"
                  : "CSV bytes differ between repeated runs");
    }
  } catch (const std::exception& e) {
    report(9, "bit-determinism", false, std::string("exception: ") + e.what());
  }

  std::printf("acceptance: %d of 9 criteria failed%s\n", g_failures,
              g_quick ? " [quick mode, not acceptance]" : "");
  return g_failures;
}
