#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "nlwave/diagnostics.hpp"
#include "nlwave/dynamics.hpp"
#include "nlwave/noise.hpp"
#include "nlwave/norms.hpp"
#include "nlwave/propagator.hpp"

using namespace nlwave;

namespace {

constexpr double kPi = std::numbers::pi;
const double kVol = std::pow(2.0 * kPi, 3.0);

State noise_state(const TorusGrid& g, double s, std::uint64_t seed, double amp) {
  return State{sobolev_noise(g, s, seed, amp), sobolev_noise(g, s - 1.0, seed + 1, amp)};
}

State diff(const State& a, const State& b) {
  State d = a;
  for (std::size_t i = 0; i < d.u.coeffs.size(); ++i) {
    d.u.coeffs[i] -= b.u.coeffs[i];
    d.v.coeffs[i] -= b.v.coeffs[i];
  }
  return d;
}

double max_coeff(const State& a) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.u.coeffs.size(); ++i) {
    worst = std::max(worst, std::abs(a.u.coeffs[i]));
    worst = std::max(worst, std::abs(a.v.coeffs[i]));
  }
  return worst;
}

SpectralField const_field(const TorusGrid& g, double c) {
  SpectralField f(g);
  f.at(0, 0, 0) = cdouble{c, 0.0};
  return f;
}

SchemeConfig cfg_of(Scheme s, KRule rule, double tau, double t_end, double c = 1.0,
                    double fixed_k = 0.0) {
  SchemeConfig cfg;
  cfg.scheme = s;
  cfg.k_rule = rule;
  cfg.tau = tau;
  cfg.t_end = t_end;
  cfg.c = c;
  cfg.fixed_k = fixed_k;
  return cfg;
}

// Fine Strang run over [0, t_end], no cutoff.
State strang_run(const State& U0, const ModelParams& p, double tau, double t_end) {
  return evolve_final(U0, p, cfg_of(Scheme::strang_ref, KRule::none, tau, t_end));
}

}  // namespace

TEST_CASE("g on constant fields matches the closed form") {
  const TorusGrid g{8};
  ModelParams p;  // alpha 3, mu +1
  const SpectralField ga = g_apply(const_field(g, 2.0), p);
  CHECK(ga.at(0, 0, 0).real() == doctest::Approx(-8.0).epsilon(1e-13));
  double off = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    if (i != g.flat(0, 0, 0)) off = std::max(off, std::abs(ga.coeffs[i]));
  }
  CHECK(off < 1e-13);

  p.alpha = 5.0;
  const SpectralField gb = g_apply(const_field(g, -1.0), p);
  CHECK(gb.at(0, 0, 0).real() == doctest::Approx(1.0).epsilon(1e-13));

  p.alpha = 3.0;
  p.mu = -1;
  const SpectralField gc = g_apply(const_field(g, 2.0), p);
  CHECK(gc.at(0, 0, 0).real() == doctest::Approx(8.0).epsilon(1e-13));
}

TEST_CASE("cubing a cosine produces the two expected harmonics") {
  const TorusGrid g{16};
  SpectralField u(g);
  u.at(1, 0, 0) = cdouble{0.5, 0.0};
  u.at(-1, 0, 0) = cdouble{0.5, 0.0};  // u = cos(x1)
  ModelParams p;
  const SpectralField gu = g_apply(u, p);
  // -cos^3 = -(3/4) cos(x1) - (1/4) cos(3 x1); each cosine splits in half.
  CHECK(gu.at(1, 0, 0).real() == doctest::Approx(-0.375).epsilon(1e-13));
  CHECK(gu.at(3, 0, 0).real() == doctest::Approx(-0.125).epsilon(1e-13));
  CHECK(std::abs(gu.at(2, 0, 0)) < 1e-14);
  CHECK(std::abs(gu.at(5, 0, 0)) < 1e-14);
  CHECK(hermitian_defect(gu) < 1e-14);
}

TEST_CASE("h matches its closed form on constants and ties to g") {
  const TorusGrid g{8};
  ModelParams p;
  const State U{const_field(g, 1.0), const_field(g, 2.0)};
  const State H = h_apply(U, p);
  CHECK(H.u.at(0, 0, 0).real() == doctest::Approx(1.0).epsilon(1e-13));   // mu u^3
  CHECK(H.v.at(0, 0, 0).real() == doctest::Approx(-6.0).epsilon(1e-13));  // -3 mu u^2 v

  const State N = noise_state(g, 1.0, 11, 0.5);
  const State HN = h_apply(N, p);
  const SpectralField gN = g_apply(N.u, p);
  double worst = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    worst = std::max(worst, std::abs(HN.u.coeffs[i] + gN.coeffs[i]));
  }
  CHECK(worst < 1e-13);  // first component is -g(u)

  ModelParams quartic;
  quartic.alpha = 4.0;
  CHECK_THROWS_AS(h_apply(U, quartic), std::invalid_argument);
  CHECK_THROWS_AS(
      validate_scheme_config(cfg_of(Scheme::corrected_lie, KRule::inverse_tau_3_2,
                                    0.1, 1.0),
                             g, quartic),
      std::invalid_argument);
}

TEST_CASE("scheme config validation") {
  const TorusGrid g{16};
  ModelParams p;
  CHECK_THROWS_AS(validate_scheme_config(cfg_of(Scheme::lie, KRule::none, 0.0, 1.0), g, p),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_scheme_config(cfg_of(Scheme::lie, KRule::none, 1.5, 1.0), g, p),
                  std::invalid_argument);
  // Active rules must resolve to K >= 1/tau.
  CHECK_THROWS_AS(validate_scheme_config(
                      cfg_of(Scheme::lie, KRule::inverse_tau, 0.1, 1.0, 0.5), g, p),
                  std::invalid_argument);
  CHECK_NOTHROW(validate_scheme_config(
      cfg_of(Scheme::lie, KRule::inverse_tau, 0.1, 1.0, 1.0), g, p));
  // tau^{-3/2} >= 1/tau automatically for tau <= 1 and c >= 1.
  CHECK_NOTHROW(validate_scheme_config(
      cfg_of(Scheme::corrected_lie, KRule::inverse_tau_3_2, 0.25, 1.0), g, p));
  // A fixed cutoff below 1/tau or beyond the lattice band is rejected.
  CHECK_THROWS_AS(validate_scheme_config(
                      cfg_of(Scheme::lie, KRule::fixed, 0.1, 1.0, 1.0, 5.0), g, p),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_scheme_config(
                      cfg_of(Scheme::lie, KRule::fixed, 0.5, 1.0, 1.0, 9.0), g, p),
                  std::invalid_argument);
  CHECK_NOTHROW(validate_scheme_config(
      cfg_of(Scheme::lie, KRule::fixed, 0.5, 1.0, 1.0, 7.0), g, p));
  CHECK(resolve_cutoff(cfg_of(Scheme::lie, KRule::none, 0.1, 1.0)) ==
        std::numeric_limits<double>::infinity());
  CHECK(resolve_cutoff(cfg_of(Scheme::lie, KRule::inverse_tau_3_2, 0.25, 1.0)) ==
        doctest::Approx(8.0).epsilon(1e-14));
}

TEST_CASE("zero is a fixed point of every scheme") {
  const TorusGrid g{8};
  ModelParams p;
  const State Z(g);
  CHECK(max_coeff(lie_step(Z, p, cfg_of(Scheme::lie, KRule::inverse_tau, 0.1, 1.0))) == 0.0);
  CHECK(max_coeff(corrected_lie_step(
            Z, p, cfg_of(Scheme::corrected_lie, KRule::inverse_tau_3_2, 0.1, 1.0))) == 0.0);
  CHECK(max_coeff(strang_reference_step(Z, p, 0.1)) == 0.0);
}

TEST_CASE("linear model reduces every scheme to the wave group") {
  const TorusGrid g{8};
  ModelParams p;
  p.linear = true;
  const State U = noise_state(g, 1.0, 21, 1.0);
  const double tau = 0.2;
  const State W = wave_group(U, tau);
  CHECK(max_coeff(diff(lie_step(U, p, cfg_of(Scheme::lie, KRule::none, tau, 1.0)), W)) ==
        0.0);
  CHECK(max_coeff(diff(corrected_lie_step(
                           U, p, cfg_of(Scheme::corrected_lie, KRule::none, tau, 1.0)),
                       W)) == 0.0);
  // Two half flows instead of one full one: equal to rounding only.
  CHECK(max_coeff(diff(strang_reference_step(U, p, tau), W)) < 1e-13);
}

TEST_CASE("steps preserve reality of the state") {
  const TorusGrid g{16};
  ModelParams p;
  const State U = noise_state(g, 1.0, 22, 0.8);
  const State a = lie_step(U, p, cfg_of(Scheme::lie, KRule::inverse_tau, 0.125, 1.0));
  const State b = corrected_lie_step(
      U, p, cfg_of(Scheme::corrected_lie, KRule::inverse_tau_3_2, 0.125, 1.0));
  const State c = strang_reference_step(U, p, 0.125);
  for (const State* s : {&a, &b, &c}) {
    CHECK(hermitian_defect(s->u) < 1e-12);
    CHECK(hermitian_defect(s->v) < 1e-12);
  }
}

TEST_CASE("filtered evolution never populates modes beyond the cutoff") {
  const TorusGrid g{16};
  ModelParams p;
  const State U0 = noise_state(g, 1.0, 23, 0.3);
  for (Scheme s : {Scheme::lie, Scheme::corrected_lie}) {
    const auto traj =
        evolve(U0, p, cfg_of(s, KRule::fixed, 0.25, 1.0, 1.0, 4.0), 1);
    REQUIRE(traj.size() == 5);
    const auto& ksq = squared_wavenumbers(g);
    for (const auto& entry : traj) {
      for (int i = 0; i < g.size(); ++i) {
        if (ksq[i] >= 16) {
          CHECK(std::abs(entry.state.u.coeffs[i]) == 0.0);
          CHECK(std::abs(entry.state.v.coeffs[i]) == 0.0);
        }
      }
    }
  }
}

TEST_CASE("evolve bookkeeping: entry zero, stride, final entry") {
  const TorusGrid g{8};
  ModelParams p;
  const State U0 = noise_state(g, 1.0, 24, 0.2);
  const SchemeConfig cfg = cfg_of(Scheme::lie, KRule::fixed, 0.5, 4.0, 1.0, 3.0);

  const auto empty = evolve(U0, p, cfg_of(Scheme::lie, KRule::fixed, 0.5, 0.0, 1.0, 3.0));
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].step == 0);
  CHECK(max_coeff(diff(empty[0].state, lowpass(U0, 3.0))) == 0.0);

  const auto traj = evolve(U0, p, cfg, 3);
  std::vector<long> steps;
  for (const auto& e : traj) steps.push_back(e.step);
  CHECK(steps == std::vector<long>{0, 3, 6, 8});
  CHECK(traj.back().t == doctest::Approx(4.0).epsilon(1e-14));

  // evolve agrees with repeated single steps.
  State manual = lowpass(U0, 3.0);
  for (int i = 0; i < 8; ++i) manual = lie_step(manual, p, cfg);
  CHECK(max_coeff(diff(manual, traj.back().state)) == 0.0);

  CHECK_THROWS_AS(evolve(U0, p, cfg, 0), std::invalid_argument);
}

TEST_CASE("linear evolution matches the exact group over many steps") {
  const TorusGrid g{8};
  ModelParams p;
  p.linear = true;
  const State U0 = noise_state(g, 1.0, 25, 1.0);
  const State fin = evolve_final(U0, p, cfg_of(Scheme::lie, KRule::none, 0.01, 1.0));
  const State exact = wave_group(U0, 1.0);
  CHECK(max_coeff(diff(fin, exact)) < 1e-10);
}

TEST_CASE("focusing blow-up is reported with its step index") {
  const TorusGrid g{8};
  ModelParams p;
  p.mu = -1;
  State U0 = noise_state(g, 1.0, 26, 60.0);
  bool thrown = false;
  try {
    evolve_final(U0, p, cfg_of(Scheme::lie, KRule::none, 0.05, 5.0));
  } catch (const BlowupError& e) {
    thrown = true;
    CHECK(e.step >= 1);
    CHECK((!std::isfinite(e.norm) || e.norm > 1e8 * e.initial_norm));
    CHECK(std::string(e.what()).find("step") != std::string::npos);
  }
  CHECK(thrown);
}

TEST_CASE("lie halves its error when the step halves") {
  const TorusGrid g{16};
  ModelParams p;
  const State U0 = noise_state(g, 2.0, 27, 0.4);
  const double t_end = 0.25;
  const State ref = strang_run(U0, p, 1.0 / 2048.0, t_end);
  std::vector<double> errs;
  for (double tau : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
    const State fin = evolve_final(U0, p, cfg_of(Scheme::lie, KRule::none, tau, t_end));
    errs.push_back(error_norm_l2_hm1(diff(fin, ref)));
  }
  const double r1 = errs[0] / errs[1];
  const double r2 = errs[1] / errs[2];
  CHECK(r1 > 1.5);
  CHECK(r1 < 2.6);
  CHECK(r2 > 1.5);
  CHECK(r2 < 2.6);
}

TEST_CASE("corrected lie and strang quarter their error when the step halves") {
  const TorusGrid g{16};
  ModelParams p;
  const State U0 = noise_state(g, 2.0, 27, 0.4);
  const double t_end = 0.25;
  const State ref = strang_run(U0, p, 1.0 / 2048.0, t_end);
  for (Scheme s : {Scheme::corrected_lie, Scheme::strang_ref}) {
    std::vector<double> errs;
    for (double tau : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
      const State fin = evolve_final(U0, p, cfg_of(s, KRule::none, tau, t_end));
      errs.push_back(error_norm_l2_hm1(diff(fin, ref)));
    }
    for (int i = 0; i + 1 < 3; ++i) {
      const double r = errs[i] / errs[i + 1];
      CHECK(r > 3.0);
      CHECK(r < 5.2);
    }
  }
}

TEST_CASE("corrected lie has local order three on smooth data") {
  const TorusGrid g{16};
  ModelParams p;
  const State U0 = noise_state(g, 3.0, 28, 0.4);
  std::vector<std::pair<double, double>> rows;
  for (int e = 6; e <= 10; ++e) {
    const double tau = std::ldexp(1.0, -e);
    const State one = corrected_lie_step(
        U0, p, cfg_of(Scheme::corrected_lie, KRule::none, tau, tau));
    const State exact = strang_run(U0, p, tau / 64.0, tau);
    rows.emplace_back(tau, error_norm_l2_hm1(diff(one, exact)));
  }
  const FitResult fit = fit_order(rows);
  CHECK(fit.slope > 2.6);
  CHECK(fit.slope < 3.5);
}

TEST_CASE("energy closed forms and linear conservation") {
  const TorusGrid g{8};
  ModelParams p;
  CHECK(energy(State(g), p) == 0.0);

  // Pure kinetic state v = 0.3.
  State kin(g);
  kin.v.at(0, 0, 0) = cdouble{0.3, 0.0};
  CHECK(energy(kin, p) == doctest::Approx(0.5 * 0.09 * kVol).epsilon(1e-13));

  // Constant u = c: E = mu/4 c^4 (2pi)^3.
  State pot(g);
  pot.u.at(0, 0, 0) = cdouble{0.5, 0.0};
  CHECK(energy(pot, p) == doctest::Approx(0.25 * 0.0625 * kVol).epsilon(1e-13));
  ModelParams focusing = p;
  focusing.mu = -1;
  CHECK(energy(pot, focusing) == doctest::Approx(-0.25 * 0.0625 * kVol).epsilon(1e-13));

  // Gradient term: u = cos(x1) has 1/2 ||grad u||^2 = (2pi)^3 / 4.
  State grad(g);
  grad.u.at(1, 0, 0) = cdouble{0.5, 0.0};
  grad.u.at(-1, 0, 0) = cdouble{0.5, 0.0};
  ModelParams lin;
  lin.linear = true;
  CHECK(energy(grad, lin) == doctest::Approx(0.25 * kVol).epsilon(1e-13));

  // The exact linear flow conserves the quadratic energy.
  ModelParams plin;
  plin.linear = true;
  const State U0 = noise_state(g, 1.0, 29, 1.0);
  const double e0 = energy(U0, plin);
  const State fin = evolve_final(U0, plin, cfg_of(Scheme::lie, KRule::none, 0.01, 0.5));
  CHECK(std::fabs(energy(fin, plin) - e0) / std::fabs(e0) < 1e-12);
}

TEST_CASE("strang keeps the nonlinear energy drift second order small") {
  const TorusGrid g{16};
  ModelParams p;
  const State U0 = noise_state(g, 1.0, 30, 0.4);
  const double e0 = energy(U0, p);
  const State fin = evolve_final(U0, p, cfg_of(Scheme::strang_ref, KRule::none, 0.005, 0.5));
  CHECK(std::fabs(energy(fin, p) - e0) / std::fabs(e0) < 1e-4);
}
