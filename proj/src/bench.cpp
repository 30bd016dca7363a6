#include "nlwave/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "nlwave/io.hpp"
#include "nlwave/noise.hpp"

namespace nlwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

long floor_steps(double t_end, double tau) {
  return static_cast<long>(std::floor(t_end / tau + 1e-12));
}

const char* kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::converge: return "converge";
    case ExperimentKind::strichartz: return "strichartz";
    case ExperimentKind::endpoint: return "endpoint";
    case ExperimentKind::energy: return "energy";
    case ExperimentKind::run: return "run";
  }
  return "?";
}

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::lie: return "lie";
    case Scheme::corrected_lie: return "corrected";
    case Scheme::strang_ref: return "strang";
  }
  return "?";
}

const char* rule_name(KRule r) {
  switch (r) {
    case KRule::none: return "none";
    case KRule::inverse_tau: return "inv";
    case KRule::inverse_tau_3_2: return "inv32";
    case KRule::fixed: return "fixed";
  }
  return "?";
}

const char* profile_name(DataProfile p) {
  return p == DataProfile::noise ? "noise" : "single";
}

using Manifest = std::vector<std::pair<std::string, std::string>>;

Manifest base_manifest(const ExperimentConfig& cfg) {
  Manifest m;
  m.emplace_back("kind", kind_name(cfg.kind));
  m.emplace_back("n", std::to_string(cfg.n));
  m.emplace_back("alpha", fmt17(cfg.model.alpha));
  m.emplace_back("mu", std::to_string(cfg.model.mu));
  m.emplace_back("linear", cfg.model.linear ? "1" : "0");
  m.emplace_back("profile", profile_name(cfg.data.profile));
  m.emplace_back("s", fmt17(cfg.data.s));
  m.emplace_back("seed", std::to_string(cfg.data.seed));
  m.emplace_back("amplitude", fmt17(cfg.data.amplitude));
  m.emplace_back("t_end", fmt17(cfg.scheme.t_end));
  return m;
}

std::string join_list(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ',';
    out += fmt17(xs[i]);
  }
  return out;
}

SchemeConfig row_config(const ExperimentConfig& cfg, double tau) {
  SchemeConfig c = cfg.scheme;
  c.tau = tau;
  return c;
}

void note_unresolved_cutoff(const ExperimentConfig& cfg, const SchemeConfig& c) {
  // A derived rule may exceed the lattice band; the projection is then the
  // identity and the run degenerates to the unfiltered scheme. Worth a note,
  // not an error (fixed rules are rejected in validate_scheme_config).
  if (c.k_rule == KRule::none || c.k_rule == KRule::fixed) return;
  const double cutoff = resolve_cutoff(c);
  const double band = cfg.n / 2 - 1;
  if (cutoff > band) {
    std::fprintf(stderr,
                 "note: cutoff K=%.6g exceeds the resolved band %g at tau=%.6g; "
                 "the projection acts as the identity\n",
                 cutoff, band, c.tau);
  }
}

nlohmann::ordered_json manifest_json(const Manifest& m) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [key, value] : m) j[key] = value;
  return j;
}

std::string spacetime_value(double x) {
  return fmt17(x);  // %.17g prints "inf" for the p = inf rows
}

}  // namespace

void validate_experiment(const ExperimentConfig& cfg) {
  validate_model(cfg.model);
  if (cfg.n < 4 || cfg.n % 2 != 0) {
    throw std::invalid_argument("ExperimentConfig: n must be even and >= 4");
  }
  if (!(cfg.data.amplitude > 0.0) || !std::isfinite(cfg.data.amplitude)) {
    throw std::invalid_argument("ExperimentConfig: amplitude must be positive");
  }
  if (!std::isfinite(cfg.data.s)) {
    throw std::invalid_argument("ExperimentConfig: s must be finite");
  }
  if (cfg.stride < 1) {
    throw std::invalid_argument("ExperimentConfig: stride must be >= 1");
  }
  if (!(cfg.scheme.t_end >= 0.0) || !std::isfinite(cfg.scheme.t_end)) {
    throw std::invalid_argument("ExperimentConfig: t_end must be finite and >= 0");
  }
  const bool sweep = cfg.kind == ExperimentKind::converge ||
                     cfg.kind == ExperimentKind::strichartz ||
                     cfg.kind == ExperimentKind::endpoint;
  if (sweep) {
    if (cfg.tau_list.empty()) {
      throw std::invalid_argument("ExperimentConfig: tau list must not be empty");
    }
    double prev = 2.0;
    for (double tau : cfg.tau_list) {
      if (!(tau > 0.0) || tau > 1.0) {
        throw std::invalid_argument("ExperimentConfig: every tau must lie in (0, 1]");
      }
      if (!(tau < prev)) {
        throw std::invalid_argument(
            "ExperimentConfig: tau list must be strictly descending");
      }
      prev = tau;
    }
  } else {
    if (!(cfg.scheme.tau > 0.0)) {
      throw std::invalid_argument("ExperimentConfig: tau must be set for this kind");
    }
  }
  if (cfg.kind == ExperimentKind::strichartz || cfg.kind == ExperimentKind::endpoint) {
    if (cfg.k_factors.empty()) {
      throw std::invalid_argument("ExperimentConfig: k_factors must not be empty");
    }
    for (double f : cfg.k_factors) {
      if (!(f >= 1.0) || !std::isfinite(f)) {
        throw std::invalid_argument("ExperimentConfig: k_factors must be >= 1");
      }
    }
  }
  if (cfg.kind == ExperimentKind::converge) {
    if (cfg.scheme.scheme == Scheme::strang_ref) {
      throw std::invalid_argument(
          "ExperimentConfig: converge sweeps the lie or corrected scheme, not the reference");
    }
  }
}

State build_initial_state(const ExperimentConfig& cfg) {
  const TorusGrid g{cfg.n};
  if (cfg.data.profile == DataProfile::noise) {
    SpectralField u = sobolev_noise(g, cfg.data.s, cfg.data.seed, cfg.data.amplitude);
    SpectralField v =
        sobolev_noise(g, cfg.data.s - 1.0, cfg.data.seed + 1, cfg.data.amplitude);
    return State{std::move(u), std::move(v)};
  }
  SpectralField u(g);
  const double half_amp = cfg.data.amplitude / 2.0;
  u.at(1, 0, 0) = cdouble{half_amp, 0.0};
  u.at(-1, 0, 0) = cdouble{half_amp, 0.0};
  return State{std::move(u), SpectralField(g)};
}

SpectralField build_initial_field(const ExperimentConfig& cfg) {
  return build_initial_state(cfg).u;
}

ConvergenceReport run_convergence(const ExperimentConfig& cfg,
                                  const State* reference_final) {
  validate_experiment(cfg);
  if (cfg.kind != ExperimentKind::converge) {
    throw std::invalid_argument("run_convergence: cfg.kind mismatch");
  }
  if (cfg.max_over_n && reference_final != nullptr) {
    throw std::invalid_argument(
        "run_convergence: a precomputed reference only supports final-time errors");
  }
  for (double tau : cfg.tau_list) {
    validate_scheme_config(row_config(cfg, tau), TorusGrid{cfg.n}, cfg.model);
  }
  const State U0 = build_initial_state(cfg);
  const double tau_min = cfg.tau_list.back();
  const double tau_ref = tau_min / 32.0;
  const double tau_coarse = cfg.tau_list.front();

  SchemeConfig ref_cfg;
  ref_cfg.tau = tau_ref;
  ref_cfg.scheme = Scheme::strang_ref;
  ref_cfg.k_rule = KRule::none;
  ref_cfg.t_end = cfg.scheme.t_end;

  // Shared sample times for max-over-n mode: positive multiples of the
  // coarsest tau, which every run must hit exactly.
  std::vector<State> ref_samples;
  State ref_final;
  if (reference_final != nullptr) {
    ref_final = *reference_final;
  } else if (!cfg.max_over_n) {
    ref_final = evolve_final(U0, cfg.model, ref_cfg);
  } else {
    for (double tau : cfg.tau_list) {
      const double ratio = tau_coarse / tau;
      if (std::fabs(ratio - std::round(ratio)) > 1e-9 * ratio) {
        throw std::invalid_argument(
            "run_convergence: max-over-n needs each tau to divide the coarsest one");
      }
    }
    const double ref_ratio = tau_coarse / tau_ref;
    const long ref_stride = static_cast<long>(std::llround(ref_ratio));
    ref_final = evolve_observed(U0, cfg.model, ref_cfg, ref_stride,
                                [&](long step, double, const State& s) {
                                  if (step > 0 && step % ref_stride == 0) {
                                    ref_samples.push_back(s);
                                  }
                                });
  }

  ConvergenceReport report;
  for (double tau : cfg.tau_list) {
    const SchemeConfig c = row_config(cfg, tau);
    note_unresolved_cutoff(cfg, c);
    ConvergenceRow row;
    row.tau = tau;
    row.cutoff = resolve_cutoff(c);
    if (!cfg.max_over_n) {
      const State fin = evolve_final(U0, cfg.model, c);
      State diff{fin.u, fin.v};
      for (std::size_t i = 0; i < diff.u.coeffs.size(); ++i) {
        diff.u.coeffs[i] -= ref_final.u.coeffs[i];
        diff.v.coeffs[i] -= ref_final.v.coeffs[i];
      }
      row.err_l2hm1 = error_norm_l2_hm1(diff);
      row.err_h1l2 = error_norm_h1_l2(diff);
    } else {
      const long stride = static_cast<long>(std::llround(tau_coarse / tau));
      double worst1 = 0.0, worst2 = 0.0;
      std::size_t sample = 0;
      evolve_observed(U0, cfg.model, c, stride,
                      [&](long step, double, const State& s) {
                        if (step == 0 || step % stride != 0) return;
                        if (sample >= ref_samples.size()) return;
                        const State& ref = ref_samples[sample++];
                        State diff{s.u, s.v};
                        for (std::size_t i = 0; i < diff.u.coeffs.size(); ++i) {
                          diff.u.coeffs[i] -= ref.u.coeffs[i];
                          diff.v.coeffs[i] -= ref.v.coeffs[i];
                        }
                        worst1 = std::max(worst1, error_norm_l2_hm1(diff));
                        worst2 = std::max(worst2, error_norm_h1_l2(diff));
                      });
      row.err_l2hm1 = worst1;
      row.err_h1l2 = worst2;
    }
    report.rows.push_back(row);
  }

  std::vector<std::pair<double, double>> fit_rows;
  for (const ConvergenceRow& r : report.rows) {
    fit_rows.emplace_back(r.tau, r.err_l2hm1);
  }
  try {
    report.fit = fit_order(fit_rows);
    report.fit_valid = true;
  } catch (const std::invalid_argument&) {
    report.fit_valid = false;
  }

  report.manifest = base_manifest(cfg);
  report.manifest.emplace_back("scheme", scheme_name(cfg.scheme.scheme));
  report.manifest.emplace_back("k_rule", rule_name(cfg.scheme.k_rule));
  if (cfg.scheme.k_rule == KRule::fixed) {
    report.manifest.emplace_back("fixed_k", fmt17(cfg.scheme.fixed_k));
  } else if (cfg.scheme.k_rule != KRule::none) {
    report.manifest.emplace_back("c", fmt17(cfg.scheme.c));
  }
  report.manifest.emplace_back("tau_list", join_list(cfg.tau_list));
  report.manifest.emplace_back("tau_ref", fmt17(tau_ref));
  report.manifest.emplace_back(
      "reference", reference_final != nullptr ? "external" : "strang");
  report.manifest.emplace_back("errors", cfg.max_over_n ? "max_over_n" : "final");
  return report;
}

SpacetimeReport run_strichartz(const ExperimentConfig& cfg) {
  validate_experiment(cfg);
  if (cfg.kind != ExperimentKind::strichartz) {
    throw std::invalid_argument("run_strichartz: cfg.kind mismatch");
  }
  const SpectralField f = build_initial_field(cfg);
  const double t_end = cfg.scheme.t_end;
  struct Triple {
    double p, q, gamma;
  };
  const Triple triples[] = {{4.0, 12.0, 1.0}, {kInf, 2.0, 0.0}};
  SpacetimeReport report;
  for (const Triple& tr : triples) {
    for (double tau : cfg.tau_list) {
      for (double factor : cfg.k_factors) {
        const double cutoff = factor / tau;
        SpacetimeRow row;
        row.p = tr.p;
        row.q = tr.q;
        row.gamma = tr.gamma;
        row.tau = tau;
        row.cutoff = cutoff;
        row.n_steps = floor_steps(t_end, tau);
        // The sup-in-time triple is evaluated on the projected datum, whose
        // homogeneous L^2 norm the projected flow preserves exactly.
        const bool projected = std::isinf(tr.p);
        const SpectralField datum = projected ? lowpass(f, cutoff) : f;
        row.ratio = strichartz_ratio(datum, cutoff, tau, tr.p, tr.q, tr.gamma, t_end);
        row.normalized = std::isinf(tr.p)
                             ? row.ratio
                             : row.ratio / std::pow(cutoff * tau, 1.0 / tr.p);
        report.rows.push_back(row);
      }
    }
  }
  report.manifest = base_manifest(cfg);
  report.manifest.emplace_back("tau_list", join_list(cfg.tau_list));
  report.manifest.emplace_back("k_factors", join_list(cfg.k_factors));
  report.manifest.emplace_back("triples", "4,12,1;inf,2,0");
  return report;
}

SpacetimeReport run_endpoint(const ExperimentConfig& cfg) {
  validate_experiment(cfg);
  if (cfg.kind != ExperimentKind::endpoint) {
    throw std::invalid_argument("run_endpoint: cfg.kind mismatch");
  }
  const SpectralField f = build_initial_field(cfg);
  const double t_end = cfg.scheme.t_end;
  SpacetimeReport report;
  for (double tau : cfg.tau_list) {
    for (double factor : cfg.k_factors) {
      const double cutoff = factor / tau;
      const long n_steps = floor_steps(t_end, tau);
      SpacetimeRow row;
      row.p = 2.0;
      row.q = kInf;
      row.gamma = 1.0;
      row.tau = tau;
      row.cutoff = cutoff;
      row.n_steps = n_steps;
      row.normalized = endpoint_ratio(f, cutoff, tau, n_steps);
      const double scale = std::sqrt(
          cutoff * tau + std::log1p(cutoff * static_cast<double>(n_steps) * tau));
      row.ratio = row.normalized * scale;
      report.rows.push_back(row);
    }
  }
  report.manifest = base_manifest(cfg);
  report.manifest.emplace_back("tau_list", join_list(cfg.tau_list));
  report.manifest.emplace_back("k_factors", join_list(cfg.k_factors));
  report.manifest.emplace_back("norm", "l2_tau_linf");
  return report;
}

EnergyReport run_energy(const ExperimentConfig& cfg) {
  validate_experiment(cfg);
  if (cfg.kind != ExperimentKind::energy) {
    throw std::invalid_argument("run_energy: cfg.kind mismatch");
  }
  const State U0 = build_initial_state(cfg);
  EnergyReport report;
  double e0 = 0.0;
  evolve_observed(U0, cfg.model, cfg.scheme, cfg.stride,
                  [&](long step, double t, const State& s) {
                    const double e = energy(s, cfg.model);
                    if (step == 0) e0 = e;
                    const double denom = std::fabs(e0) > 0.0 ? std::fabs(e0) : 1.0;
                    EnergyRow row;
                    row.step = step;
                    row.t = t;
                    row.energy = e;
                    row.rel_drift = std::fabs(e - e0) / denom;
                    report.max_rel_drift = std::max(report.max_rel_drift, row.rel_drift);
                    report.rows.push_back(row);
                  });
  report.manifest = base_manifest(cfg);
  report.manifest.emplace_back("scheme", scheme_name(cfg.scheme.scheme));
  report.manifest.emplace_back("k_rule", rule_name(cfg.scheme.k_rule));
  report.manifest.emplace_back("tau", fmt17(cfg.scheme.tau));
  report.manifest.emplace_back("stride", std::to_string(cfg.stride));
  return report;
}

RunSummary run_single(const ExperimentConfig& cfg) {
  validate_experiment(cfg);
  if (cfg.kind != ExperimentKind::run) {
    throw std::invalid_argument("run_single: cfg.kind mismatch");
  }
  const std::filesystem::path dir(cfg.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("run_single: cannot create " + dir.string());

  const State U0 = build_initial_state(cfg);
  nlohmann::ordered_json summary_rows = nlohmann::ordered_json::array();
  RunSummary summary;
  summary.out_dir = dir.string();
  State final = evolve_observed(
      U0, cfg.model, cfg.scheme, cfg.stride,
      [&](long step, double t, const State& s) {
        char name[32];
        std::snprintf(name, sizeof(name), "state_%06ld.bin", step);
        save_state(dir / name, s);
        nlohmann::ordered_json row;
        row["step"] = step;
        row["t"] = t;
        row["file"] = name;
        row["norm_h1l2"] = error_norm_h1_l2(s);
        row["norm_l2hm1"] = error_norm_l2_hm1(s);
        row["energy"] = energy(s, cfg.model);
        summary_rows.push_back(std::move(row));
        ++summary.n_saved;
      });
  summary.n_steps = floor_steps(cfg.scheme.t_end, cfg.scheme.tau);
  summary.final_energy = energy(final, cfg.model);

  Manifest m = base_manifest(cfg);
  m.emplace_back("scheme", scheme_name(cfg.scheme.scheme));
  m.emplace_back("k_rule", rule_name(cfg.scheme.k_rule));
  if (cfg.scheme.k_rule == KRule::fixed) {
    m.emplace_back("fixed_k", fmt17(cfg.scheme.fixed_k));
  } else if (cfg.scheme.k_rule != KRule::none) {
    m.emplace_back("c", fmt17(cfg.scheme.c));
  }
  m.emplace_back("K", fmt17(resolve_cutoff(cfg.scheme)));
  m.emplace_back("tau", fmt17(cfg.scheme.tau));
  m.emplace_back("stride", std::to_string(cfg.stride));
  m.emplace_back("state_format",
                 "NLWSTA01: magic, uint32 n, u then v as little-endian f64 re/im "
                 "pairs in row-major transform order");
  nlohmann::ordered_json mj;
  mj["format"] = "nlwave-run-v1";
  mj["manifest"] = manifest_json(m);
  write_text_file(dir / "manifest.json", mj.dump(2) + "\n");

  nlohmann::ordered_json sj;
  sj["format"] = "nlwave-run-summary-v1";
  sj["n_steps"] = summary.n_steps;
  sj["rows"] = std::move(summary_rows);
  write_text_file(dir / "summary.json", sj.dump(2) + "\n");
  return summary;
}

std::string to_csv(const SpacetimeReport& report) {
  std::string out = "p,q,gamma,tau,K,n_steps,ratio,normalized\n";
  for (const SpacetimeRow& r : report.rows) {
    out += spacetime_value(r.p);
    out += ',';
    out += spacetime_value(r.q);
    out += ',';
    out += fmt17(r.gamma);
    out += ',';
    out += fmt17(r.tau);
    out += ',';
    out += fmt17(r.cutoff);
    out += ',';
    out += std::to_string(r.n_steps);
    out += ',';
    out += fmt17(r.ratio);
    out += ',';
    out += fmt17(r.normalized);
    out += '\n';
  }
  return out;
}

std::string to_json(const SpacetimeReport& report) {
  nlohmann::ordered_json j;
  j["format"] = "nlwave-spacetime-v1";
  j["manifest"] = manifest_json(report.manifest);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const SpacetimeRow& r : report.rows) {
    nlohmann::ordered_json row;
    if (std::isinf(r.p)) {
      row["p"] = "inf";
    } else {
      row["p"] = r.p;
    }
    if (std::isinf(r.q)) {
      row["q"] = "inf";
    } else {
      row["q"] = r.q;
    }
    row["gamma"] = r.gamma;
    row["tau"] = r.tau;
    row["K"] = r.cutoff;
    row["n_steps"] = r.n_steps;
    row["ratio"] = r.ratio;
    row["normalized"] = r.normalized;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string to_csv(const EnergyReport& report) {
  std::string out = "step,t,energy,rel_drift\n";
  for (const EnergyRow& r : report.rows) {
    out += std::to_string(r.step);
    out += ',';
    out += fmt17(r.t);
    out += ',';
    out += fmt17(r.energy);
    out += ',';
    out += fmt17(r.rel_drift);
    out += '\n';
  }
  return out;
}

std::string to_json(const EnergyReport& report) {
  nlohmann::ordered_json j;
  j["format"] = "nlwave-energy-v1";
  j["manifest"] = manifest_json(report.manifest);
  j["max_rel_drift"] = report.max_rel_drift;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const EnergyRow& r : report.rows) {
    nlohmann::ordered_json row;
    row["step"] = r.step;
    row["t"] = r.t;
    row["energy"] = r.energy;
    row["rel_drift"] = r.rel_drift;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

void emit_convergence_artifacts(const ConvergenceReport& report,
                                const std::string& prefix) {
  write_text_file(prefix + ".csv", to_csv(report));
  write_text_file(prefix + ".json", to_json(report));
  write_text_file(prefix + ".svg", convergence_svg(report));
}

void emit_spacetime_artifacts(const SpacetimeReport& report, const std::string& prefix) {
  write_text_file(prefix + ".csv", to_csv(report));
  write_text_file(prefix + ".json", to_json(report));
}

void emit_energy_artifacts(const EnergyReport& report, const std::string& prefix) {
  write_text_file(prefix + ".csv", to_csv(report));
  write_text_file(prefix + ".json", to_json(report));
}

}  // namespace nlwave
