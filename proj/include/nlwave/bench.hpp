#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nlwave/diagnostics.hpp"
#include "nlwave/dynamics.hpp"

namespace nlwave {

enum class ExperimentKind { converge, strichartz, endpoint, energy, run };

enum class DataProfile { noise, single_mode };

struct DataSpec {
  DataProfile profile = DataProfile::noise;
  double s = 1.0;            // Sobolev regularity of the noise datum
  std::uint64_t seed = 1;
  double amplitude = 0.5;
};

/// One experiment as the CLI sees it. For sweeps, scheme.tau is ignored and
/// tau_list drives the runs; single runs (energy, run) use scheme.tau.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::converge;
  int n = 64;
  ModelParams model;
  DataSpec data;
  SchemeConfig scheme;
  std::vector<double> tau_list;             // strictly descending
  std::vector<double> k_factors = {1.0, 2.0, 4.0, 8.0};  // K = factor / tau
  bool max_over_n = false;  // converge: max error over shared sample times
  long stride = 1;          // observation stride for energy/run
  std::string out = "nlwave_out";
};

void validate_experiment(const ExperimentConfig& cfg);

/// u = noise(s, seed), v = noise(s - 1, seed + 1); the single-mode profile is
/// u = amplitude * cos(x1), v = 0.
State build_initial_state(const ExperimentConfig& cfg);

/// The u component alone (data for the linear-flow experiments).
SpectralField build_initial_field(const ExperimentConfig& cfg);

/// Convergence sweep of cfg.scheme over tau_list against a Strang reference
/// run at tau_ref = (smallest tau) / 32 with no cutoff, on the same grid and
/// data. A precomputed reference final state short-circuits the reference run
/// (final-time comparison only).
ConvergenceReport run_convergence(const ExperimentConfig& cfg,
                                  const State* reference_final = nullptr);

struct SpacetimeRow {
  double p = 0.0;
  double q = 0.0;
  double gamma = 0.0;
  double tau = 0.0;
  double cutoff = 0.0;
  long n_steps = 0;
  double ratio = 0.0;       // space-time norm over the datum norm
  double normalized = 0.0;  // ratio / (K tau)^{1/p}; equals ratio when p = inf
};

struct SpacetimeReport {
  std::vector<SpacetimeRow> rows;
  std::vector<std::pair<std::string, std::string>> manifest;
};

/// Discrete Strichartz sweep for the exponent triples (4, 12, 1) and
/// (inf, 2, 0) over tau_list x k_factors. The (inf, 2, 0) rows use the
/// K-projected datum, for which the ratio is identically 1.
SpacetimeReport run_strichartz(const ExperimentConfig& cfg);

/// ell^2_tau L^inf sweep normalized by sqrt(K tau + log(1 + K N tau)).
SpacetimeReport run_endpoint(const ExperimentConfig& cfg);

struct EnergyRow {
  long step = 0;
  double t = 0.0;
  double energy = 0.0;
  double rel_drift = 0.0;
};

struct EnergyReport {
  std::vector<EnergyRow> rows;
  double max_rel_drift = 0.0;
  std::vector<std::pair<std::string, std::string>> manifest;
};

/// Tracks the discrete Hamiltonian along one run of cfg.scheme at scheme.tau.
EnergyReport run_energy(const ExperimentConfig& cfg);

struct RunSummary {
  long n_steps = 0;
  long n_saved = 0;
  double final_energy = 0.0;
  std::string out_dir;
};

/// Propagates one run and writes manifest.json, summary.json and binary
/// state snapshots under cfg.out.
RunSummary run_single(const ExperimentConfig& cfg);

std::string to_csv(const SpacetimeReport& report);
std::string to_json(const SpacetimeReport& report);
std::string to_csv(const EnergyReport& report);
std::string to_json(const EnergyReport& report);

/// Deterministic log-log SVG of a convergence report with the fitted line
/// and reference slopes 1 and 3/2.
std::string convergence_svg(const ConvergenceReport& report);

/// Writes <prefix>.csv, <prefix>.json and (converge only) <prefix>.svg.
void emit_convergence_artifacts(const ConvergenceReport& report,
                                const std::string& prefix);
void emit_spacetime_artifacts(const SpacetimeReport& report, const std::string& prefix);
void emit_energy_artifacts(const EnergyReport& report, const std::string& prefix);

}  // namespace nlwave
