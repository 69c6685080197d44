#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anderlab/geometry.hpp"
#include "anderlab/potential.hpp"

namespace anderlab {

struct ExperimentConfig {
  ShapeSpec shape;
  PotentialSpec potential;
  std::vector<double> eps_ladder;  // strictly decreasing
  std::vector<int> k_indices;      // distinct, 1-based
  int realizations = 0;            // N >= 2
  std::uint64_t seed = 0;
  double eps_ref = 0.0;            // continuum benchmark resolution
  std::string out_dir;
  int threads = 1;

  void validate() const;
};

struct MarginalDiagnostics {
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double ks_distance = 0.0;
  bool degenerate = false;  // zero-variance law; normality is vacuous
};

struct TailProfile {
  std::vector<double> t;
  std::vector<double> exceedance;  // empirical P(|lambda - mean| > t)
};

// Monte Carlo summary for one ladder rung.
struct FluctuationStats {
  double eps = 0.0;
  int dim = 1;
  int n_sites = 0;
  std::vector<int> k_indices;
  int realizations = 0;
  int failed = 0;
  std::vector<int> realization_ids;  // surviving realizations, in order

  std::vector<double> mean_lambda;                   // per index
  std::vector<std::vector<double>> lambda_samples;   // [index][realization]
  std::vector<std::vector<double>> kinetic_samples;  // [index][realization]
  std::vector<std::vector<double>> scaled_centered;  // eps^{-d/2} (lambda - mean)
  std::vector<std::vector<double>> residuals;        // solver residual per sample

  std::vector<std::vector<double>> covariance;            // of scaled samples
  std::vector<std::vector<double>> predicted_covariance;  // limit law
  std::vector<MarginalDiagnostics> marginals;
  std::vector<TailProfile> tails;

  std::vector<double> kinetic_variance_scaled;  // eps^{-d} Var(T) per index
  std::vector<double> gsq_variance_scaled;      // eps^{-d} sum_x Var(g(x)^2)
  std::vector<double> eigfn_l1_discrepancy;     // mean_x-summed |g^2 - phi^2| gap
  std::vector<double> mean_error_vs_limit;      // |mean lambda - limit eigenvalue|

  double max_identity_residual = 0.0;  // worst |lambda - T - <xi, g^2>|
};

std::vector<FluctuationStats> run_campaign(const ExperimentConfig& config);

struct ConcentrationProfile {
  std::vector<double> t;
  std::vector<double> exceedance;
  double c_hat = 0.0;  // fitted sub-Gaussian envelope rate
};

// Fits the envelope exceedance <= 4 exp(-c t^2 eps^{-d}); the returned rate
// is clipped so the envelope holds pointwise on the observed grid.
// Requires at least 500 realizations.
ConcentrationProfile concentration_profile(const FluctuationStats& stats, int which = 0);

struct EnergyRow {
  double eps = 0.0;
  double kinetic_variance_scaled = 0.0;
  double gsq_variance_scaled = 0.0;
  double lambda_variance_scaled = 0.0;
  double kinetic_to_lambda_ratio = 0.0;
};

std::vector<EnergyRow> energy_decomposition(const std::vector<FluctuationStats>& ladder,
                                            int which = 0);

struct ConvergenceRow {
  double eps = 0.0;
  double discrepancy = 0.0;
  double mean_error = 0.0;
};

std::vector<ConvergenceRow> eigenfunction_convergence(const std::vector<FluctuationStats>& ladder,
                                                      int which = 0);

struct CltThresholds {
  double skewness = 0.15;
  double excess_kurtosis = 0.3;
  double ks = 0.035;
  double cov_rel = 0.15;      // relative tolerance on covariance entries
  double cov_nse = 4.0;       // or this many Monte Carlo standard errors
  int min_samples = 1000;
};

struct CltVerdict {
  bool pass = false;
  bool degenerate = false;
  std::vector<bool> marginal_pass;
  bool covariance_pass = false;
  std::vector<std::string> notes;
};

CltVerdict clt_diagnostics(const FluctuationStats& stats, const CltThresholds& thr = {});

// Same diagnostics on raw scaled samples (used by the null self-test).
CltVerdict clt_diagnostics_core(const std::vector<std::vector<double>>& scaled_centered,
                                const std::vector<std::vector<double>>& predicted,
                                const CltThresholds& thr);

// Exact small-instance oracle: enumerates every two-point configuration,
// computes the exact mean and variance of the k-th eigenvalue, and builds
// the site-by-site conditional-expectation increments
//   Z_m = E(lambda | first m sites) - E(lambda | first m-1 sites)
// in the fixed lexicographic site order.  Verifies that increments
// telescope to lambda - E lambda on every configuration and that their
// second moments add up to the variance.
struct OracleReport {
  int k = 0;
  int n_sites = 0;
  double mean = 0.0;
  double variance = 0.0;
  std::vector<double> increment_second_moments;  // E[Z_m^2] per site order
  double max_telescoping_residual = 0.0;
  double max_orthogonality_residual = 0.0;       // max |E[Z_m Z_m']|, m != m'
  double variance_decomposition_residual = 0.0;  // |sum E[Z_m^2] - Var|
};

OracleReport exact_oracle(const PotentialSpec& spec, const LatticeDomain& lattice, int k);

// Deterministic file emission (CSV of raw samples per rung, JSON summary,
// and a manifest with the config hash); byte-identical for identical
// configs regardless of thread count.
void write_campaign_outputs(const ExperimentConfig& config,
                            const std::vector<FluctuationStats>& stats);

}  // namespace anderlab
