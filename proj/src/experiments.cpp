#include "anderlab/experiments.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <thread>

#include "anderlab/hamiltonian.hpp"
#include "anderlab/io.hpp"
#include "anderlab/reference.hpp"
#include "anderlab/rng.hpp"
#include "anderlab/spectral.hpp"
#include "anderlab/stats.hpp"

namespace anderlab {

void ExperimentConfig::validate() const {
  shape.validate();
  if (realizations < 2) throw InvalidConfig("need at least two realizations");
  if (eps_ladder.empty()) throw InvalidConfig("eps ladder is empty");
  for (std::size_t i = 0; i < eps_ladder.size(); ++i) {
    if (!(eps_ladder[i] > 0.0)) throw InvalidConfig("ladder entries must be positive");
    if (i > 0 && !(eps_ladder[i] < eps_ladder[i - 1]))
      throw InvalidConfig("eps ladder must be strictly decreasing");
  }
  if (k_indices.empty()) throw InvalidConfig("no eigenvalue indices requested");
  for (std::size_t i = 0; i < k_indices.size(); ++i) {
    if (k_indices[i] < 1) throw InvalidConfig("eigenvalue indices are 1-based");
    for (std::size_t j = i + 1; j < k_indices.size(); ++j)
      if (k_indices[i] == k_indices[j]) throw InvalidConfig("eigenvalue indices must be distinct");
  }
  if (!(eps_ref > 0.0)) throw InvalidConfig("eps_ref must be positive");
  if (threads < 1) throw InvalidConfig("thread count must be positive");
}

namespace {

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  const int workers = std::min(threads, n);
  for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

struct Outcome {
  bool ok = false;
  bool fatal = false;  // unexpected error, not a solver convergence failure
  std::string error;
  std::vector<double> lambda, kinetic, residual, identity_residual, l1_discrepancy;
  std::vector<std::vector<double>> gsq;  // per requested index, per site
};

double scaled_tail_grid_max(const std::vector<double>& samples, double mean) {
  double mx = 0.0;
  for (double v : samples) mx = std::max(mx, std::abs(v - mean));
  return mx;
}

MarginalDiagnostics marginal_diagnostics(const std::vector<double>& scaled) {
  MarginalDiagnostics out;
  const MomentSummary m = moments(scaled);
  if (m.variance <= 0.0) {
    out.degenerate = true;
    return out;
  }
  out.skewness = m.skewness;
  out.excess_kurtosis = m.excess_kurtosis;
  out.ks_distance = ks_distance_normal(scaled, std::sqrt(m.variance));
  return out;
}

}  // namespace

std::vector<FluctuationStats> run_campaign(const ExperimentConfig& config) {
  config.validate();

  const int kmax = *std::max_element(config.k_indices.begin(), config.k_indices.end());
  const ContinuumSpectrum ref =
      load_or_compute(config.out_dir, config.shape, config.potential.U, kmax + 1, config.eps_ref);
  for (int k : config.k_indices)
    if (!limit_simple(ref, k))
      throw DegenerateLimit("limit eigenvalue " + std::to_string(k) + " is not simple");
  const Eigen::MatrixXd predicted =
      covariance_prediction(ref, config.potential.V, config.k_indices);

  const int nk = static_cast<int>(config.k_indices.size());
  const int N = config.realizations;
  std::vector<FluctuationStats> ladder;

  for (std::size_t rung = 0; rung < config.eps_ladder.size(); ++rung) {
    const double eps = config.eps_ladder[rung];
    const LatticeDomain lattice = discretize(config.shape, eps);
    check_feasible(config.potential, lattice);

    // Limit eigenfunction squares at this rung's site positions.
    std::vector<std::vector<double>> phi_sq(static_cast<std::size_t>(nk));
    for (int a = 0; a < nk; ++a) {
      const std::vector<double> phi =
          sample_eigenfunction(ref, config.k_indices[static_cast<std::size_t>(a)], lattice);
      phi_sq[static_cast<std::size_t>(a)].resize(phi.size());
      for (std::size_t i = 0; i < phi.size(); ++i)
        phi_sq[static_cast<std::size_t>(a)][i] = phi[i] * phi[i];
    }

    const double epsd = std::pow(eps, lattice.dim());
    std::vector<Outcome> outcomes(static_cast<std::size_t>(N));
    const std::uint64_t rung_key = derive_key(config.seed, static_cast<std::uint64_t>(rung));

    parallel_for(N, config.threads, [&](int i) {
      Outcome& out = outcomes[static_cast<std::size_t>(i)];
      try {
        const std::uint64_t seed_i = derive_key(rung_key, static_cast<std::uint64_t>(i));
        const PotentialField field = sample(config.potential, lattice, seed_i);
        const Hamiltonian H = assemble(lattice, field, eps);
        const EigenResult res = lowest_eigenpairs(H, kmax, 1e-9);
        for (int a = 0; a < nk; ++a) {
          const int k = config.k_indices[static_cast<std::size_t>(a)];
          const double lam = res.eigenvalues[static_cast<std::size_t>(k - 1)];
          const Eigen::VectorXd& gv = res.vectors[static_cast<std::size_t>(k - 1)];
          std::vector<double> g(gv.data(), gv.data() + gv.size());
          const double T = kinetic_energy(lattice, eps, g);
          long double pot = 0.0L;
          for (int s = 0; s < lattice.size(); ++s)
            pot += static_cast<long double>(field.values[static_cast<std::size_t>(s)]) * g[static_cast<std::size_t>(s)] * g[static_cast<std::size_t>(s)];
          out.lambda.push_back(lam);
          out.kinetic.push_back(T);
          out.residual.push_back(res.residuals[static_cast<std::size_t>(k - 1)]);
          out.identity_residual.push_back(std::abs(lam - T - static_cast<double>(pot)));
          std::vector<double> gsq(g.size());
          long double l1 = 0.0L;
          for (std::size_t s = 0; s < g.size(); ++s) {
            gsq[s] = g[s] * g[s];
            l1 += std::abs(gsq[s] / epsd - phi_sq[static_cast<std::size_t>(a)][s]) * epsd;
          }
          out.l1_discrepancy.push_back(static_cast<double>(l1));
          out.gsq.push_back(std::move(gsq));
        }
        out.ok = true;
      } catch (const NoConvergence& e) {
        out.ok = false;
        out.error = e.what();
      } catch (const std::exception& e) {
        out.ok = false;
        out.fatal = true;
        out.error = e.what();
      }
    });
    for (const auto& o : outcomes)
      if (o.fatal) throw Error("realization failed: " + o.error);

    FluctuationStats st;
    st.eps = eps;
    st.dim = lattice.dim();
    st.n_sites = lattice.size();
    st.k_indices = config.k_indices;
    st.realizations = N;
    for (int i = 0; i < N; ++i)
      if (outcomes[static_cast<std::size_t>(i)].ok) st.realization_ids.push_back(i);
    st.failed = N - static_cast<int>(st.realization_ids.size());
    if (st.failed > 0.001 * N)
      throw Error("campaign aborted: " + std::to_string(st.failed) + " of " +
                  std::to_string(N) + " realizations failed to converge");
    const int n_ok = static_cast<int>(st.realization_ids.size());

    st.lambda_samples.assign(static_cast<std::size_t>(nk), {});
    st.kinetic_samples.assign(static_cast<std::size_t>(nk), {});
    st.residuals.assign(static_cast<std::size_t>(nk), {});
    st.scaled_centered.assign(static_cast<std::size_t>(nk), {});
    for (int a = 0; a < nk; ++a)
      for (int id : st.realization_ids) {
        const Outcome& o = outcomes[static_cast<std::size_t>(id)];
        st.lambda_samples[static_cast<std::size_t>(a)].push_back(o.lambda[static_cast<std::size_t>(a)]);
        st.kinetic_samples[static_cast<std::size_t>(a)].push_back(o.kinetic[static_cast<std::size_t>(a)]);
        st.residuals[static_cast<std::size_t>(a)].push_back(o.residual[static_cast<std::size_t>(a)]);
        st.max_identity_residual =
            std::max(st.max_identity_residual, o.identity_residual[static_cast<std::size_t>(a)]);
      }

    const double scale = std::pow(eps, -0.5 * lattice.dim());
    st.mean_lambda.resize(static_cast<std::size_t>(nk));
    for (int a = 0; a < nk; ++a) {
      st.mean_lambda[static_cast<std::size_t>(a)] = sample_mean(st.lambda_samples[static_cast<std::size_t>(a)]);
      auto& sc = st.scaled_centered[static_cast<std::size_t>(a)];
      sc.resize(static_cast<std::size_t>(n_ok));
      for (int i = 0; i < n_ok; ++i)
        sc[static_cast<std::size_t>(i)] =
            scale * (st.lambda_samples[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] -
                     st.mean_lambda[static_cast<std::size_t>(a)]);
    }

    st.covariance.assign(static_cast<std::size_t>(nk), std::vector<double>(static_cast<std::size_t>(nk), 0.0));
    st.predicted_covariance = st.covariance;
    for (int a = 0; a < nk; ++a)
      for (int b = 0; b < nk; ++b) {
        st.covariance[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
            sample_covariance(st.scaled_centered[static_cast<std::size_t>(a)], st.scaled_centered[static_cast<std::size_t>(b)]);
        st.predicted_covariance[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = predicted(a, b);
      }

    for (int a = 0; a < nk; ++a) {
      st.marginals.push_back(marginal_diagnostics(st.scaled_centered[static_cast<std::size_t>(a)]));

      TailProfile tail;
      const double tmax =
          scaled_tail_grid_max(st.lambda_samples[static_cast<std::size_t>(a)], st.mean_lambda[static_cast<std::size_t>(a)]);
      const int nt = 32;
      for (int j = 0; j <= nt; ++j) {
        const double t = tmax * j / nt;
        int count = 0;
        for (double v : st.lambda_samples[static_cast<std::size_t>(a)])
          if (std::abs(v - st.mean_lambda[static_cast<std::size_t>(a)]) > t) ++count;
        tail.t.push_back(t);
        tail.exceedance.push_back(static_cast<double>(count) / n_ok);
      }
      st.tails.push_back(std::move(tail));

      st.kinetic_variance_scaled.push_back(
          sample_variance(st.kinetic_samples[static_cast<std::size_t>(a)]) / epsd);

      // Per-site variance of g(x)^2, two passes in realization order.
      const int n_sites = lattice.size();
      std::vector<long double> s1(static_cast<std::size_t>(n_sites), 0.0L), s2(static_cast<std::size_t>(n_sites), 0.0L);
      for (int id : st.realization_ids) {
        const auto& gsq = outcomes[static_cast<std::size_t>(id)].gsq[static_cast<std::size_t>(a)];
        for (int s = 0; s < n_sites; ++s) s1[static_cast<std::size_t>(s)] += gsq[static_cast<std::size_t>(s)];
      }
      for (int id : st.realization_ids) {
        const auto& gsq = outcomes[static_cast<std::size_t>(id)].gsq[static_cast<std::size_t>(a)];
        for (int s = 0; s < n_sites; ++s) {
          const long double d = gsq[static_cast<std::size_t>(s)] - s1[static_cast<std::size_t>(s)] / n_ok;
          s2[static_cast<std::size_t>(s)] += d * d;
        }
      }
      long double var_sum = 0.0L;
      for (int s = 0; s < n_sites; ++s) var_sum += s2[static_cast<std::size_t>(s)] / (n_ok - 1);
      st.gsq_variance_scaled.push_back(static_cast<double>(var_sum) / epsd);

      long double l1 = 0.0L;
      for (int id : st.realization_ids)
        l1 += outcomes[static_cast<std::size_t>(id)].l1_discrepancy[static_cast<std::size_t>(a)];
      st.eigfn_l1_discrepancy.push_back(static_cast<double>(l1) / n_ok);

      const int k = config.k_indices[static_cast<std::size_t>(a)];
      st.mean_error_vs_limit.push_back(std::abs(st.mean_lambda[static_cast<std::size_t>(a)] -
                                                ref.eigenvalues[static_cast<std::size_t>(k - 1)]));
    }

    ladder.push_back(std::move(st));
  }
  return ladder;
}

ConcentrationProfile concentration_profile(const FluctuationStats& stats, int which) {
  if (stats.realizations - stats.failed < 500)
    throw InsufficientSamples("concentration profile needs at least 500 realizations");
  const TailProfile& tail = stats.tails[static_cast<std::size_t>(which)];
  ConcentrationProfile out;
  out.t = tail.t;
  out.exceedance = tail.exceedance;

  const double inv_epsd = std::pow(stats.eps, -stats.dim);
  std::vector<double> z, y;
  double pointwise = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < tail.t.size(); ++j) {
    if (tail.t[j] <= 0.0 || tail.exceedance[j] <= 0.0) continue;
    const double zj = tail.t[j] * tail.t[j] * inv_epsd;
    const double yj = -std::log(tail.exceedance[j] / 4.0);
    z.push_back(zj);
    y.push_back(yj);
    pointwise = std::min(pointwise, yj / zj);
  }
  if (z.empty()) {
    out.c_hat = std::numeric_limits<double>::infinity();  // no observed deviations
    return out;
  }
  out.c_hat = std::min(slope_through_origin(z, y), pointwise);
  return out;
}

std::vector<EnergyRow> energy_decomposition(const std::vector<FluctuationStats>& ladder,
                                            int which) {
  std::vector<EnergyRow> rows;
  for (const auto& st : ladder) {
    EnergyRow r;
    r.eps = st.eps;
    r.kinetic_variance_scaled = st.kinetic_variance_scaled[static_cast<std::size_t>(which)];
    r.gsq_variance_scaled = st.gsq_variance_scaled[static_cast<std::size_t>(which)];
    const double epsd = std::pow(st.eps, st.dim);
    r.lambda_variance_scaled =
        sample_variance(st.lambda_samples[static_cast<std::size_t>(which)]) / epsd;
    r.kinetic_to_lambda_ratio = (r.lambda_variance_scaled > 0.0)
                                    ? r.kinetic_variance_scaled / r.lambda_variance_scaled
                                    : 0.0;
    rows.push_back(r);
  }
  return rows;
}

std::vector<ConvergenceRow> eigenfunction_convergence(const std::vector<FluctuationStats>& ladder,
                                                      int which) {
  std::vector<ConvergenceRow> rows;
  for (const auto& st : ladder) {
    ConvergenceRow r;
    r.eps = st.eps;
    r.discrepancy = st.eigfn_l1_discrepancy[static_cast<std::size_t>(which)];
    r.mean_error = st.mean_error_vs_limit[static_cast<std::size_t>(which)];
    rows.push_back(r);
  }
  return rows;
}

CltVerdict clt_diagnostics_core(const std::vector<std::vector<double>>& scaled_centered,
                                const std::vector<std::vector<double>>& predicted,
                                const CltThresholds& thr) {
  if (scaled_centered.empty()) throw InvalidConfig("no marginals");
  const int N = static_cast<int>(scaled_centered.front().size());
  if (N < thr.min_samples)
    throw InsufficientSamples("diagnostics need at least " + std::to_string(thr.min_samples) +
                              " samples, got " + std::to_string(N));
  const int nk = static_cast<int>(scaled_centered.size());
  CltVerdict v;

  bool all_degenerate = true;
  for (const auto& sc : scaled_centered)
    if (moments(sc).variance > 0.0) all_degenerate = false;
  if (all_degenerate) {
    v.pass = true;
    v.degenerate = true;
    v.covariance_pass = true;
    v.marginal_pass.assign(static_cast<std::size_t>(nk), true);
    v.notes.push_back("degenerate law: zero variance in every marginal");
    return v;
  }

  char buf[256];
  bool all = true;
  for (int a = 0; a < nk; ++a) {
    const MarginalDiagnostics d = marginal_diagnostics(scaled_centered[static_cast<std::size_t>(a)]);
    bool ok = true;
    if (d.degenerate) {
      ok = true;
    } else {
      ok = std::abs(d.skewness) <= thr.skewness &&
           std::abs(d.excess_kurtosis) <= thr.excess_kurtosis && d.ks_distance <= thr.ks;
    }
    std::snprintf(buf, sizeof buf,
                  "marginal %d: skew=%.4f kurt=%.4f ks=%.4f -> %s", a,
                  d.skewness, d.excess_kurtosis, d.ks_distance, ok ? "pass" : "FAIL");
    v.notes.emplace_back(buf);
    v.marginal_pass.push_back(ok);
    all = all && ok;
  }

  bool cov_ok = true;
  for (int a = 0; a < nk; ++a)
    for (int b = a; b < nk; ++b) {
      const double c = sample_covariance(scaled_centered[static_cast<std::size_t>(a)],
                                         scaled_centered[static_cast<std::size_t>(b)]);
      const double caa = sample_variance(scaled_centered[static_cast<std::size_t>(a)]);
      const double cbb = sample_variance(scaled_centered[static_cast<std::size_t>(b)]);
      const double p = predicted[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      const double se = std::sqrt((caa * cbb + c * c) / N);
      const double tol = std::max(thr.cov_rel * std::abs(p), thr.cov_nse * se);
      const bool ok = std::abs(c - p) <= tol;
      std::snprintf(buf, sizeof buf,
                    "covariance (%d,%d): empirical=%.5f predicted=%.5f tol=%.5f -> %s", a, b, c,
                    p, tol, ok ? "pass" : "FAIL");
      v.notes.emplace_back(buf);
      cov_ok = cov_ok && ok;
    }
  v.covariance_pass = cov_ok;
  v.pass = all && cov_ok;
  return v;
}

CltVerdict clt_diagnostics(const FluctuationStats& stats, const CltThresholds& thr) {
  return clt_diagnostics_core(stats.scaled_centered, stats.predicted_covariance, thr);
}

OracleReport exact_oracle(const PotentialSpec& spec, const LatticeDomain& lattice, int k) {
  const int n = lattice.size();
  if (spec.family != Family::TwoPoint)
    throw InvalidConfig("exact oracle requires the two-point family");
  if (n > 14) throw TooLarge("exact oracle guard: " + std::to_string(n) + " sites > 14");
  if (k < 1 || k > n) throw InvalidConfig("oracle: k out of range");
  check_feasible(spec, lattice);

  // Site i <-> bit i; the bit order matches the lexicographic site order
  // used for the conditional-expectation filtration.
  std::vector<double> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Point p = lattice.position(i);
    const double mean = spec.U(p), sd = std::sqrt(spec.V(p));
    lo[static_cast<std::size_t>(i)] = mean - sd;
    hi[static_cast<std::size_t>(i)] = mean + sd;
  }

  PotentialField field;
  field.values.resize(static_cast<std::size_t>(n));
  const Hamiltonian base = assemble(lattice, field, lattice.eps());

  const std::uint64_t total = 1ULL << n;
  std::vector<double> lambda(total);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : base.edges) {
    A(e[0], e[1]) = base.offdiag;
    A(e[1], e[0]) = base.offdiag;
  }
  const double diag0 = 2.0 * lattice.dim() / (lattice.eps() * lattice.eps());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (int i = 0; i < n; ++i)
      A(i, i) = diag0 + (((mask >> i) & 1ULL) ? hi[static_cast<std::size_t>(i)] : lo[static_cast<std::size_t>(i)]);
    es.compute(A, Eigen::EigenvaluesOnly);
    lambda[mask] = es.eigenvalues()[k - 1];
  }

  // Conditional expectations over suffix sites: B[m][p] = E(lambda | first
  // m sites fixed to the bit pattern p), built by successive averaging.
  std::vector<std::vector<double>> B(static_cast<std::size_t>(n + 1));
  B[static_cast<std::size_t>(n)] = lambda;
  for (int m = n - 1; m >= 0; --m) {
    B[static_cast<std::size_t>(m)].resize(1ULL << m);
    for (std::uint64_t p = 0; p < (1ULL << m); ++p)
      B[static_cast<std::size_t>(m)][p] =
          0.5 * (B[static_cast<std::size_t>(m + 1)][p] + B[static_cast<std::size_t>(m + 1)][p | (1ULL << m)]);
  }

  OracleReport rep;
  rep.k = k;
  rep.n_sites = n;
  rep.mean = B[0][0];
  long double var = 0.0L;
  for (std::uint64_t c = 0; c < total; ++c) {
    const long double d = lambda[c] - rep.mean;
    var += d * d;
  }
  var /= static_cast<long double>(total);
  rep.variance = static_cast<double>(var);

  // Increments Z_m depend only on the first m bits.
  std::vector<std::vector<double>> Z(static_cast<std::size_t>(n + 1));
  for (int m = 1; m <= n; ++m) {
    Z[static_cast<std::size_t>(m)].resize(1ULL << m);
    const std::uint64_t prev_mask = (1ULL << (m - 1)) - 1;
    for (std::uint64_t p = 0; p < (1ULL << m); ++p)
      Z[static_cast<std::size_t>(m)][p] =
          B[static_cast<std::size_t>(m)][p] - B[static_cast<std::size_t>(m - 1)][p & prev_mask];
  }

  rep.increment_second_moments.resize(static_cast<std::size_t>(n));
  long double sum_z2 = 0.0L;
  for (int m = 1; m <= n; ++m) {
    long double acc = 0.0L;
    for (double z : Z[static_cast<std::size_t>(m)]) acc += static_cast<long double>(z) * z;
    acc /= static_cast<long double>(1ULL << m);
    rep.increment_second_moments[static_cast<std::size_t>(m - 1)] = static_cast<double>(acc);
    sum_z2 += acc;
  }
  rep.variance_decomposition_residual = std::abs(static_cast<double>(sum_z2 - var));

  double tele = 0.0;
  for (std::uint64_t c = 0; c < total; ++c) {
    long double acc = 0.0L;
    for (int m = 1; m <= n; ++m) acc += Z[static_cast<std::size_t>(m)][c & ((1ULL << m) - 1)];
    tele = std::max(tele, std::abs(static_cast<double>(acc - (lambda[c] - rep.mean))));
  }
  rep.max_telescoping_residual = tele;

  double ortho = 0.0;
  for (int m1 = 1; m1 <= n; ++m1)
    for (int m2 = m1 + 1; m2 <= n; ++m2) {
      long double acc = 0.0L;
      const std::uint64_t mask1 = (1ULL << m1) - 1;
      for (std::uint64_t p = 0; p < (1ULL << m2); ++p)
        acc += static_cast<long double>(Z[static_cast<std::size_t>(m1)][p & mask1]) *
               Z[static_cast<std::size_t>(m2)][p];
      acc /= static_cast<long double>(1ULL << m2);
      ortho = std::max(ortho, std::abs(static_cast<double>(acc)));
    }
  rep.max_orthogonality_residual = ortho;
  return rep;
}

namespace {

void write_samples_csv(const std::string& path, const FluctuationStats& st) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw Error("cannot open " + path + " for writing");
  std::fprintf(f, "realization,k_index,lambda,T,residual\n");
  for (std::size_t i = 0; i < st.realization_ids.size(); ++i)
    for (std::size_t a = 0; a < st.k_indices.size(); ++a)
      std::fprintf(f, "%d,%d,%.17g,%.17g,%.17g\n", st.realization_ids[i], st.k_indices[a],
                   st.lambda_samples[a][i], st.kinetic_samples[a][i], st.residuals[a][i]);
  std::fclose(f);
}

}  // namespace

void write_campaign_outputs(const ExperimentConfig& config,
                            const std::vector<FluctuationStats>& stats) {
  if (config.out_dir.empty()) throw InvalidConfig("campaign output needs an output directory");
  std::filesystem::create_directories(config.out_dir);

  const ojson config_json = config_to_json(config);
  const std::string config_hash = hex64(fnv1a64(config_json.dump()));

  for (std::size_t r = 0; r < stats.size(); ++r)
    write_samples_csv(config.out_dir + "/samples_eps_" + std::to_string(r) + ".csv",
                      stats[r]);

  ojson summary;
  summary["config_hash"] = config_hash;
  summary["seed"] = config.seed;
  ojson rungs = ojson::array();
  for (const auto& st : stats) rungs.push_back(stats_to_json(st));
  summary["rungs"] = rungs;
  write_text_file(config.out_dir + "/summary.json", summary.dump(2) + "\n");

  ojson manifest;
  manifest["version"] = "anderlab 0.1.0";
  manifest["config_hash"] = config_hash;
  manifest["seed"] = config.seed;
  manifest["config"] = config_json;
  write_text_file(config.out_dir + "/manifest.json", manifest.dump(2) + "\n");
}

}  // namespace anderlab
