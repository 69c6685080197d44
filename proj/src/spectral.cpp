#include "anderlab/spectral.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "anderlab/rng.hpp"
#include "anderlab/stats.hpp"

namespace anderlab {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd to_dense(const Hamiltonian& H) {
  MatrixXd A = MatrixXd::Zero(H.n, H.n);
  for (int i = 0; i < H.n; ++i) A(i, i) = H.diag[static_cast<std::size_t>(i)];
  for (const auto& e : H.edges) {
    A(e[0], e[1]) = H.offdiag;
    A(e[1], e[0]) = H.offdiag;
  }
  return A;
}

Eigen::SparseMatrix<double> to_sparse_shifted(const Hamiltonian& H, double sigma) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(H.n) + 2 * H.edges.size());
  for (int i = 0; i < H.n; ++i)
    trip.emplace_back(i, i, H.diag[static_cast<std::size_t>(i)] - sigma);
  for (const auto& e : H.edges) {
    trip.emplace_back(e[0], e[1], H.offdiag);
    trip.emplace_back(e[1], e[0], H.offdiag);
  }
  Eigen::SparseMatrix<double> A(H.n, H.n);
  A.setFromTriplets(trip.begin(), trip.end());
  return A;
}

void fix_sign(VectorXd& v) {
  const double scale = v.cwiseAbs().maxCoeff();
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-14 * scale) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

double residual_norm(const Hamiltonian& H, const VectorXd& v, double lambda) {
  VectorXd hv(H.n);
  matvec_into(H, v.data(), hv.data());
  return (hv - lambda * v).norm();
}

void finalize(const Hamiltonian& H, EigenResult& res) {
  for (auto& v : res.vectors) fix_sign(v);
  res.residuals.resize(res.vectors.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < res.vectors.size(); ++i) {
    res.residuals[i] = residual_norm(H, res.vectors[i], res.eigenvalues[i]);
    sup = std::max(sup, res.vectors[i].cwiseAbs().maxCoeff());
  }
  res.supnorm_constant = sup * std::pow(H.eps, -0.5 * H.dim);
}

EigenResult solve_dense(const Hamiltonian& H, int k) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(to_dense(H));
  if (es.info() != Eigen::Success) throw NoConvergence(0, std::numeric_limits<double>::infinity());
  EigenResult res;
  res.method = "dense";
  res.eigenvalues.resize(static_cast<std::size_t>(k));
  res.vectors.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    res.vectors[static_cast<std::size_t>(i)] = es.eigenvectors().col(i);
    // Extended-precision Rayleigh quotient polish; the QR eigenvalue is
    // accurate to eps*||H||, which can be coarse relative to the small
    // low-lying eigenvalues of the scaled Laplacian.
    res.eigenvalues[static_cast<std::size_t>(i)] =
        static_cast<double>(rayleigh_quotient_ld(H, res.vectors[static_cast<std::size_t>(i)].data()));
  }
  finalize(H, res);
  return res;
}

// ---------------------------------------------------------------------------
// Lanczos with full reorthogonalization, deflation of converged pairs, and a
// shift-invert fallback for clustered low-lying spectra.

struct Pair {
  double lambda;
  VectorXd vec;
};

VectorXd random_start(int n, std::uint64_t round) {
  CounterRng rng(0x1209a5cbe1ULL, round);
  VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.next_normal();
  return v;
}

void orth_against(VectorXd& w, const std::vector<Pair>& conv, const std::vector<VectorXd>& basis,
                  int basis_count) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& p : conv) w -= p.vec.dot(w) * p.vec;
    for (int j = 0; j < basis_count; ++j) w -= basis[static_cast<std::size_t>(j)].dot(w) * basis[static_cast<std::size_t>(j)];
  }
}

// One restarted Lanczos sweep on `apply`; returns converged eigenpairs of H
// found at the relevant end of the operator spectrum.
std::vector<Pair> lanczos_round(
    const Hamiltonian& H, const std::function<void(const VectorXd&, VectorXd&)>& apply,
    bool largest_of_op, const std::vector<Pair>& conv, int want, double tol,
    std::uint64_t round_id) {
  const int n = H.n;
  const int m_max = std::min(n - static_cast<int>(conv.size()), std::max(3 * want + 60, 120));
  if (m_max <= 0) return {};

  std::vector<VectorXd> basis;
  basis.reserve(static_cast<std::size_t>(m_max));
  std::vector<double> alpha, beta;  // beta[j] couples basis j and j+1

  VectorXd v = random_start(n, round_id);
  orth_against(v, conv, basis, 0);
  if (v.norm() < 1e-300) return {};
  v.normalize();
  basis.push_back(v);

  VectorXd w(n), prev;
  std::vector<Pair> found;
  for (int j = 0; j < m_max; ++j) {
    apply(basis[static_cast<std::size_t>(j)], w);
    const double a = basis[static_cast<std::size_t>(j)].dot(w);
    alpha.push_back(a);
    w -= a * basis[static_cast<std::size_t>(j)];
    if (j > 0) w -= beta[static_cast<std::size_t>(j - 1)] * basis[static_cast<std::size_t>(j - 1)];
    orth_against(w, conv, basis, j + 1);
    const double b = w.norm();

    const bool last = (j + 1 == m_max) || (b < 1e-13);
    if (!last) {
      beta.push_back(b);
      basis.push_back(w / b);
    }

    // Extract Ritz pairs at the end of the sweep (or on breakdown).
    if (last) {
      const int m = j + 1;
      Eigen::VectorXd d = Eigen::Map<const VectorXd>(alpha.data(), m);
      Eigen::VectorXd e =
          (m > 1) ? Eigen::Map<const VectorXd>(beta.data(), m - 1) : Eigen::VectorXd();
      Eigen::SelfAdjointEigenSolver<MatrixXd> tes;
      tes.computeFromTridiagonal(d, e);
      for (int t = 0; t < m; ++t) {
        const int idx = largest_of_op ? (m - 1 - t) : t;
        VectorXd y = VectorXd::Zero(n);
        for (int q = 0; q < m; ++q) y += tes.eigenvectors()(q, idx) * basis[static_cast<std::size_t>(q)];
        y.normalize();
        const double lambda = static_cast<double>(rayleigh_quotient_ld(H, y.data()));
        if (residual_norm(H, y, lambda) <= tol * (1.0 + std::abs(lambda))) {
          // Keep it orthogonal to everything accepted so far.
          VectorXd z = y;
          for (const auto& p : conv) z -= p.vec.dot(z) * p.vec;
          for (const auto& p : found) z -= p.vec.dot(z) * p.vec;
          if (z.norm() > 0.5) {
            z.normalize();
            const double lz = static_cast<double>(rayleigh_quotient_ld(H, z.data()));
            if (residual_norm(H, z, lz) <= tol * (1.0 + std::abs(lz)))
              found.push_back({lz, z});
          }
        } else {
          break;  // residuals only grow toward the interior of the sweep
        }
        if (static_cast<int>(found.size()) >= want + 2) break;
      }
      break;
    }
  }
  return found;
}

EigenResult solve_iterative(const Hamiltonian& H, int k, double tol) {
  const int n = H.n;
  std::vector<Pair> conv;
  bool shift_invert = false;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  double sigma = 0.0;

  std::function<void(const VectorXd&, VectorXd&)> apply_h =
      [&](const VectorXd& x, VectorXd& y) {
        y.resize(n);
        matvec_into(H, x.data(), y.data());
      };
  std::function<void(const VectorXd&, VectorXd&)> apply_inv =
      [&](const VectorXd& x, VectorXd& y) { y = ldlt.solve(x); };

  auto kth_value = [&](int k1) {
    return conv[static_cast<std::size_t>(k1 - 1)].lambda;
  };

  const int max_rounds = 6 * k + 24;
  int round = 0;
  int stagnant = 0;
  while (round < max_rounds) {
    const int want = std::max(k - static_cast<int>(conv.size()), 1);
    std::vector<Pair> got =
        shift_invert
            ? lanczos_round(H, apply_inv, true, conv, want, tol, static_cast<std::uint64_t>(round))
            : lanczos_round(H, apply_h, false, conv, want, tol, static_cast<std::uint64_t>(round));
    ++round;

    const double before_kth =
        (static_cast<int>(conv.size()) >= k) ? kth_value(k) : std::numeric_limits<double>::infinity();
    for (auto& p : got) conv.push_back(std::move(p));
    std::sort(conv.begin(), conv.end(), [](const Pair& a, const Pair& b) { return a.lambda < b.lambda; });

    const bool have_k = static_cast<int>(conv.size()) >= k;
    const bool new_below =
        have_k && (kth_value(k) < before_kth - 1e-12 * (1.0 + std::abs(before_kth)));
    if (got.empty()) {
      ++stagnant;
      if (!shift_invert) {
        // Clustered or slowly separating low end: factor H - sigma and
        // iterate on the inverse.  Domain monotonicity of the Dirichlet
        // Laplacian gives lambda_1 >= min xi + 2 d eps^{-2} (1 - cos(pi/(n+1)));
        // half that margin keeps sigma strictly below the spectrum while
        // staying close enough to separate the low cluster.
        const double margin =
            H.dim * (1.0 - std::cos(3.14159265358979323846 / (n + 1))) / (H.eps * H.eps);
        sigma = H.min_xi() + margin;
        ldlt.compute(to_sparse_shifted(H, sigma));
        if (ldlt.info() != Eigen::Success)
          throw NoConvergence(round, std::numeric_limits<double>::infinity());
        shift_invert = true;
        stagnant = 0;
      } else if (have_k && stagnant >= 2) {
        break;  // verified: fresh sweeps find nothing new below the k-th
      } else if (stagnant >= 4) {
        break;
      }
    } else {
      stagnant = 0;
      if (have_k && !new_below && shift_invert) break;
      if (have_k && !new_below && !shift_invert && static_cast<int>(conv.size()) >= k + 1) break;
    }
  }

  if (static_cast<int>(conv.size()) < k) {
    double worst = std::numeric_limits<double>::infinity();
    throw NoConvergence(round, worst);
  }
  EigenResult res;
  res.method = "iterative";
  for (int i = 0; i < k; ++i) {
    res.eigenvalues.push_back(conv[static_cast<std::size_t>(i)].lambda);
    res.vectors.push_back(conv[static_cast<std::size_t>(i)].vec);
  }
  finalize(H, res);
  for (std::size_t i = 0; i < res.residuals.size(); ++i)
    if (!(res.residuals[i] <= tol * (1.0 + std::abs(res.eigenvalues[i]))))
      throw NoConvergence(round, res.residuals[i]);
  return res;
}

}  // namespace

double simplicity_threshold(double lambda) {
  return std::max(1e-8, 1e-6 * std::abs(lambda));
}

EigenResult lowest_eigenpairs(const Hamiltonian& H, int k, double tol, SolverMethod method) {
  if (H.n < 1) throw InvalidConfig("empty Hamiltonian");
  if (k < 1 || k > H.n)
    throw InvalidConfig("requested k=" + std::to_string(k) + " of n=" + std::to_string(H.n));
  if (!(tol > 0.0)) throw InvalidConfig("tolerance must be positive");
  const bool dense = (method == SolverMethod::Dense) ||
                     (method == SolverMethod::Auto && H.n <= kDenseLimit);
  return dense ? solve_dense(H, k) : solve_iterative(H, k, tol);
}

double kyfan_sum(const Hamiltonian& H, int k, double tol) {
  const EigenResult res = lowest_eigenpairs(H, k, tol);
  long double acc = 0.0L;
  for (double l : res.eigenvalues) acc += l;
  return static_cast<double>(acc);
}

GapCertificate gap_certificate(const Hamiltonian& H, int k, double tol) {
  if (k < 1 || k > H.n) throw InvalidConfig("gap certificate: k out of range");
  const int solve_k = std::min(k + 1, H.n);
  const EigenResult res = lowest_eigenpairs(H, solve_k, tol);
  GapCertificate cert;
  cert.k = k;
  const double lk = res.eigenvalues[static_cast<std::size_t>(k - 1)];
  cert.gap_below = (k >= 2) ? lk - res.eigenvalues[static_cast<std::size_t>(k - 2)]
                            : std::numeric_limits<double>::infinity();
  cert.gap_above = (k < H.n) ? res.eigenvalues[static_cast<std::size_t>(k)] - lk
                             : std::numeric_limits<double>::infinity();
  const double thr = simplicity_threshold(lk);
  cert.simple = cert.gap_below > thr && cert.gap_above > thr;
  return cert;
}

std::pair<double, double> kyfan_gap_check(const Hamiltonian& H, int k,
                                          const std::vector<Eigen::VectorXd>& psi) {
  if (static_cast<int>(psi.size()) != k) throw InvalidConfig("need exactly k trial vectors");
  if (k >= H.n) throw InvalidConfig("gap check needs k < n");
  for (const auto& p : psi)
    if (p.size() != H.n) throw DimensionMismatch("trial vector length mismatch");
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      const double g = psi[static_cast<std::size_t>(i)].dot(psi[static_cast<std::size_t>(j)]);
      if (std::abs(g - (i == j ? 1.0 : 0.0)) > 1e-10)
        throw NotOrthonormal("trial family fails orthonormality at (" + std::to_string(i) +
                             "," + std::to_string(j) + ")");
    }

  const EigenResult res = lowest_eigenpairs(H, k + 1, 1e-10);
  long double kyfan = 0.0L;
  for (int i = 0; i < k; ++i) kyfan += res.eigenvalues[static_cast<std::size_t>(i)];

  long double lhs = 0.0L;
  double proj_sq = 0.0;
  for (const auto& p : psi) {
    lhs += rayleigh_quotient_ld(H, p.data());
    double inside = 0.0;
    for (int j = 0; j < k; ++j) {
      const double c = res.vectors[static_cast<std::size_t>(j)].dot(p);
      inside += c * c;
    }
    proj_sq += std::max(0.0, 1.0 - inside);
  }
  const double gap = res.eigenvalues[static_cast<std::size_t>(k)] - res.eigenvalues[static_cast<std::size_t>(k - 1)];
  return {static_cast<double>(lhs - kyfan), gap * proj_sq};
}

double eigenvalue_derivative(const Hamiltonian& H, int k, int site) {
  if (site < 0 || site >= H.n) throw InvalidConfig("site index out of range");
  const int solve_k = std::min(k + 1, H.n);
  const EigenResult res = lowest_eigenpairs(H, solve_k, 1e-10);
  const double lk = res.eigenvalues[static_cast<std::size_t>(k - 1)];
  const double thr = simplicity_threshold(lk);
  const double below = (k >= 2) ? lk - res.eigenvalues[static_cast<std::size_t>(k - 2)]
                                : std::numeric_limits<double>::infinity();
  const double above = (k < H.n) ? res.eigenvalues[static_cast<std::size_t>(k)] - lk
                                 : std::numeric_limits<double>::infinity();
  if (!(below > thr && above > thr))
    throw DegenerateEigenvalue("eigenvalue " + std::to_string(k) + " is not certified simple");
  const double g = res.vectors[static_cast<std::size_t>(k - 1)][site];
  return g * g;
}

namespace {

// MINRES for the symmetric (indefinite) deflated system.
VectorXd minres(const std::function<void(const VectorXd&, VectorXd&)>& apply,
                const VectorXd& b, double rtol, int maxit) {
  const int n = static_cast<int>(b.size());
  VectorXd x = VectorXd::Zero(n);
  const double beta1 = b.norm();
  if (beta1 == 0.0) return x;

  VectorXd v_old = VectorXd::Zero(n), v = b / beta1, v_new(n);
  VectorXd w = VectorXd::Zero(n), w_old = VectorXd::Zero(n), w_new(n);
  double beta = beta1, eta = beta1;
  double c_old = 1.0, c = 1.0, s_old = 0.0, s = 0.0;

  for (int it = 0; it < maxit; ++it) {
    apply(v, v_new);
    const double alpha = v.dot(v_new);
    v_new -= alpha * v + beta * v_old;
    const double beta_new = v_new.norm();

    const double delta = c * alpha - c_old * s * beta;
    const double rho1 = std::sqrt(delta * delta + beta_new * beta_new);
    const double rho2 = s * alpha + c_old * c * beta;
    const double rho3 = s_old * beta;
    if (rho1 == 0.0) break;
    const double c_new = delta / rho1;
    const double s_new = beta_new / rho1;

    w_new = (v - rho3 * w_old - rho2 * w) / rho1;
    x += c_new * eta * w_new;
    eta = -s_new * eta;

    if (std::abs(eta) <= rtol * beta1 || beta_new < 1e-300) break;

    v_old = v;
    v = v_new / beta_new;
    w_old = w;
    w = w_new;
    beta = beta_new;
    c_old = c;
    c = c_new;
    s_old = s;
    s = s_new;
  }
  return x;
}

double reduced_green_dense(const Hamiltonian& H, int k, int x, int y) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(to_dense(H));
  const double lk = es.eigenvalues()[k - 1];
  const double thr = simplicity_threshold(lk);
  if ((k >= 2 && lk - es.eigenvalues()[k - 2] <= thr) ||
      (k < H.n && es.eigenvalues()[k] - lk <= thr))
    throw DegenerateEigenvalue("reduced Green function needs a simple eigenvalue");
  long double acc = 0.0L;
  for (int i = 0; i < H.n; ++i) {
    if (i == k - 1) continue;
    acc += static_cast<long double>(es.eigenvectors()(x, i)) * es.eigenvectors()(y, i) /
           (es.eigenvalues()[i] - lk);
  }
  return static_cast<double>(acc);
}

double reduced_green_deflated(const Hamiltonian& H, int k, int x, int y) {
  const GapCertificate cert = gap_certificate(H, k, 1e-10);
  if (!cert.simple) throw DegenerateEigenvalue("reduced Green function needs a simple eigenvalue");
  const EigenResult res = lowest_eigenpairs(H, k, 1e-10);
  const double lk = res.eigenvalues[static_cast<std::size_t>(k - 1)];
  const VectorXd& g = res.vectors[static_cast<std::size_t>(k - 1)];

  VectorXd b = VectorXd::Zero(H.n);
  b[y] = 1.0;
  b -= g[y] * g;

  auto apply = [&](const VectorXd& in, VectorXd& out) {
    VectorXd t = in - g.dot(in) * g;
    out.resize(H.n);
    matvec_into(H, t.data(), out.data());
    out -= lk * t;
    out -= g.dot(out) * g;
  };
  const VectorXd u = minres(apply, b, 1e-13, 20 * H.n + 200);
  return u[x];
}

}  // namespace

double reduced_green_with(const Hamiltonian& H, int k, int x, int y, SolverMethod method) {
  if (k < 1 || k > H.n) throw InvalidConfig("reduced Green: k out of range");
  if (x < 0 || x >= H.n || y < 0 || y >= H.n) throw InvalidConfig("reduced Green: site out of range");
  if (H.n == 1) return 0.0;  // no other eigenvalues
  const bool dense = (method == SolverMethod::Dense) ||
                     (method == SolverMethod::Auto && H.n <= kDenseLimit);
  return dense ? reduced_green_dense(H, k, x, y) : reduced_green_deflated(H, k, x, y);
}

double reduced_green(const Hamiltonian& H, int k, int x, int y) {
  return reduced_green_with(H, k, x, y, SolverMethod::Auto);
}

std::pair<double, double> rank_one_flow_check(const Hamiltonian& H, int k, int site,
                                              double xi_from, double xi_to,
                                              int quad_points) {
  if (site < 0 || site >= H.n) throw InvalidConfig("flow check: site out of range");
  if (quad_points < 1) throw InvalidConfig("flow check: need at least one quadrature node");

  auto abs_component = [&](double xi) {
    const Hamiltonian Ht = H.with_site_xi(site, xi);
    const EigenResult res = lowest_eigenpairs(Ht, std::min(k + 1, Ht.n), 1e-11);
    const double lk = res.eigenvalues[static_cast<std::size_t>(k - 1)];
    const double thr = simplicity_threshold(lk);
    const double below = (k >= 2) ? lk - res.eigenvalues[static_cast<std::size_t>(k - 2)]
                                  : std::numeric_limits<double>::infinity();
    const double above = (k < Ht.n) ? res.eigenvalues[static_cast<std::size_t>(k)] - lk
                                    : std::numeric_limits<double>::infinity();
    if (!(below > thr && above > thr))
      throw DegeneracyCrossing("eigenvalue loses simplicity at xi(site)=" + std::to_string(xi));
    return std::abs(res.vectors[static_cast<std::size_t>(k - 1)][site]);
  };

  const double lhs = abs_component(xi_to);
  const double start = abs_component(xi_from);
  if (xi_from == xi_to) return {lhs, start};

  const auto [nodes, weights] = gauss_legendre(quad_points);
  const double mid = 0.5 * (xi_from + xi_to);
  const double half = 0.5 * (xi_to - xi_from);
  long double integral = 0.0L;
  for (int i = 0; i < quad_points; ++i) {
    const double xi = mid + half * nodes[static_cast<std::size_t>(i)];
    const Hamiltonian Ht = H.with_site_xi(site, xi);
    try {
      integral += static_cast<long double>(weights[static_cast<std::size_t>(i)]) *
                  reduced_green(Ht, k, site, site);
    } catch (const DegenerateEigenvalue&) {
      throw DegeneracyCrossing("eigenvalue loses simplicity at quadrature node xi(site)=" +
                               std::to_string(xi));
    }
  }
  integral *= half;
  // The log-derivative of |g_k(site)| in xi(site) is minus the diagonal
  // reduced Green function: raising the potential at a site drains the
  // eigenfunction there while G stays positive near the bottom of the
  // spectrum.
  return {lhs, start * std::exp(-static_cast<double>(integral))};
}

}  // namespace anderlab
