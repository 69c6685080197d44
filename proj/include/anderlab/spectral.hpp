#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "anderlab/hamiltonian.hpp"

namespace anderlab {

// Eigenvalue indices are 1-based throughout: k = 1 is the ground state.

struct EigenResult {
  std::vector<double> eigenvalues;       // ascending
  std::vector<Eigen::VectorXd> vectors;  // orthonormal; first nonzero entry positive
  std::vector<double> residuals;         // ||H g - lambda g||_2 per pair
  std::string method;                    // "dense" or "iterative"
  double supnorm_constant = 0.0;         // max_k ||g_k||_inf * eps^{-dim/2}
};

enum class SolverMethod { Auto, Dense, Iterative };

// Instances up to this size go through full dense diagonalization; larger
// ones use Lanczos with full reorthogonalization and a shift-invert
// fallback for clustered low-lying spectra.
inline constexpr int kDenseLimit = 2000;

EigenResult lowest_eigenpairs(const Hamiltonian& H, int k, double tol = 1e-9,
                              SolverMethod method = SolverMethod::Auto);

// Sum of the k smallest eigenvalues (the variational Ky Fan quantity).
double kyfan_sum(const Hamiltonian& H, int k, double tol = 1e-10);

// An eigenvalue counts as simple when both adjacent gaps exceed this.
double simplicity_threshold(double lambda);

struct GapCertificate {
  int k = 0;
  double gap_below = 0.0;  // lambda_k - lambda_{k-1} (+inf for k = 1)
  double gap_above = 0.0;  // lambda_{k+1} - lambda_k (+inf for k = n)
  bool simple = false;
};

GapCertificate gap_certificate(const Hamiltonian& H, int k, double tol = 1e-10);

// Quantitative Ky Fan gap inequality.  Returns (lhs, rhs) with
//   lhs = sum_i <psi_i, H psi_i> - (lambda_1 + ... + lambda_k)
//   rhs = (lambda_{k+1} - lambda_k) * sum_i || proj onto span(g_1..g_k)^perp psi_i ||^2
// and the contract lhs >= rhs - 1e-9.  Throws NotOrthonormal unless the
// trial family is orthonormal to 1e-10.
std::pair<double, double> kyfan_gap_check(const Hamiltonian& H, int k,
                                          const std::vector<Eigen::VectorXd>& psi);

// d lambda_k / d xi(site) = |g_k(site)|^2, valid at certified-simple
// eigenvalues; throws DegenerateEigenvalue otherwise.
double eigenvalue_derivative(const Hamiltonian& H, int k, int site);

// Reduced Green function at the k-th eigenvalue:
//   G_k(x,y) = sum_{i != k} g_i(x) g_i(y) / (lambda_i - lambda_k),
// the inverse of (H - lambda_k) restricted to the orthogonal complement of
// the k-th eigenvector.  Dense instances use the full spectrum; large ones
// solve the deflated linear system iteratively.
double reduced_green(const Hamiltonian& H, int k, int x, int y);
double reduced_green_with(const Hamiltonian& H, int k, int x, int y, SolverMethod method);

// Rank-one flow identity: moving xi(site) from xi_from to xi_to,
//   |g_k(site; to)| = |g_k(site; from)| * exp( integral of G_k(site,site) ).
// Returns (lhs, rhs): lhs from direct re-diagonalization at xi_to, rhs via
// m-point Gauss-Legendre quadrature of the diagonal reduced Green function.
// Throws DegeneracyCrossing if the eigenvalue fails the simplicity check at
// an endpoint or a quadrature node.
std::pair<double, double> rank_one_flow_check(const Hamiltonian& H, int k, int site,
                                              double xi_from, double xi_to,
                                              int quad_points);

}  // namespace anderlab
