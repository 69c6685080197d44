#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "anderlab/geometry.hpp"
#include "anderlab/profile.hpp"

namespace anderlab {

// Deterministic continuum benchmark: the low Dirichlet spectrum of the
// limit operator -Laplace + U on the region, approximated by the lattice
// machinery at a fine deterministic resolution.  The lattice domain
// excludes a boundary collar of width ~eps, so the leading eigenvalue
// error is O(eps); two-grid extrapolation eliminates that term, leaving
// an O(eps^2) residual.
struct ContinuumSpectrum {
  int k = 0;            // number of eigenpairs held
  double eps_ref = 0.0; // coarse resolution (fine grid runs at eps_ref/2)

  std::vector<double> eigenvalues;         // extrapolated, ascending
  std::vector<double> eigenvalues_coarse;  // raw lattice values at eps_ref
  std::vector<double> eigenvalues_fine;    // raw lattice values at eps_ref/2

  LatticeDomain grid;         // fine lattice
  LatticeDomain grid_coarse;
  // L^2-normalized eigenfunction samples phi_k(x*eps) on each grid.
  std::vector<Eigen::VectorXd> eigenfunctions;         // fine
  std::vector<Eigen::VectorXd> eigenfunctions_coarse;
};

// Solves the deterministic problem xi(x) = U(x*eps) at eps_ref and
// eps_ref/2 and extrapolates.  Requires the coarse lattice to span at
// least 4k sites per dimension (ResolutionTooCoarse otherwise).
ContinuumSpectrum homogenized_spectrum(const ShapeSpec& shape, const ProfileFn& U,
                                       int k, double eps_ref);

// True when the limit eigenvalue k has both adjacent gaps above the
// simplicity threshold (the gap above requires k < spectrum size).
bool limit_simple(const ContinuumSpectrum& spec, int k);

// Limit covariance of the scaled eigenvalue fluctuations:
//   sigma^2_ij = integral of V |phi_i|^2 |phi_j|^2 over the region,
// by Riemann quadrature on both stored grids with the same two-grid
// extrapolation as the eigenvalues.  Requires every requested index to be
// simple in the limit (DegenerateLimit names the offending pair).
Eigen::MatrixXd covariance_prediction(const ContinuumSpectrum& spec, const ProfileFn& V,
                                      const std::vector<int>& indices);

// Evaluate the k-th limit eigenfunction at the site positions of another
// lattice via piecewise-linear interpolation of the stored fine grid.
std::vector<double> sample_eigenfunction(const ContinuumSpectrum& spec, int k,
                                         const LatticeDomain& target);

// Persistence: JSON metadata plus a raw little-endian double grid in a
// sibling ".f64" file.  The cache key hashes (shape, U, k, eps_ref).
std::string reference_cache_key(const ShapeSpec& shape, const ProfileFn& U, int k,
                                double eps_ref);
void save_spectrum(const ContinuumSpectrum& spec, const std::string& json_path);
ContinuumSpectrum load_spectrum(const std::string& json_path);
ContinuumSpectrum load_or_compute(const std::string& cache_dir, const ShapeSpec& shape,
                                  const ProfileFn& U, int k, double eps_ref);

}  // namespace anderlab
