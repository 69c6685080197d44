#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "anderlab/geometry.hpp"

namespace anderlab {

// Function on the integer lattice with finite support (zero outside a
// stored box), tagged with the lattice scale eps.
class LatticeFunction {
 public:
  LatticeFunction() = default;
  LatticeFunction(int dim, double eps, Site lo, Site hi, std::vector<double> values);
  static LatticeFunction on_domain(const LatticeDomain& dom,
                                   const std::vector<double>& site_values);

  int dim() const { return dim_; }
  double eps() const { return eps_; }
  const Site& lo() const { return lo_; }
  const Site& hi() const { return hi_; }

  double at(const Site& s) const;  // zero outside the stored box
  void set(const Site& s, double v);

  // Forward-difference gradient component: f(s + e_axis) - f(s).
  double grad(const Site& s, int axis) const {
    Site t = s;
    ++t[axis];
    return at(t) - at(s);
  }
  // Euclidean norm of the full forward-difference gradient at s.
  double grad_norm(const Site& s) const;

  // Unscaled l^p sums over all of the lattice.
  double l1_norm() const;
  double grad_l1_norm() const;
  double grad_l2_sq() const;  // sum of |gradient|^2 over all sites

 private:
  int dim_ = 1;
  double eps_ = 1.0;
  Site lo_{0, 0, 0};
  Site hi_{-1, 0, 0};  // empty box by default
  std::array<int, 3> ext_{0, 1, 1};
  std::vector<double> values_;

  std::size_t flat(const Site& s) const;
  bool inside(const Site& s) const;
};

// Scaled l^p norm (eps^dim * sum |f|^p)^{1/p}; p = infinity gives max |f|.
double scaled_norm(const LatticeFunction& f, double p);

// Piecewise-linear interpolant over lattice cells.  Within the cell at
// scaled corner x*eps the fractional coordinates are sorted in
// non-increasing order and the value built from forward differences along
// the sorted axes; ties resolve to the lexicographically smallest
// admissible permutation (all admissible choices agree exactly).
class Interpolant {
 public:
  explicit Interpolant(LatticeFunction f) : f_(std::move(f)) {}
  const LatticeFunction& lattice_function() const { return f_; }

  double operator()(const Point& y) const;

  // Evaluation with an explicit axis permutation (descending fractional
  // coordinates); exposed so tie cases can be cross-checked exactly.
  double eval_with_permutation(const Point& y, const std::array<int, 3>& perm) const;

  void write_grid_csv(const std::string& path, int samples_per_axis) const;

 private:
  LatticeFunction f_;
};

Interpolant interpolate(const LatticeFunction& f);

// Exact L^2 norm of the interpolant gradient, assembled simplex by simplex
// (each cell splits into dim! simplices of volume eps^dim / dim! on which
// the gradient is constant).  Equals eps^{-1} * scaled l^2 norm of the
// forward-difference gradient, exactly.
double interpolant_gradient_norm(const LatticeFunction& f);

// Monte-Carlo-free stratified estimate of the L^p norm of the interpolant
// (fixed low-discrepancy points per cell); p = infinity gives a max over
// sample points.
double interpolant_lp_norm_estimate(const LatticeFunction& f, double p,
                                    int samples_per_cell = 16);

// Block-constant coarsening f_L(x) = f(L * floor(x / L)).
LatticeFunction coarsen(const LatticeFunction& f, int L);

// Both sides of the coarsening inequality
//   ||f - f_L||_1 <= 2^dim * sqrt(dim) * L * ||grad f||_1
// (unscaled l^1 norms); test suites verify it on every coarsening case.
std::pair<double, double> coarsening_bound(const LatticeFunction& f, int L);

// Inner product of the piecewise-constant lifts eps^{-dim/2} f(floor(y/eps));
// the scaling makes it equal the plain lattice inner product.
double constant_lift_inner(const LatticeFunction& f, const LatticeFunction& h);

}  // namespace anderlab
