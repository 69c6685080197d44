#pragma once

#include <array>
#include <string>
#include <vector>

#include "anderlab/geometry.hpp"
#include "anderlab/potential.hpp"

namespace anderlab {

// Sparse symmetric Anderson Hamiltonian
//   (H f)(x) = -eps^{-2} sum_{|y-x|=1} [f(y) - f(x)] + xi(x) f(x)
// with f extended by zero outside the lattice domain.  The diagonal is
// 2*dim*eps^{-2} + xi(x); every interior lattice edge carries -eps^{-2}.
// Only one triangle of the edge set is stored; matvec symmetrizes.
struct Hamiltonian {
  int n = 0;
  int dim = 0;
  double eps = 1.0;
  std::vector<double> diag;
  std::vector<std::array<int, 2>> edges;  // (i,j) with i < j
  double offdiag = 0.0;                   // -eps^{-2}

  double xi_at(int i) const { return diag[static_cast<std::size_t>(i)] - 2.0 * dim / (eps * eps); }
  double min_xi() const;
  double trace() const;

  // Copy with the site potential replaced: diag(i) = 2*dim*eps^{-2} + xi.
  Hamiltonian with_site_xi(int i, double xi) const;

  void write_coo(const std::string& path) const;
};

Hamiltonian assemble(const LatticeDomain& lattice, const PotentialField& field,
                     double eps);

std::vector<double> matvec(const Hamiltonian& H, const std::vector<double>& v);
void matvec_into(const Hamiltonian& H, const double* v, double* out);
double quadratic_form(const Hamiltonian& H, const std::vector<double>& v);

// Rayleigh quotient <v,Hv>/<v,v> accumulated in extended precision.
long double rayleigh_quotient_ld(const Hamiltonian& H, const double* v);

// Dirichlet-form energy eps^{-2} * sum_x |forward-difference gradient|^2
// summed over the whole lattice with zero extension, so edges leaving the
// domain contribute the squared endpoint value.  With this convention the
// identity lambda = T + <xi, g^2> is exact for every eigenpair (lambda, g).
double kinetic_energy(const LatticeDomain& lattice, double eps,
                      const std::vector<double>& g);

}  // namespace anderlab
