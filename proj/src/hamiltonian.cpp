#include "anderlab/hamiltonian.hpp"

#include <algorithm>
#include <cstdio>

namespace anderlab {

double Hamiltonian::min_xi() const {
  double m = xi_at(0);
  for (int i = 1; i < n; ++i) m = std::min(m, xi_at(i));
  return m;
}

double Hamiltonian::trace() const {
  double t = 0.0;
  for (double d : diag) t += d;
  return t;
}

Hamiltonian Hamiltonian::with_site_xi(int i, double xi) const {
  Hamiltonian out = *this;
  out.diag[static_cast<std::size_t>(i)] = 2.0 * dim / (eps * eps) + xi;
  return out;
}

void Hamiltonian::write_coo(const std::string& path) const {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw Error("cannot open " + path + " for writing");
  for (int i = 0; i < n; ++i) std::fprintf(f, "%d %d %.17g\n", i, i, diag[static_cast<std::size_t>(i)]);
  for (const auto& e : edges) {
    std::fprintf(f, "%d %d %.17g\n", e[0], e[1], offdiag);
    std::fprintf(f, "%d %d %.17g\n", e[1], e[0], offdiag);
  }
  std::fclose(f);
}

Hamiltonian assemble(const LatticeDomain& lattice, const PotentialField& field,
                     double eps) {
  if (static_cast<int>(field.values.size()) != lattice.size())
    throw DimensionMismatch("field has " + std::to_string(field.values.size()) +
                            " values for " + std::to_string(lattice.size()) + " sites");
  Hamiltonian H;
  H.n = lattice.size();
  H.dim = lattice.dim();
  H.eps = eps;
  const double inv2 = 1.0 / (eps * eps);
  H.offdiag = -inv2;
  H.diag.resize(static_cast<std::size_t>(H.n));
  for (int i = 0; i < H.n; ++i)
    H.diag[static_cast<std::size_t>(i)] = 2.0 * H.dim * inv2 + field.values[static_cast<std::size_t>(i)];
  // Boundary edges only touch the diagonal (already counted in 2*dim*inv2);
  // interior edges are stored once with i < j, in deterministic order.
  for (int i = 0; i < H.n; ++i)
    for (int a = 0; a < H.dim; ++a) {
      const int j = lattice.neighbor(i, a, 1);
      if (j != LatticeDomain::kBoundary) H.edges.push_back({i, j});
    }
  return H;
}

void matvec_into(const Hamiltonian& H, const double* v, double* out) {
  for (int i = 0; i < H.n; ++i) out[i] = H.diag[static_cast<std::size_t>(i)] * v[i];
  for (const auto& e : H.edges) {
    out[e[0]] += H.offdiag * v[e[1]];
    out[e[1]] += H.offdiag * v[e[0]];
  }
}

std::vector<double> matvec(const Hamiltonian& H, const std::vector<double>& v) {
  if (static_cast<int>(v.size()) != H.n)
    throw DimensionMismatch("matvec: vector length " + std::to_string(v.size()) +
                            " != " + std::to_string(H.n));
  std::vector<double> out(v.size());
  matvec_into(H, v.data(), out.data());
  return out;
}

double quadratic_form(const Hamiltonian& H, const std::vector<double>& v) {
  const std::vector<double> hv = matvec(H, v);
  double acc = 0.0;
  for (int i = 0; i < H.n; ++i) acc += v[static_cast<std::size_t>(i)] * hv[static_cast<std::size_t>(i)];
  return acc;
}

long double rayleigh_quotient_ld(const Hamiltonian& H, const double* v) {
  long double num = 0.0L, den = 0.0L;
  for (int i = 0; i < H.n; ++i) {
    num += static_cast<long double>(H.diag[static_cast<std::size_t>(i)]) * v[i] * v[i];
    den += static_cast<long double>(v[i]) * v[i];
  }
  const long double off = static_cast<long double>(H.offdiag);
  for (const auto& e : H.edges) num += 2.0L * off * v[e[0]] * v[e[1]];
  return num / den;
}

double kinetic_energy(const LatticeDomain& lattice, double eps,
                      const std::vector<double>& g) {
  if (static_cast<int>(g.size()) != lattice.size())
    throw DimensionMismatch("kinetic_energy: vector length mismatch");
  // Each unordered nearest-neighbor pair appears exactly once as a forward
  // difference from its lower endpoint, so summing per site the forward
  // edge plus any boundary edge on the minus side covers the whole sum.
  long double acc = 0.0L;
  for (int i = 0; i < lattice.size(); ++i) {
    const long double gi = g[static_cast<std::size_t>(i)];
    for (int a = 0; a < lattice.dim(); ++a) {
      const int jp = lattice.neighbor(i, a, 1);
      const long double gp = (jp == LatticeDomain::kBoundary) ? 0.0L : static_cast<long double>(g[static_cast<std::size_t>(jp)]);
      acc += (gp - gi) * (gp - gi);
      if (lattice.neighbor(i, a, 0) == LatticeDomain::kBoundary) acc += gi * gi;
    }
  }
  return static_cast<double>(acc / (static_cast<long double>(eps) * eps));
}

}  // namespace anderlab
