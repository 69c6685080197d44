#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <filesystem>

#include "anderlab/hamiltonian.hpp"
#include "anderlab/rng.hpp"
#include "anderlab/spectral.hpp"

using namespace anderlab;

namespace {

ShapeSpec interval(double a, double b) {
  ShapeSpec s;
  s.dim = 1;
  s.boxes.push_back({{a, 0, 0}, {b, 0, 0}});
  return s;
}

ShapeSpec cube(int dim) {
  ShapeSpec s;
  s.dim = dim;
  BoxSpec b;
  for (int a = 0; a < dim; ++a) b.hi[a] = 1.0;
  s.boxes.push_back(b);
  return s;
}

PotentialField zero_field(const LatticeDomain& dom) {
  PotentialField f;
  f.values.assign(static_cast<std::size_t>(dom.size()), 0.0);
  return f;
}

PotentialField random_field(const LatticeDomain& dom, std::uint64_t seed, double lo, double hi) {
  PotentialField f;
  f.values.resize(static_cast<std::size_t>(dom.size()));
  CounterRng rng(seed);
  for (auto& v : f.values) v = lo + (hi - lo) * rng.next_unit();
  return f;
}

}  // namespace

TEST_SUITE("hamiltonian") {

TEST_CASE("single-site matrix is the bare Dirichlet stencil") {
  const LatticeDomain dom = discretize(interval(0, 1), 0.25);
  const Hamiltonian H = assemble(dom, zero_field(dom), 0.25);
  REQUIRE(H.n == 1);
  CHECK(H.diag[0] == doctest::Approx(32.0).epsilon(1e-15));
  CHECK(H.edges.empty());
}

TEST_CASE("two-site path at unit scale") {
  const LatticeDomain dom = discretize(interval(0, 1), 0.2);
  REQUIRE(dom.size() == 2);
  const Hamiltonian H = assemble(dom, zero_field(dom), 1.0);
  CHECK(H.diag[0] == 2.0);
  CHECK(H.diag[1] == 2.0);
  REQUIRE(H.edges.size() == 1);
  CHECK(H.offdiag == -1.0);
  const std::vector<double> y = matvec(H, {1.0, 1.0});
  CHECK(y[0] == 1.0);
  CHECK(y[1] == 1.0);
}

TEST_CASE("diagonal shift carries the site potential") {
  const LatticeDomain dom = discretize(interval(0, 1), 0.25);
  PotentialField f = zero_field(dom);
  f.values[0] = 5.0;
  const Hamiltonian H = assemble(dom, f, 1.0);
  CHECK(H.diag[0] == 7.0);
  CHECK(matvec(H, {1.0})[0] == 7.0);
  CHECK(H.xi_at(0) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("field length mismatch is rejected") {
  const LatticeDomain dom = discretize(interval(0, 1), 0.1);
  PotentialField f;
  f.values = {1.0, 2.0};
  CHECK_THROWS_AS(assemble(dom, f, 0.1), DimensionMismatch);
  const Hamiltonian H = assemble(dom, zero_field(dom), 0.1);
  CHECK_THROWS_AS(matvec(H, {1.0}), DimensionMismatch);
}

TEST_CASE("matvec agrees with the dense mirror and is symmetric") {
  const LatticeDomain dom = discretize(interval(0, 1), 1.0 / 52.0);
  REQUIRE(dom.size() == 49);
  const Hamiltonian H = assemble(dom, random_field(dom, 11, -1.0, 1.0), dom.eps());

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(H.n, H.n);
  for (int i = 0; i < H.n; ++i) A(i, i) = H.diag[static_cast<std::size_t>(i)];
  for (const auto& e : H.edges) {
    A(e[0], e[1]) = H.offdiag;
    A(e[1], e[0]) = H.offdiag;
  }

  CounterRng rng(3);
  std::vector<double> u(static_cast<std::size_t>(H.n)), v(static_cast<std::size_t>(H.n));
  for (int i = 0; i < H.n; ++i) {
    u[static_cast<std::size_t>(i)] = rng.next_normal();
    v[static_cast<std::size_t>(i)] = rng.next_normal();
  }
  const std::vector<double> hv = matvec(H, v);
  const Eigen::VectorXd vv = Eigen::Map<const Eigen::VectorXd>(v.data(), H.n);
  const Eigen::VectorXd dense_hv = A * vv;
  for (int i = 0; i < H.n; ++i)
    CHECK(hv[static_cast<std::size_t>(i)] == doctest::Approx(dense_hv[i]).epsilon(1e-13));

  double uhv = 0.0, hu_v = 0.0;
  const std::vector<double> hu = matvec(H, u);
  for (int i = 0; i < H.n; ++i) {
    uhv += u[static_cast<std::size_t>(i)] * hv[static_cast<std::size_t>(i)];
    hu_v += hu[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
  }
  CHECK(std::abs(uhv - hu_v) <= 1e-12 * (1.0 + std::abs(uhv)));
}

TEST_CASE("kinetic energy of the zero function vanishes") {
  const LatticeDomain dom = discretize(interval(0, 1), 0.1);
  CHECK(kinetic_energy(dom, 0.1, std::vector<double>(7, 0.0)) == 0.0);
}

TEST_CASE("an isolated unit spike carries 2*dim units of kinetic energy") {
  for (int d = 1; d <= 3; ++d) {
    const LatticeDomain dom = discretize(cube(d), 0.25);
    REQUIRE(dom.size() == 1);
    CHECK(kinetic_energy(dom, 1.0, {1.0}) == doctest::Approx(2.0 * d).epsilon(1e-15));
  }
}

TEST_CASE("eigenvalue identity lambda = T + <xi, g^2>") {
  for (int d : {1, 2}) {
    const double eps = (d == 1) ? 1.0 / 40.0 : 1.0 / 12.0;
    const LatticeDomain dom = discretize(cube(d), eps);
    const PotentialField field = random_field(dom, 99, -1.0, 1.0);
    const Hamiltonian H = assemble(dom, field, eps);
    const EigenResult res = lowest_eigenpairs(H, 3, 1e-10);
    for (int k = 0; k < 3; ++k) {
      const std::vector<double> g(res.vectors[static_cast<std::size_t>(k)].data(),
                                  res.vectors[static_cast<std::size_t>(k)].data() + H.n);
      const double T = kinetic_energy(dom, eps, g);
      long double pot = 0.0L;
      for (int i = 0; i < H.n; ++i)
        pot += static_cast<long double>(field.values[static_cast<std::size_t>(i)]) *
               g[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(i)];
      const double lambda = res.eigenvalues[static_cast<std::size_t>(k)];
      CHECK(std::abs(lambda - T - static_cast<double>(pot)) <=
            1e-10 * (1.0 + std::abs(lambda)));
    }
  }
}

TEST_CASE("quadratic form dominates min xi times the squared norm") {
  const LatticeDomain dom = discretize(interval(0, 1), 1.0 / 30.0);
  const PotentialField field = random_field(dom, 5, -2.0, 0.5);
  const Hamiltonian H = assemble(dom, field, dom.eps());
  CounterRng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> f(static_cast<std::size_t>(H.n));
    double norm_sq = 0.0;
    for (auto& v : f) {
      v = rng.next_normal();
      norm_sq += v * v;
    }
    CHECK(quadratic_form(H, f) >= H.min_xi() * norm_sq - 1e-9);
  }
}

TEST_CASE("uniformly bounded potentials move eigenvalues by at most the bound") {
  const LatticeDomain dom = discretize(interval(0, 1), 1.0 / 24.0);
  const double a = -0.7, b = 1.3;
  const Hamiltonian H0 = assemble(dom, zero_field(dom), dom.eps());
  const double bound = std::max(std::abs(a), std::abs(b));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Hamiltonian H = assemble(dom, random_field(dom, seed, a, b), dom.eps());
    for (int k = 1; k <= 4; ++k) {
      const double with = lowest_eigenpairs(H, k, 1e-10).eigenvalues.back();
      const double without = lowest_eigenpairs(H0, k, 1e-10).eigenvalues.back();
      CHECK(std::abs(with - without) <= bound + 1e-9);
    }
  }
}

TEST_CASE("coordinate sparse export") {
  const LatticeDomain dom = discretize(interval(0, 1), 0.2);
  const Hamiltonian H = assemble(dom, zero_field(dom), 1.0);
  const std::string path = (std::filesystem::temp_directory_path() / "anderlab_h.coo").string();
  H.write_coo(path);
  CHECK(std::filesystem::file_size(path) > 0);
  std::filesystem::remove(path);
}

}  // TEST_SUITE
