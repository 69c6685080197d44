#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <filesystem>

#include "anderlab/reference.hpp"

using namespace anderlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

ShapeSpec interval01() {
  ShapeSpec s;
  s.dim = 1;
  s.boxes.push_back({{0, 0, 0}, {1, 0, 0}});
  return s;
}

ShapeSpec square01() {
  ShapeSpec s;
  s.dim = 2;
  s.boxes.push_back({{0, 0, 0}, {1, 1, 0}});
  return s;
}

}  // namespace

TEST_SUITE("reference") {

TEST_CASE("interval ground state converges to pi squared") {
  const ContinuumSpectrum spec =
      homogenized_spectrum(interval01(), ProfileFn::constant_fn(0.0), 2, 1.0 / 128.0);
  CHECK(std::abs(spec.eigenvalues[0] - kPi * kPi) < 1e-3 * kPi * kPi);
  CHECK(std::abs(spec.eigenvalues[1] - 4.0 * kPi * kPi) < 4e-3 * kPi * kPi);
  // Unit L^2 normalization of the stored eigenfunction samples.
  const double cell = std::pow(spec.grid.eps(), spec.grid.dim());
  long double norm = 0.0L;
  for (int i = 0; i < spec.grid.size(); ++i)
    norm += static_cast<long double>(spec.eigenfunctions[0][i]) * spec.eigenfunctions[0][i];
  CHECK(std::abs(static_cast<double>(norm) * cell - 1.0) < 1e-8);
}

TEST_CASE("constant potentials shift every eigenvalue exactly") {
  const double c = 3.7;
  const ContinuumSpectrum base =
      homogenized_spectrum(interval01(), ProfileFn::constant_fn(0.0), 3, 1.0 / 64.0);
  const ContinuumSpectrum shifted =
      homogenized_spectrum(interval01(), ProfileFn::constant_fn(c), 3, 1.0 / 64.0);
  for (int k = 0; k < 3; ++k)
    CHECK(shifted.eigenvalues[static_cast<std::size_t>(k)] ==
          doctest::Approx(base.eigenvalues[static_cast<std::size_t>(k)] + c).epsilon(1e-12));
}

TEST_CASE("square ground state converges to two pi squared") {
  const ContinuumSpectrum spec =
      homogenized_spectrum(square01(), ProfileFn::constant_fn(0.0), 1, 1.0 / 32.0);
  CHECK(std::abs(spec.eigenvalues[0] - 2.0 * kPi * kPi) < 1e-2 * 2.0 * kPi * kPi);
}

TEST_CASE("cube ground state approaches three pi squared") {
  ShapeSpec cube;
  cube.dim = 3;
  cube.boxes.push_back({{0, 0, 0}, {1, 1, 1}});
  // Both grids exceed the dense cutoff, so this drives the shift-invert
  // solver in three dimensions.
  const ContinuumSpectrum spec =
      homogenized_spectrum(cube, ProfileFn::constant_fn(0.0), 2, 1.0 / 16.0);
  const double target = 3.0 * kPi * kPi;
  CHECK(std::abs(spec.eigenvalues[0] - target) < 0.05 * target);
  // The squared-eigenfunction integral factorizes to (3/2)^3.
  const Eigen::MatrixXd cov = covariance_prediction(spec, ProfileFn::constant_fn(1.0), {1});
  CHECK(std::abs(cov(0, 0) - 3.375) < 0.10 * 3.375);
}

TEST_CASE("potentials move limit eigenvalues by at most their sup norm") {
  ProfileFn U = ProfileFn::polynomial_fn(
      {{10.0, {1, 0, 0}}, {-10.0, {2, 0, 0}}});  // 10 x (1 - x), sup 2.5
  const ContinuumSpectrum with =
      homogenized_spectrum(interval01(), U, 3, 1.0 / 128.0);
  const ContinuumSpectrum without =
      homogenized_spectrum(interval01(), ProfileFn::constant_fn(0.0), 3, 1.0 / 128.0);
  for (int k = 0; k < 3; ++k)
    CHECK(std::abs(with.eigenvalues[static_cast<std::size_t>(k)] -
                   without.eigenvalues[static_cast<std::size_t>(k)]) <= 2.5 + 1e-6);
}

TEST_CASE("two-grid differences shrink consistently with the error model") {
  const ProfileFn U = ProfileFn::constant_fn(0.0);
  const ContinuumSpectrum a = homogenized_spectrum(interval01(), U, 1, 1.0 / 64.0);
  const ContinuumSpectrum b = homogenized_spectrum(interval01(), U, 1, 1.0 / 128.0);
  const double d1 = std::abs(a.eigenvalues_coarse[0] - a.eigenvalues_fine[0]);
  const double d2 = std::abs(b.eigenvalues_coarse[0] - b.eigenvalues_fine[0]);
  CHECK(d1 <= 4.0 * d2 + 1e-12);
}

TEST_CASE("interval covariance closed forms") {
  const ContinuumSpectrum spec =
      homogenized_spectrum(interval01(), ProfileFn::constant_fn(0.0), 3, 1.0 / 256.0);
  const Eigen::MatrixXd cov =
      covariance_prediction(spec, ProfileFn::constant_fn(1.0), {1, 2});
  // integral of (sqrt(2) sin(pi x))^4 = 3/2; the cross term integrates to 1.
  CHECK(std::abs(cov(0, 0) - 1.5) < 1e-3);
  CHECK(std::abs(cov(1, 1) - 1.5) < 1e-3);
  CHECK(std::abs(cov(0, 1) - 1.0) < 1e-3);
  CHECK(cov(0, 1) == cov(1, 0));

  // Linearity in the variance profile.
  const Eigen::MatrixXd scaled =
      covariance_prediction(spec, ProfileFn::constant_fn(2.5), {1, 2});
  CHECK(scaled(0, 0) == doctest::Approx(2.5 * cov(0, 0)).epsilon(1e-13));
  CHECK(scaled(0, 1) == doctest::Approx(2.5 * cov(0, 1)).epsilon(1e-13));

  // Positive semidefiniteness.
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  CHECK(es.eigenvalues().minCoeff() >= -1e-10);
}

TEST_CASE("degenerate square pair is refused") {
  const ContinuumSpectrum spec =
      homogenized_spectrum(square01(), ProfileFn::constant_fn(0.0), 3, 1.0 / 16.0);
  CHECK(limit_simple(spec, 1));
  CHECK_FALSE(limit_simple(spec, 2));
  CHECK_THROWS_AS(covariance_prediction(spec, ProfileFn::constant_fn(1.0), {2}),
                  DegenerateLimit);
}

TEST_CASE("coarse grids are rejected") {
  CHECK_THROWS_AS(homogenized_spectrum(interval01(), ProfileFn::constant_fn(0.0), 2, 0.2),
                  ResolutionTooCoarse);
}

TEST_CASE("eigenfunction samples reproduce grid values and support points") {
  const ContinuumSpectrum spec =
      homogenized_spectrum(interval01(), ProfileFn::constant_fn(0.0), 1, 1.0 / 64.0);
  const std::vector<double> self = sample_eigenfunction(spec, 1, spec.grid);
  for (int i = 0; i < spec.grid.size(); ++i)
    CHECK(self[static_cast<std::size_t>(i)] ==
          doctest::Approx(spec.eigenfunctions[0][i]).epsilon(1e-12));

  // Against the exact interval eigenfunction sqrt(2) sin(pi x).
  const LatticeDomain coarse = discretize(interval01(), 1.0 / 16.0);
  const std::vector<double> at = sample_eigenfunction(spec, 1, coarse);
  for (int i = 0; i < coarse.size(); ++i) {
    const double x = coarse.position(i)[0];
    CHECK(std::abs(std::abs(at[static_cast<std::size_t>(i)]) -
                   std::sqrt(2.0) * std::sin(kPi * x)) < 0.1);
  }
}

TEST_CASE("persistence round-trips and the cache hits") {
  namespace fs = std::filesystem;
  const std::string dir = (fs::temp_directory_path() / "anderlab_ref_cache").string();
  fs::remove_all(dir);

  const ShapeSpec shape = interval01();
  const ProfileFn U = ProfileFn::constant_fn(1.0);
  const ContinuumSpectrum first = load_or_compute(dir, shape, U, 2, 1.0 / 64.0);
  const std::string key = reference_cache_key(shape, U, 2, 1.0 / 64.0);
  CHECK(fs::exists(dir + "/ref_" + key + ".json"));

  const ContinuumSpectrum second = load_or_compute(dir, shape, U, 2, 1.0 / 64.0);
  REQUIRE(second.k == first.k);
  for (int k = 0; k < first.k; ++k) {
    CHECK(second.eigenvalues[static_cast<std::size_t>(k)] == first.eigenvalues[static_cast<std::size_t>(k)]);
    CHECK((second.eigenfunctions[static_cast<std::size_t>(k)] -
           first.eigenfunctions[static_cast<std::size_t>(k)]).cwiseAbs().maxCoeff() == 0.0);
  }

  const ContinuumSpectrum loaded = load_spectrum(dir + "/ref_" + key + ".json");
  CHECK(loaded.eigenvalues == first.eigenvalues);
  fs::remove_all(dir);
}

}  // TEST_SUITE
