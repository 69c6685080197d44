#include "anderlab/reference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>

#include "anderlab/hamiltonian.hpp"
#include "anderlab/interp.hpp"
#include "anderlab/io.hpp"
#include "anderlab/spectral.hpp"

namespace anderlab {

namespace {

PotentialField deterministic_field(const LatticeDomain& dom, const ProfileFn& U) {
  PotentialField f;
  f.values.resize(static_cast<std::size_t>(dom.size()));
  for (int i = 0; i < dom.size(); ++i) f.values[static_cast<std::size_t>(i)] = U(dom.position(i));
  return f;
}

EigenResult solve_deterministic(const LatticeDomain& dom, const ProfileFn& U, int k) {
  const Hamiltonian H = assemble(dom, deterministic_field(dom, U), dom.eps());
  return lowest_eigenpairs(H, k, 1e-10);
}

}  // namespace

ContinuumSpectrum homogenized_spectrum(const ShapeSpec& shape, const ProfileFn& U,
                                       int k, double eps_ref) {
  shape.validate();
  if (k < 1) throw InvalidConfig("need k >= 1 reference eigenvalues");
  if (!(eps_ref > 0.0)) throw InvalidConfig("eps_ref must be positive");

  ContinuumSpectrum spec;
  spec.k = k;
  spec.eps_ref = eps_ref;
  spec.grid_coarse = discretize(shape, eps_ref);
  spec.grid = discretize(shape, eps_ref / 2.0);

  for (int a = 0; a < shape.dim; ++a) {
    int mn = std::numeric_limits<int>::max(), mx = std::numeric_limits<int>::min();
    for (const auto& s : spec.grid_coarse.sites()) {
      mn = std::min(mn, s[static_cast<std::size_t>(a)]);
      mx = std::max(mx, s[static_cast<std::size_t>(a)]);
    }
    if (mx - mn + 1 < 4 * k)
      throw ResolutionTooCoarse("coarse grid spans fewer than 4k sites along axis " +
                                std::to_string(a + 1));
  }
  if (k > spec.grid_coarse.size())
    throw ResolutionTooCoarse("coarse grid has fewer sites than requested eigenvalues");

  const EigenResult coarse = solve_deterministic(spec.grid_coarse, U, k);
  const EigenResult fine = solve_deterministic(spec.grid, U, k);

  spec.eigenvalues_coarse = coarse.eigenvalues;
  spec.eigenvalues_fine = fine.eigenvalues;
  spec.eigenvalues.resize(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j)
    spec.eigenvalues[static_cast<std::size_t>(j)] =
        2.0 * fine.eigenvalues[static_cast<std::size_t>(j)] - coarse.eigenvalues[static_cast<std::size_t>(j)];

  const double scale_fine = std::pow(eps_ref / 2.0, -0.5 * shape.dim);
  const double scale_coarse = std::pow(eps_ref, -0.5 * shape.dim);
  for (int j = 0; j < k; ++j) {
    spec.eigenfunctions.push_back(scale_fine * fine.vectors[static_cast<std::size_t>(j)]);
    spec.eigenfunctions_coarse.push_back(scale_coarse * coarse.vectors[static_cast<std::size_t>(j)]);
  }

  // Keep ascending order after extrapolation; pairs stay attached to the
  // fine-grid eigenfunctions (reordering only touches near-degenerate
  // indices which fail the simplicity check anyway).
  std::vector<int> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return spec.eigenvalues[static_cast<std::size_t>(a)] < spec.eigenvalues[static_cast<std::size_t>(b)];
  });
  ContinuumSpectrum sorted = spec;
  for (int j = 0; j < k; ++j) {
    const int o = order[static_cast<std::size_t>(j)];
    sorted.eigenvalues[static_cast<std::size_t>(j)] = spec.eigenvalues[static_cast<std::size_t>(o)];
    sorted.eigenvalues_coarse[static_cast<std::size_t>(j)] = spec.eigenvalues_coarse[static_cast<std::size_t>(o)];
    sorted.eigenvalues_fine[static_cast<std::size_t>(j)] = spec.eigenvalues_fine[static_cast<std::size_t>(o)];
    sorted.eigenfunctions[static_cast<std::size_t>(j)] = spec.eigenfunctions[static_cast<std::size_t>(o)];
    sorted.eigenfunctions_coarse[static_cast<std::size_t>(j)] = spec.eigenfunctions_coarse[static_cast<std::size_t>(o)];
  }
  return sorted;
}

bool limit_simple(const ContinuumSpectrum& spec, int k) {
  if (k < 1 || k >= spec.k)
    throw InvalidConfig("simplicity of index " + std::to_string(k) +
                        " needs the next eigenvalue; reference holds " + std::to_string(spec.k));
  const double lk = spec.eigenvalues[static_cast<std::size_t>(k - 1)];
  const double thr = simplicity_threshold(lk);
  const double below = (k >= 2) ? lk - spec.eigenvalues[static_cast<std::size_t>(k - 2)]
                                : std::numeric_limits<double>::infinity();
  const double above = spec.eigenvalues[static_cast<std::size_t>(k)] - lk;
  return below > thr && above > thr;
}

Eigen::MatrixXd covariance_prediction(const ContinuumSpectrum& spec, const ProfileFn& V,
                                      const std::vector<int>& indices) {
  const int m = static_cast<int>(indices.size());
  for (int k : indices) {
    if (!limit_simple(spec, k))
      throw DegenerateLimit("limit eigenvalues (" + std::to_string(k) + "," +
                            std::to_string(k + 1) + ") are too close for a CLT prediction");
  }

  auto quadrature = [&](const LatticeDomain& grid,
                        const std::vector<Eigen::VectorXd>& funcs, int ki, int kj) {
    const double cell = std::pow(grid.eps(), grid.dim());
    long double acc = 0.0L;
    const auto& fi = funcs[static_cast<std::size_t>(ki - 1)];
    const auto& fj = funcs[static_cast<std::size_t>(kj - 1)];
    for (int s = 0; s < grid.size(); ++s) {
      const double vi = fi[s] * fi[s];
      const double vj = fj[s] * fj[s];
      acc += static_cast<long double>(V(grid.position(s))) * vi * vj;
    }
    return cell * static_cast<double>(acc);
  };

  Eigen::MatrixXd out(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) {
      const double fine = quadrature(spec.grid, spec.eigenfunctions, indices[static_cast<std::size_t>(a)],
                                     indices[static_cast<std::size_t>(b)]);
      const double coarse = quadrature(spec.grid_coarse, spec.eigenfunctions_coarse,
                                       indices[static_cast<std::size_t>(a)], indices[static_cast<std::size_t>(b)]);
      out(a, b) = out(b, a) = 2.0 * fine - coarse;
    }
  return out;
}

std::vector<double> sample_eigenfunction(const ContinuumSpectrum& spec, int k,
                                         const LatticeDomain& target) {
  if (k < 1 || k > spec.k) throw InvalidConfig("eigenfunction index out of range");
  const auto& phi = spec.eigenfunctions[static_cast<std::size_t>(k - 1)];
  std::vector<double> values(static_cast<std::size_t>(spec.grid.size()));
  for (int i = 0; i < spec.grid.size(); ++i) values[static_cast<std::size_t>(i)] = phi[i];
  const Interpolant itp(LatticeFunction::on_domain(spec.grid, values));
  std::vector<double> out(static_cast<std::size_t>(target.size()));
  for (int i = 0; i < target.size(); ++i) out[static_cast<std::size_t>(i)] = itp(target.position(i));
  return out;
}

std::string reference_cache_key(const ShapeSpec& shape, const ProfileFn& U, int k,
                                double eps_ref) {
  nlohmann::ordered_json j;
  j["shape"] = shape_to_json(shape);
  j["U"] = profile_to_json(U);
  j["k"] = k;
  j["eps_ref"] = eps_ref;
  return hex64(fnv1a64(j.dump()));
}

void save_spectrum(const ContinuumSpectrum& spec, const std::string& json_path) {
  throw_unless_parent_exists(json_path);
  const std::string data_path = json_path.substr(0, json_path.rfind('.')) + ".f64";

  nlohmann::ordered_json j;
  j["kind"] = "continuum-spectrum";
  j["k"] = spec.k;
  j["eps_ref"] = spec.eps_ref;
  j["eigenvalues"] = spec.eigenvalues;
  j["eigenvalues_coarse"] = spec.eigenvalues_coarse;
  j["eigenvalues_fine"] = spec.eigenvalues_fine;
  j["fine_sites"] = spec.grid.size();
  j["coarse_sites"] = spec.grid_coarse.size();
  j["fine_eps"] = spec.grid.eps();
  j["data_file"] = std::filesystem::path(data_path).filename().string();
  write_text_file(json_path, j.dump(2) + "\n");

  std::ofstream out(data_path, std::ios::binary);
  if (!out) throw Error("cannot open " + data_path + " for writing");
  auto dump = [&](const std::vector<Eigen::VectorXd>& fns) {
    for (const auto& f : fns)
      out.write(reinterpret_cast<const char*>(f.data()),
                static_cast<std::streamsize>(sizeof(double)) * f.size());
  };
  dump(spec.eigenfunctions);
  dump(spec.eigenfunctions_coarse);
}

namespace {

ContinuumSpectrum load_with_grids(const std::string& json_path, const ShapeSpec& shape) {
  const nlohmann::ordered_json j = nlohmann::ordered_json::parse(read_text_file(json_path));
  ContinuumSpectrum spec;
  spec.k = j.at("k").get<int>();
  spec.eps_ref = j.at("eps_ref").get<double>();
  spec.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
  spec.eigenvalues_coarse = j.at("eigenvalues_coarse").get<std::vector<double>>();
  spec.eigenvalues_fine = j.at("eigenvalues_fine").get<std::vector<double>>();
  spec.grid = discretize(shape, spec.eps_ref / 2.0);
  spec.grid_coarse = discretize(shape, spec.eps_ref);
  if (spec.grid.size() != j.at("fine_sites").get<int>() ||
      spec.grid_coarse.size() != j.at("coarse_sites").get<int>())
    throw InvalidConfig("cached spectrum does not match the requested shape");

  const std::string data_path =
      (std::filesystem::path(json_path).parent_path() / j.at("data_file").get<std::string>())
          .string();
  std::ifstream in(data_path, std::ios::binary);
  if (!in) throw Error("cannot open " + data_path);
  auto slurp = [&](std::vector<Eigen::VectorXd>& fns, int n) {
    fns.resize(static_cast<std::size_t>(spec.k));
    for (auto& f : fns) {
      f.resize(n);
      in.read(reinterpret_cast<char*>(f.data()), static_cast<std::streamsize>(sizeof(double)) * n);
    }
  };
  slurp(spec.eigenfunctions, spec.grid.size());
  slurp(spec.eigenfunctions_coarse, spec.grid_coarse.size());
  if (!in) throw Error("truncated eigenfunction data in " + data_path);
  return spec;
}

}  // namespace

ContinuumSpectrum load_spectrum(const std::string& json_path) {
  const nlohmann::ordered_json j = nlohmann::ordered_json::parse(read_text_file(json_path));
  if (!j.contains("shape")) throw InvalidConfig("spectrum file lacks an embedded shape");
  return load_with_grids(json_path, shape_from_json(j.at("shape")));
}

ContinuumSpectrum load_or_compute(const std::string& cache_dir, const ShapeSpec& shape,
                                  const ProfileFn& U, int k, double eps_ref) {
  if (cache_dir.empty()) return homogenized_spectrum(shape, U, k, eps_ref);
  std::filesystem::create_directories(cache_dir);
  const std::string key = reference_cache_key(shape, U, k, eps_ref);
  const std::string path = cache_dir + "/ref_" + key + ".json";
  if (std::filesystem::exists(path)) return load_with_grids(path, shape);

  ContinuumSpectrum spec = homogenized_spectrum(shape, U, k, eps_ref);
  save_spectrum(spec, path);
  // Stamp the producing inputs into the cached file for standalone loads.
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(read_text_file(path));
  j["shape"] = shape_to_json(shape);
  j["U"] = profile_to_json(U);
  j["cache_key"] = key;
  write_text_file(path, j.dump(2) + "\n");
  return spec;
}

}  // namespace anderlab
