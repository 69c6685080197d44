#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "anderlab/experiments.hpp"
#include "anderlab/hamiltonian.hpp"
#include "anderlab/io.hpp"
#include "anderlab/reference.hpp"
#include "anderlab/spectral.hpp"
#include "anderlab/stats.hpp"
#include "anderlab/svg.hpp"

namespace {

using namespace anderlab;

struct Overrides {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int realizations = 0;
  std::vector<double> eps;
  int threads = 0;
};

ojson load_config(const std::string& path) {
  return ojson::parse(read_text_file(path));
}

void render_report_files(const std::string& out_dir);

void write_manifest(const std::string& out_dir, const ojson& resolved, std::uint64_t seed) {
  std::filesystem::create_directories(out_dir);
  ojson manifest;
  manifest["version"] = "anderlab 0.1.0";
  manifest["config_hash"] = hex64(fnv1a64(resolved.dump()));
  manifest["seed"] = seed;
  manifest["config"] = resolved;
  write_text_file(out_dir + "/manifest.json", manifest.dump(2) + "\n");
}

int cmd_discretize(const Overrides& o) {
  ojson j = load_config(o.config_path);
  const ShapeSpec shape = shape_from_json(j.at("shape"));
  double eps = j.at("eps").get<double>();
  if (!o.eps.empty()) eps = o.eps.front();
  j["eps"] = eps;

  const LatticeDomain dom = discretize(shape, eps);
  std::filesystem::create_directories(o.out_dir);
  dom.write_sites_csv(o.out_dir + "/sites.csv");
  write_manifest(o.out_dir, j, 0);
  std::printf("discretized %d sites (dim %d, eps %.9g) -> %s/sites.csv\n", dom.size(),
              dom.dim(), eps, o.out_dir.c_str());
  return 0;
}

int cmd_solve(const Overrides& o) {
  ojson j = load_config(o.config_path);
  const ShapeSpec shape = shape_from_json(j.at("shape"));
  const PotentialSpec potential = potential_from_json(j.at("potential"));
  double eps = j.at("eps").get<double>();
  if (!o.eps.empty()) eps = o.eps.front();
  std::uint64_t seed = j.value("seed", 0ULL);
  if (o.seed_set) seed = o.seed;
  const int k = j.at("k").get<int>();
  const double tol = j.value("tol", 1e-9);
  j["eps"] = eps;
  j["seed"] = seed;

  const LatticeDomain dom = discretize(shape, eps);
  const PotentialField field = sample(potential, dom, seed);
  const Hamiltonian H = assemble(dom, field, eps);
  const EigenResult res = lowest_eigenpairs(H, k, tol);

  std::filesystem::create_directories(o.out_dir);
  ojson out = eigen_result_to_json(res, j.value("include_vectors", false));
  out["eps"] = eps;
  out["seed"] = seed;
  out["n_sites"] = dom.size();
  write_text_file(o.out_dir + "/solution.json", out.dump(2) + "\n");
  write_manifest(o.out_dir, j, seed);
  std::printf("%s\n", out.dump(2).c_str());
  return 0;
}

int cmd_reference(const Overrides& o) {
  ojson j = load_config(o.config_path);
  const ShapeSpec shape = shape_from_json(j.at("shape"));
  const ProfileFn U = profile_from_json(j.at("U"));
  const int k = j.at("k").get<int>();
  const double eps_ref = j.at("eps_ref").get<double>();

  std::filesystem::create_directories(o.out_dir);
  const ContinuumSpectrum spec = load_or_compute(o.out_dir, shape, U, k, eps_ref);
  write_manifest(o.out_dir, j, 0);
  std::printf("reference eigenvalues (eps_ref %.9g):\n", eps_ref);
  for (int i = 0; i < spec.k; ++i)
    std::printf("  lambda_%d = %.12g\n", i + 1, spec.eigenvalues[static_cast<std::size_t>(i)]);
  return 0;
}

int cmd_campaign(const Overrides& o) {
  ojson j = load_config(o.config_path);
  ExperimentConfig config = config_from_json(j);
  if (o.seed_set) config.seed = o.seed;
  if (o.realizations > 0) config.realizations = o.realizations;
  if (!o.eps.empty()) config.eps_ladder = o.eps;
  if (!o.out_dir.empty()) config.out_dir = o.out_dir;
  if (config.out_dir.empty()) config.out_dir = "out";
  if (o.threads > 0) config.threads = o.threads;

  const ojson resolved = config_to_json(config);
  std::printf("campaign config hash %s, seed %llu, %d realizations, %zu rungs\n",
              hex64(fnv1a64(resolved.dump())).c_str(),
              static_cast<unsigned long long>(config.seed), config.realizations,
              config.eps_ladder.size());

  const std::vector<FluctuationStats> stats = run_campaign(config);
  write_campaign_outputs(config, stats);
  render_report_files(config.out_dir);
  std::printf("campaign complete: %zu rungs -> %s\n", stats.size(), config.out_dir.c_str());

  // Gaussianity verdict on the finest rung, when the sample size allows.
  try {
    const CltVerdict verdict = clt_diagnostics(stats.back());
    std::string text;
    for (const auto& note : verdict.notes) text += note + "\n";
    write_text_file(config.out_dir + "/diagnostics.txt", text);
    std::printf("%s", text.c_str());
    if (!verdict.pass) {
      std::printf("diagnostics: FAIL\n");
      return 2;
    }
    std::printf("diagnostics: pass%s\n", verdict.degenerate ? " (degenerate law)" : "");
  } catch (const InsufficientSamples&) {
    std::printf("diagnostics skipped: too few realizations\n");
  }
  return 0;
}

int cmd_oracle(const Overrides& o) {
  ojson j = load_config(o.config_path);
  const ShapeSpec shape = shape_from_json(j.at("shape"));
  const PotentialSpec potential = potential_from_json(j.at("potential"));
  const double eps = j.at("eps").get<double>();
  const int k = j.value("k", 1);

  const LatticeDomain dom = discretize(shape, eps);
  const OracleReport rep = exact_oracle(potential, dom, k);
  std::filesystem::create_directories(o.out_dir);
  write_text_file(o.out_dir + "/oracle.json", oracle_report_to_json(rep).dump(2) + "\n");
  write_manifest(o.out_dir, j, 0);
  std::printf("%s\n", oracle_report_to_json(rep).dump(2).c_str());
  return 0;
}

void render_report_files(const std::string& out_dir) {
  const ojson summary = ojson::parse(read_text_file(out_dir + "/summary.json"));
  const auto& rungs = summary.at("rungs");
  if (rungs.empty()) throw InvalidConfig("summary has no rungs");

  // Ladder plot: variance of the first requested index across rungs.
  std::vector<double> eps_list, var_list;
  for (const auto& r : rungs) {
    eps_list.push_back(r.at("eps").get<double>());
    var_list.push_back(r.at("covariance").at(0).at(0).get<double>());
  }
  write_ladder_svg(out_dir + "/report_ladder.svg", eps_list, var_list,
                   "scaled variance vs lattice scale");

  // Histograms from the finest rung's raw samples.
  const std::size_t last = rungs.size() - 1;
  const auto& rung = rungs.at(last);
  const double eps = rung.at("eps").get<double>();
  const int dim = rung.at("dim").get<int>();
  const std::vector<int> ks = rung.at("k_indices").get<std::vector<int>>();
  const std::vector<double> means = rung.at("mean_lambda").get<std::vector<double>>();

  std::ifstream csv(out_dir + "/samples_eps_" + std::to_string(last) + ".csv");
  if (!csv) throw Error("missing samples CSV for the finest rung");
  std::string line;
  std::getline(csv, line);  // header
  std::vector<std::vector<double>> samples(ks.size());
  while (std::getline(csv, line)) {
    std::istringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');
    std::getline(ss, cell, ',');
    const int k = std::stoi(cell);
    std::getline(ss, cell, ',');
    const double lambda = std::stod(cell);
    for (std::size_t a = 0; a < ks.size(); ++a)
      if (ks[a] == k) samples[a].push_back(lambda);
  }

  const double scale = std::pow(eps, -0.5 * dim);
  for (std::size_t a = 0; a < ks.size(); ++a) {
    std::vector<double> scaled(samples[a].size());
    for (std::size_t i = 0; i < scaled.size(); ++i)
      scaled[i] = scale * (samples[a][i] - means[a]);
    const double sigma =
        std::sqrt(std::max(0.0, rung.at("predicted_covariance").at(a).at(a).get<double>()));
    write_histogram_svg(out_dir + "/report_hist_k" + std::to_string(ks[a]) + ".svg", scaled,
                        sigma, "scaled fluctuations, index " + std::to_string(ks[a]));
  }
}

int cmd_report(const Overrides& o) {
  render_report_files(o.out_dir);
  std::printf("report written to %s\n", o.out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anderlab: lattice Anderson Hamiltonian spectral laboratory"};
  app.require_subcommand(1);

  Overrides o;
  o.out_dir = "out";

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    if (needs_config)
      sub->add_option("--config", o.config_path, "JSON config file")->required();
    sub->add_option("--out", o.out_dir, "output directory");
    sub->add_option("--seed", o.seed, "master seed override")->each([&](const std::string&) {
      o.seed_set = true;
    });
    sub->add_option("--realizations", o.realizations, "realization count override");
    sub->add_option("--eps", o.eps, "lattice scale override (repeatable)");
    sub->add_option("--threads", o.threads, "worker thread count");
  };

  CLI::App* discretize_cmd = app.add_subcommand("discretize", "build a lattice domain");
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve one sampled realization");
  CLI::App* reference_cmd = app.add_subcommand("reference", "compute the continuum benchmark");
  CLI::App* campaign_cmd = app.add_subcommand("campaign", "run a Monte Carlo campaign");
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "exact small-instance enumeration");
  CLI::App* report_cmd = app.add_subcommand("report", "render plots from campaign outputs");
  add_common(discretize_cmd, true);
  add_common(solve_cmd, true);
  add_common(reference_cmd, true);
  add_common(campaign_cmd, true);
  add_common(oracle_cmd, true);
  add_common(report_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (discretize_cmd->parsed()) return cmd_discretize(o);
    if (solve_cmd->parsed()) return cmd_solve(o);
    if (reference_cmd->parsed()) return cmd_reference(o);
    if (campaign_cmd->parsed()) return cmd_campaign(o);
    if (oracle_cmd->parsed()) return cmd_oracle(o);
    if (report_cmd->parsed()) return cmd_report(o);
  } catch (const InfeasibleSpec& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return 3;
  } catch (const DegenerateLimit& e) {
    std::fprintf(stderr, "degenerate: %s\n", e.what());
    return 3;
  } catch (const EmptyDomain& e) {
    std::fprintf(stderr, "degenerate: %s\n", e.what());
    return 3;
  } catch (const ResolutionTooCoarse& e) {
    std::fprintf(stderr, "degenerate: %s\n", e.what());
    return 3;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
