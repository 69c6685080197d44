#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "anderlab/io.hpp"

using namespace anderlab;
namespace fs = std::filesystem;

namespace {

const std::string kBin = ANDERLAB_CLI_PATH;

int run(const std::string& args) {
  const std::string cmd = kBin + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string scratch_dir() {
  const std::string dir = (fs::temp_directory_path() / "anderlab_cli").string();
  fs::create_directories(dir);
  return dir;
}

ojson interval_shape() {
  ojson shape;
  shape["dim"] = 1;
  shape["boxes"] = ojson::array({ojson::array(
      {ojson::array({0.0}), ojson::array({1.0})})});
  return shape;
}

ojson two_point_potential() {
  ojson pot;
  pot["family"] = "two-point";
  pot["U"] = {{"kind", "constant"}, {"value", 0.0}};
  pot["V"] = {{"kind", "constant"}, {"value", 1.0}};
  pot["a"] = -1.0;
  pot["b"] = 1.0;
  return pot;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("wire formats match the documented schemas") {
  ShapeSpec shape;
  shape.dim = 1;
  shape.boxes.push_back({{0, 0, 0}, {1, 0, 0}});
  CHECK(shape_to_json(shape).dump() == R"({"dim":1,"boxes":[[[0.0],[1.0]]]})");

  PotentialSpec pot;
  pot.family = Family::TwoPoint;
  pot.U = ProfileFn::constant_fn(0.0);
  pot.V = ProfileFn::constant_fn(1.0);
  pot.a = -1.0;
  pot.b = 1.0;
  CHECK(potential_to_json(pot).dump() ==
        R"({"family":"two-point","U":{"kind":"constant","value":0.0},)"
        R"("V":{"kind":"constant","value":1.0},"a":-1.0,"b":1.0})");

  // Round trips preserve the sampling law exactly.
  const PotentialSpec back = potential_from_json(potential_to_json(pot));
  CHECK(back.hash() == pot.hash());
  const ShapeSpec shape_back = shape_from_json(shape_to_json(shape));
  CHECK(shape_back.dim == shape.dim);
  CHECK(shape_back.boxes[0].hi[0] == shape.boxes[0].hi[0]);
}

TEST_CASE("usage errors exit with one") {
  CHECK(run("no-such-verb") == 1);
  CHECK(run("solve") == 1);  // missing --config
}

TEST_CASE("solve emits a solution file") {
  const std::string dir = scratch_dir();
  ojson cfg;
  cfg["shape"] = interval_shape();
  cfg["potential"] = two_point_potential();
  cfg["eps"] = 1.0 / 16.0;
  cfg["seed"] = 11;
  cfg["k"] = 3;
  const std::string cfg_path = dir + "/one_instance.json";
  write_text_file(cfg_path, cfg.dump(2));

  CHECK(run("solve --config " + cfg_path + " --out " + dir + "/solve") == 0);
  const ojson out = ojson::parse(read_text_file(dir + "/solve/solution.json"));
  CHECK(out.at("eigenvalues").size() == 3);
  CHECK(fs::exists(dir + "/solve/manifest.json"));
}

TEST_CASE("discretize writes the site list") {
  const std::string dir = scratch_dir();
  ojson cfg;
  cfg["shape"] = interval_shape();
  cfg["eps"] = 0.1;
  write_text_file(dir + "/shape.json", cfg.dump(2));
  CHECK(run("discretize --config " + dir + "/shape.json --out " + dir + "/disc") == 0);
  CHECK(fs::exists(dir + "/disc/sites.csv"));
}

TEST_CASE("oracle reports vanishing residuals") {
  const std::string dir = scratch_dir();
  ojson cfg;
  cfg["shape"] = interval_shape();
  cfg["potential"] = two_point_potential();
  cfg["eps"] = 1.0 / 9.0;  // six sites
  cfg["k"] = 1;
  write_text_file(dir + "/tiny.json", cfg.dump(2));
  CHECK(run("oracle --config " + dir + "/tiny.json --out " + dir + "/oracle") == 0);
  const ojson rep = ojson::parse(read_text_file(dir + "/oracle/oracle.json"));
  CHECK(rep.at("max_telescoping_residual").get<double>() <= 1e-12);
  CHECK(rep.at("max_orthogonality_residual").get<double>() <= 1e-12);
}

TEST_CASE("infeasible potentials exit with three") {
  const std::string dir = scratch_dir();
  ojson cfg;
  cfg["shape"] = interval_shape();
  cfg["potential"] = two_point_potential();
  cfg["potential"]["V"]["value"] = 4.0;  // needs support +-2 inside [-1,1]
  cfg["eps"] = 0.1;
  cfg["seed"] = 1;
  cfg["k"] = 1;
  write_text_file(dir + "/bad.json", cfg.dump(2));
  CHECK(run("solve --config " + dir + "/bad.json --out " + dir + "/bad") == 3);
}

TEST_CASE("campaign outputs are byte-identical across reruns and thread counts") {
  const std::string dir = scratch_dir();
  ojson cfg;
  cfg["shape"] = interval_shape();
  cfg["potential"] = two_point_potential();
  cfg["eps_ladder"] = ojson::array({0.125, 0.0625});
  cfg["k_indices"] = ojson::array({1});
  cfg["realizations"] = 40;
  cfg["seed"] = 321;
  cfg["eps_ref"] = 1.0 / 64.0;
  write_text_file(dir + "/camp.json", cfg.dump(2));

  fs::remove_all(dir + "/run1");
  fs::remove_all(dir + "/run2");
  CHECK(run("campaign --config " + dir + "/camp.json --out " + dir + "/run1 --threads 1") == 0);
  CHECK(run("campaign --config " + dir + "/camp.json --out " + dir + "/run2 --threads 2") == 0);

  for (const char* name : {"/samples_eps_0.csv", "/samples_eps_1.csv"}) {
    const std::string a = read_text_file(dir + "/run1" + name);
    const std::string b = read_text_file(dir + "/run2" + name);
    CHECK(!a.empty());
    CHECK(a == b);
  }

  // The campaign itself already rendered plots alongside the CSVs.
  CHECK(fs::exists(dir + "/run2/report_hist_k1.svg"));

  // report re-renders plots from the stored outputs.
  CHECK(run("report --out " + dir + "/run1") == 0);
  CHECK(fs::exists(dir + "/run1/report_ladder.svg"));
  CHECK(fs::exists(dir + "/run1/report_hist_k1.svg"));
  const std::string svg = read_text_file(dir + "/run1/report_hist_k1.svg");
  CHECK(svg.rfind("<svg", 0) == 0);
}

TEST_CASE("failed Gaussianity diagnostics exit with two") {
  // A two-site lattice puts four atoms under the empirical law, which no
  // normal fit survives at a thousand realizations.
  const std::string dir = scratch_dir();
  ojson cfg;
  cfg["shape"] = interval_shape();
  cfg["potential"] = two_point_potential();
  cfg["eps_ladder"] = ojson::array({0.2});
  cfg["k_indices"] = ojson::array({1});
  cfg["realizations"] = 1000;
  cfg["seed"] = 5;
  cfg["eps_ref"] = 1.0 / 64.0;
  write_text_file(dir + "/atoms.json", cfg.dump(2));
  CHECK(run("campaign --config " + dir + "/atoms.json --out " + dir + "/atoms") == 2);
}

TEST_CASE("reference prints and caches the benchmark") {
  const std::string dir = scratch_dir();
  ojson cfg;
  cfg["shape"] = interval_shape();
  cfg["U"] = {{"kind", "constant"}, {"value", 0.0}};
  cfg["k"] = 1;
  cfg["eps_ref"] = 1.0 / 64.0;
  write_text_file(dir + "/ref.json", cfg.dump(2));
  CHECK(run("reference --config " + dir + "/ref.json --out " + dir + "/ref") == 0);
  bool found = false;
  for (const auto& entry : fs::directory_iterator(dir + "/ref"))
    if (entry.path().filename().string().rfind("ref_", 0) == 0) found = true;
  CHECK(found);
}

}  // TEST_SUITE
