#include "anderlab/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace anderlab {

ojson shape_to_json(const ShapeSpec& shape) {
  ojson j;
  j["dim"] = shape.dim;
  ojson boxes = ojson::array();
  for (const auto& b : shape.boxes) {
    ojson lo = ojson::array(), hi = ojson::array();
    for (int a = 0; a < shape.dim; ++a) {
      lo.push_back(b.lo[static_cast<std::size_t>(a)]);
      hi.push_back(b.hi[static_cast<std::size_t>(a)]);
    }
    boxes.push_back(ojson::array({lo, hi}));
  }
  j["boxes"] = boxes;
  return j;
}

ShapeSpec shape_from_json(const ojson& j) {
  ShapeSpec shape;
  shape.dim = j.at("dim").get<int>();
  for (const auto& jb : j.at("boxes")) {
    BoxSpec b;
    const auto lo = jb.at(0);
    const auto hi = jb.at(1);
    for (int a = 0; a < shape.dim; ++a) {
      b.lo[static_cast<std::size_t>(a)] = lo.at(static_cast<std::size_t>(a)).get<double>();
      b.hi[static_cast<std::size_t>(a)] = hi.at(static_cast<std::size_t>(a)).get<double>();
    }
    shape.boxes.push_back(b);
  }
  shape.validate();
  return shape;
}

ojson profile_to_json(const ProfileFn& f) {
  ojson j;
  switch (f.kind) {
    case ProfileFn::Kind::Constant:
      j["kind"] = "constant";
      j["value"] = f.constant;
      break;
    case ProfileFn::Kind::Polynomial: {
      j["kind"] = "polynomial";
      ojson terms = ojson::array();
      for (const auto& m : f.monomials) {
        ojson t;
        t["coeff"] = m.coeff;
        ojson pw = ojson::array();
        for (int p : m.powers) pw.push_back(p);
        t["powers"] = pw;
        terms.push_back(t);
      }
      j["terms"] = terms;
      break;
    }
    case ProfileFn::Kind::Trigonometric: {
      j["kind"] = "trigonometric";
      j["offset"] = f.wave_offset;
      ojson terms = ojson::array();
      for (const auto& w : f.waves) {
        ojson t;
        t["amplitude"] = w.amplitude;
        ojson fr = ojson::array();
        for (double q : w.frequency) fr.push_back(q);
        t["frequency"] = fr;
        t["phase"] = w.phase;
        terms.push_back(t);
      }
      j["terms"] = terms;
      break;
    }
    case ProfileFn::Kind::Grid: {
      j["kind"] = "grid";
      ojson org = ojson::array();
      for (double o : f.grid.origin) org.push_back(o);
      j["origin"] = org;
      j["spacing"] = f.grid.spacing;
      ojson sh = ojson::array();
      for (int s : f.grid.shape) sh.push_back(s);
      j["shape"] = sh;
      j["values"] = f.grid.values;
      break;
    }
  }
  return j;
}

ProfileFn profile_from_json(const ojson& j) {
  ProfileFn f;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant") {
    f.kind = ProfileFn::Kind::Constant;
    f.constant = j.at("value").get<double>();
  } else if (kind == "polynomial") {
    f.kind = ProfileFn::Kind::Polynomial;
    for (const auto& t : j.at("terms")) {
      ProfileFn::Monomial m;
      m.coeff = t.at("coeff").get<double>();
      const auto& pw = t.at("powers");
      for (std::size_t a = 0; a < pw.size() && a < 3; ++a) m.powers[a] = pw.at(a).get<int>();
      f.monomials.push_back(m);
    }
  } else if (kind == "trigonometric") {
    f.kind = ProfileFn::Kind::Trigonometric;
    f.wave_offset = j.value("offset", 0.0);
    for (const auto& t : j.at("terms")) {
      ProfileFn::Wave w;
      w.amplitude = t.at("amplitude").get<double>();
      const auto& fr = t.at("frequency");
      for (std::size_t a = 0; a < fr.size() && a < 3; ++a) w.frequency[a] = fr.at(a).get<double>();
      w.phase = t.value("phase", 0.0);
      f.waves.push_back(w);
    }
  } else if (kind == "grid") {
    f.kind = ProfileFn::Kind::Grid;
    const auto& org = j.at("origin");
    for (std::size_t a = 0; a < org.size() && a < 3; ++a) f.grid.origin[a] = org.at(a).get<double>();
    f.grid.spacing = j.at("spacing").get<double>();
    const auto& sh = j.at("shape");
    for (std::size_t a = 0; a < sh.size() && a < 3; ++a) f.grid.shape[a] = sh.at(a).get<int>();
    f.grid.values = j.at("values").get<std::vector<double>>();
  } else {
    throw InvalidConfig("unknown profile kind: " + kind);
  }
  return f;
}

namespace {

std::string family_name(Family f) {
  switch (f) {
    case Family::TwoPoint: return "two-point";
    case Family::Uniform: return "uniform";
    case Family::BetaScaled: return "beta-scaled";
  }
  return "two-point";
}

Family family_from_name(const std::string& s) {
  if (s == "two-point") return Family::TwoPoint;
  if (s == "uniform") return Family::Uniform;
  if (s == "beta-scaled") return Family::BetaScaled;
  throw InvalidConfig("unknown potential family: " + s);
}

}  // namespace

ojson potential_to_json(const PotentialSpec& spec) {
  ojson j;
  j["family"] = family_name(spec.family);
  j["U"] = profile_to_json(spec.U);
  j["V"] = profile_to_json(spec.V);
  j["a"] = spec.a;
  j["b"] = spec.b;
  return j;
}

PotentialSpec potential_from_json(const ojson& j) {
  PotentialSpec spec;
  spec.family = family_from_name(j.at("family").get<std::string>());
  spec.U = profile_from_json(j.at("U"));
  spec.V = profile_from_json(j.at("V"));
  spec.a = j.at("a").get<double>();
  spec.b = j.at("b").get<double>();
  return spec;
}

ojson config_to_json(const ExperimentConfig& config) {
  ojson j;
  j["shape"] = shape_to_json(config.shape);
  j["potential"] = potential_to_json(config.potential);
  j["eps_ladder"] = config.eps_ladder;
  j["k_indices"] = config.k_indices;
  j["realizations"] = config.realizations;
  j["seed"] = config.seed;
  j["eps_ref"] = config.eps_ref;
  j["out_dir"] = config.out_dir;
  return j;
}

ExperimentConfig config_from_json(const ojson& j) {
  ExperimentConfig c;
  c.shape = shape_from_json(j.at("shape"));
  c.potential = potential_from_json(j.at("potential"));
  c.eps_ladder = j.at("eps_ladder").get<std::vector<double>>();
  c.k_indices = j.at("k_indices").get<std::vector<int>>();
  c.realizations = j.at("realizations").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.eps_ref = j.at("eps_ref").get<double>();
  c.out_dir = j.value("out_dir", std::string());
  c.threads = j.value("threads", 1);
  return c;
}

ojson eigen_result_to_json(const EigenResult& res, bool include_vectors) {
  ojson j;
  j["eigenvalues"] = res.eigenvalues;
  j["residuals"] = res.residuals;
  j["method"] = res.method;
  j["supnorm_constant"] = res.supnorm_constant;
  if (include_vectors) {
    ojson vecs = ojson::array();
    for (const auto& v : res.vectors) {
      std::vector<double> raw(v.data(), v.data() + v.size());
      vecs.push_back(raw);
    }
    j["vectors"] = vecs;
  }
  return j;
}

ojson stats_to_json(const FluctuationStats& s) {
  ojson j;
  j["eps"] = s.eps;
  j["dim"] = s.dim;
  j["n_sites"] = s.n_sites;
  j["k_indices"] = s.k_indices;
  j["realizations"] = s.realizations;
  j["failed"] = s.failed;
  j["mean_lambda"] = s.mean_lambda;
  j["covariance"] = s.covariance;
  j["predicted_covariance"] = s.predicted_covariance;
  ojson marg = ojson::array();
  for (const auto& m : s.marginals) {
    ojson e;
    e["skewness"] = m.skewness;
    e["excess_kurtosis"] = m.excess_kurtosis;
    e["ks_distance"] = m.ks_distance;
    e["degenerate"] = m.degenerate;
    marg.push_back(e);
  }
  j["marginals"] = marg;
  ojson tails = ojson::array();
  for (const auto& t : s.tails) {
    ojson e;
    e["t"] = t.t;
    e["exceedance"] = t.exceedance;
    tails.push_back(e);
  }
  j["tails"] = tails;
  j["kinetic_variance_scaled"] = s.kinetic_variance_scaled;
  j["gsq_variance_scaled"] = s.gsq_variance_scaled;
  j["eigfn_l1_discrepancy"] = s.eigfn_l1_discrepancy;
  j["mean_error_vs_limit"] = s.mean_error_vs_limit;
  j["max_identity_residual"] = s.max_identity_residual;
  return j;
}

ojson oracle_report_to_json(const OracleReport& r) {
  ojson j;
  j["k"] = r.k;
  j["n_sites"] = r.n_sites;
  j["mean"] = r.mean;
  j["variance"] = r.variance;
  j["increment_second_moments"] = r.increment_second_moments;
  j["max_telescoping_residual"] = r.max_telescoping_residual;
  j["max_orthogonality_residual"] = r.max_orthogonality_residual;
  j["variance_decomposition_residual"] = r.variance_decomposition_residual;
  return j;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[value & 0xf];
    value >>= 4;
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  throw_unless_parent_exists(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << content;
}

void throw_unless_parent_exists(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty() && !std::filesystem::exists(parent))
    throw Error("directory does not exist: " + parent.string());
}

}  // namespace anderlab
