#include "anderlab/potential.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "anderlab/rng.hpp"

namespace anderlab {

namespace {

std::uint64_t hash_double(std::uint64_t h, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  return derive_key(h, bits);
}

std::uint64_t hash_profile(std::uint64_t h, const ProfileFn& f) {
  h = derive_key(h, static_cast<std::uint64_t>(f.kind));
  switch (f.kind) {
    case ProfileFn::Kind::Constant:
      h = hash_double(h, f.constant);
      break;
    case ProfileFn::Kind::Polynomial:
      for (const auto& m : f.monomials) {
        h = hash_double(h, m.coeff);
        for (int p : m.powers) h = derive_key(h, static_cast<std::uint64_t>(p));
      }
      break;
    case ProfileFn::Kind::Trigonometric:
      h = hash_double(h, f.wave_offset);
      for (const auto& w : f.waves) {
        h = hash_double(h, w.amplitude);
        h = hash_double(h, w.phase);
        for (double q : w.frequency) h = hash_double(h, q);
      }
      break;
    case ProfileFn::Kind::Grid:
      h = hash_double(h, f.grid.spacing);
      for (double o : f.grid.origin) h = hash_double(h, o);
      for (int s : f.grid.shape) h = derive_key(h, static_cast<std::uint64_t>(s));
      for (double v : f.grid.values) h = hash_double(h, v);
      break;
  }
  return h;
}

struct Moments {
  double mean;
  double var;
};

Moments site_moments(const PotentialSpec& spec, const LatticeDomain& lattice, int i) {
  const Point p = lattice.position(i);
  return {spec.U(p), spec.V(p)};
}

// Feasibility of matching (mean, var) inside [a,b] for one site.
bool feasible_at(const PotentialSpec& spec, const Moments& m, std::string* why) {
  if (!(m.var >= 0.0)) {
    if (why) *why = "variance profile is negative";
    return false;
  }
  switch (spec.family) {
    case Family::TwoPoint: {
      const double s = std::sqrt(m.var);
      if (m.mean - s < spec.a || m.mean + s > spec.b) {
        if (why) *why = "two-point support U +- sqrt(V) leaves [a,b]";
        return false;
      }
      return true;
    }
    case Family::Uniform: {
      const double h = std::sqrt(3.0 * m.var);
      if (m.mean - h < spec.a || m.mean + h > spec.b) {
        if (why) *why = "uniform support U +- sqrt(3V) leaves [a,b]";
        return false;
      }
      return true;
    }
    case Family::BetaScaled: {
      if (m.var == 0.0) {
        if (m.mean < spec.a || m.mean > spec.b) {
          if (why) *why = "degenerate mean leaves [a,b]";
          return false;
        }
        return true;
      }
      if (!(spec.a < m.mean && m.mean < spec.b)) {
        if (why) *why = "beta-scaled mean must lie strictly inside (a,b)";
        return false;
      }
      if (!(m.var < (m.mean - spec.a) * (spec.b - m.mean))) {
        if (why) *why = "beta-scaled variance exceeds (U-a)(b-U)";
        return false;
      }
      return true;
    }
  }
  return false;
}

// Marsaglia-Tsang gamma sampler driven by a per-site counter stream.
double sample_gamma(CounterRng& rng, double shape) {
  if (shape < 1.0) {
    const double u = rng.next_unit_open();
    return sample_gamma(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.next_unit_open();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double draw_value(const PotentialSpec& spec, const Moments& m, CounterRng& rng) {
  switch (spec.family) {
    case Family::TwoPoint: {
      const double s = std::sqrt(m.var);
      return (rng.next_unit() < 0.5) ? m.mean - s : m.mean + s;
    }
    case Family::Uniform: {
      const double h = std::sqrt(3.0 * m.var);
      return m.mean + h * (2.0 * rng.next_unit() - 1.0);
    }
    case Family::BetaScaled: {
      if (m.var == 0.0) return m.mean;
      const double w = spec.b - spec.a;
      const double mu = (m.mean - spec.a) / w;
      const double v = m.var / (w * w);
      const double total = mu * (1.0 - mu) / v - 1.0;
      const double alpha = mu * total;
      const double beta = (1.0 - mu) * total;
      const double g1 = sample_gamma(rng, alpha);
      const double g2 = sample_gamma(rng, beta);
      return spec.a + w * g1 / (g1 + g2);
    }
  }
  return m.mean;
}

}  // namespace

std::uint64_t PotentialSpec::hash() const {
  std::uint64_t h = derive_key(0x616e6465726c6162ULL, static_cast<std::uint64_t>(family));
  h = hash_double(h, a);
  h = hash_double(h, b);
  h = hash_profile(h, U);
  h = hash_profile(h, V);
  return h;
}

void check_feasible(const PotentialSpec& spec, const LatticeDomain& lattice) {
  if (!(spec.a < spec.b)) throw InfeasibleSpec("support bounds need a < b");
  std::string why;
  for (int i = 0; i < lattice.size(); ++i) {
    if (!feasible_at(spec, site_moments(spec, lattice, i), &why))
      throw InfeasibleSpec("infeasible at site index " + std::to_string(i) + ": " + why);
  }
}

PotentialField sample(const PotentialSpec& spec, const LatticeDomain& lattice,
                      std::uint64_t seed) {
  check_feasible(spec, lattice);
  PotentialField field;
  field.seed = seed;
  field.spec_hash = spec.hash();
  field.values.resize(static_cast<std::size_t>(lattice.size()));
  for (int i = 0; i < lattice.size(); ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    field.values[static_cast<std::size_t>(i)] = draw_value(spec, site_moments(spec, lattice, i), rng);
  }
  return field;
}

void for_each_two_point_config(
    const PotentialSpec& spec, const LatticeDomain& lattice,
    const std::function<void(const PotentialField&, double)>& visit) {
  if (spec.family != Family::TwoPoint)
    throw InvalidConfig("exact enumeration requires the two-point family");
  const int n = lattice.size();
  if (n > 20) throw TooLarge("enumeration guard: " + std::to_string(n) + " sites > 20");
  check_feasible(spec, lattice);

  std::vector<double> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Moments m = site_moments(spec, lattice, i);
    const double s = std::sqrt(m.var);
    lo[static_cast<std::size_t>(i)] = m.mean - s;
    hi[static_cast<std::size_t>(i)] = m.mean + s;
  }

  PotentialField field;
  field.seed = 0;
  field.spec_hash = spec.hash();
  field.values.resize(static_cast<std::size_t>(n));
  const double prob = std::ldexp(1.0, -n);  // exact 2^-n
  const std::uint64_t total = 1ULL << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (int i = 0; i < n; ++i)
      field.values[static_cast<std::size_t>(i)] =
          (mask >> i) & 1ULL ? hi[static_cast<std::size_t>(i)] : lo[static_cast<std::size_t>(i)];
    visit(field, prob);
  }
}

std::vector<std::pair<PotentialField, double>> enumerate_two_point(
    const PotentialSpec& spec, const LatticeDomain& lattice) {
  std::vector<std::pair<PotentialField, double>> out;
  for_each_two_point_config(spec, lattice, [&](const PotentialField& f, double p) {
    out.emplace_back(f, p);
  });
  return out;
}

}  // namespace anderlab
