#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "anderlab/geometry.hpp"
#include "anderlab/profile.hpp"

namespace anderlab {

enum class Family { TwoPoint, Uniform, BetaScaled };

// Per-site law: independent, mean U(x*eps), variance V(x*eps), values
// confined to [a,b].  The two-point family takes U +- sqrt(V) with
// probability 1/2 each; it is the minimal law matching the first two
// moments and admits exact enumeration on tiny lattices.
struct PotentialSpec {
  ProfileFn U;
  ProfileFn V;
  Family family = Family::TwoPoint;
  double a = -1.0;
  double b = 1.0;

  std::uint64_t hash() const;
};

// One sampled realization of the random field.
struct PotentialField {
  std::vector<double> values;  // indexed like the lattice sites
  std::uint64_t seed = 0;
  std::uint64_t spec_hash = 0;
};

// Throws InfeasibleSpec naming the first violating site if the family
// cannot match the requested moments inside [a,b] somewhere on the
// lattice.  V may degenerate to zero (point mass at U).
void check_feasible(const PotentialSpec& spec, const LatticeDomain& lattice);

// Independent per-site draws; the stream of each site is keyed by
// (seed, site index), so sampling is deterministic and order-independent.
PotentialField sample(const PotentialSpec& spec, const LatticeDomain& lattice,
                      std::uint64_t seed);

// Exact enumeration of all 2^n two-point configurations with product
// probabilities.  Guarded: requires family == TwoPoint and n <= 20.
// The visitor form reuses a single field buffer.
void for_each_two_point_config(
    const PotentialSpec& spec, const LatticeDomain& lattice,
    const std::function<void(const PotentialField&, double)>& visit);

std::vector<std::pair<PotentialField, double>> enumerate_two_point(
    const PotentialSpec& spec, const LatticeDomain& lattice);

}  // namespace anderlab
