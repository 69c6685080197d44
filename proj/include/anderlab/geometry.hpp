#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "anderlab/errors.hpp"

namespace anderlab {

// Lattice site; components beyond the active dimension stay zero.
using Site = std::array<int, 3>;
using Point = std::array<double, 3>;

// Open axis-aligned box (lower < upper componentwise).
struct BoxSpec {
  Point lo{};
  Point hi{};
};

// A bounded open region: a finite union of open axis-aligned boxes.
struct ShapeSpec {
  int dim = 1;
  std::vector<BoxSpec> boxes;

  void validate() const;  // throws InvalidConfig
  bool contains(const Point& p) const;
  BoxSpec bounding_box() const;
};

// Exact sup-norm distance from `p` to the complement of the region.
// Returns 0 for points outside (they already lie in the complement).
double boundary_distance(const ShapeSpec& shape, const Point& p);

// The scale-eps lattice domain: all integer sites x whose scaled position
// x*eps lies farther than eps (in sup-norm) from the complement of the
// region.  Sites are kept in lexicographic order; this fixed ordering
// doubles as the site-by-site conditioning order used by the martingale
// decomposition in the experiments module.
class LatticeDomain {
 public:
  static constexpr int kBoundary = -1;

  LatticeDomain() = default;

  double eps() const { return eps_; }
  int dim() const { return dim_; }
  int size() const { return static_cast<int>(sites_.size()); }
  const std::vector<Site>& sites() const { return sites_; }
  const Site& site(int i) const { return sites_[i]; }
  Point position(int i) const;  // site(i) * eps

  // Dense index of a site, or -1 if the site is not in the domain.
  int index_of(const Site& s) const;

  // Neighbor index along `axis` (0-based) on `side` (0 = minus, 1 = plus);
  // kBoundary encodes a Dirichlet edge (functions extended by zero).
  int neighbor(int i, int axis, int side) const {
    return neighbors_[i][static_cast<std::size_t>(2 * axis + side)];
  }

  void write_sites_csv(const std::string& path) const;

  friend LatticeDomain discretize(const ShapeSpec& shape, double eps);

 private:
  double eps_ = 0.0;
  int dim_ = 0;
  std::vector<Site> sites_;                       // lexicographic
  std::vector<std::array<int, 6>> neighbors_;     // per site, 2*dim entries
};

// Builds the lattice domain for a shape at scale eps.
// Throws EmptyDomain when no site qualifies (eps too large).
LatticeDomain discretize(const ShapeSpec& shape, double eps);

}  // namespace anderlab
