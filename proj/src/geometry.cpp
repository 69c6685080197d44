#include "anderlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace anderlab {

void ShapeSpec::validate() const {
  if (dim < 1 || dim > 3) throw InvalidConfig("shape dimension must be 1, 2 or 3");
  if (boxes.empty()) throw InvalidConfig("shape needs at least one box");
  for (const auto& b : boxes) {
    for (int i = 0; i < dim; ++i) {
      if (!(b.lo[i] < b.hi[i]))
        throw InvalidConfig("box must satisfy lower < upper in every component");
      if (!std::isfinite(b.lo[i]) || !std::isfinite(b.hi[i]))
        throw InvalidConfig("box corners must be finite");
    }
  }
}

bool ShapeSpec::contains(const Point& p) const {
  for (const auto& b : boxes) {
    bool in = true;
    for (int i = 0; i < dim; ++i) {
      if (!(b.lo[i] < p[i] && p[i] < b.hi[i])) {
        in = false;
        break;
      }
    }
    if (in) return true;
  }
  return false;
}

BoxSpec ShapeSpec::bounding_box() const {
  BoxSpec bb;
  for (int i = 0; i < dim; ++i) {
    bb.lo[i] = std::numeric_limits<double>::infinity();
    bb.hi[i] = -std::numeric_limits<double>::infinity();
  }
  for (const auto& b : boxes) {
    for (int i = 0; i < dim; ++i) {
      bb.lo[i] = std::min(bb.lo[i], b.lo[i]);
      bb.hi[i] = std::max(bb.hi[i], b.hi[i]);
    }
  }
  return bb;
}

namespace {

// Closed (possibly degenerate or unbounded) interval of the face
// arrangement, together with a representative interior point.
struct Segment {
  double lo, hi;  // +-inf allowed
  double rep;
};

double interval_distance(double t, double lo, double hi) {
  if (t < lo) return lo - t;
  if (t > hi) return t - hi;
  return 0.0;
}

// The face coordinates of all boxes partition each axis into open
// segments and degenerate points; on the relative interior of any cell
// of the product arrangement, membership in the open union is constant.
std::vector<Segment> axis_segments(const ShapeSpec& shape, int axis) {
  std::vector<double> coords;
  coords.reserve(2 * shape.boxes.size());
  for (const auto& b : shape.boxes) {
    coords.push_back(b.lo[axis]);
    coords.push_back(b.hi[axis]);
  }
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<Segment> segs;
  segs.push_back({-inf, coords.front(), coords.front() - 1.0});
  for (std::size_t j = 0; j < coords.size(); ++j) {
    segs.push_back({coords[j], coords[j], coords[j]});
    if (j + 1 < coords.size())
      segs.push_back({coords[j], coords[j + 1], 0.5 * (coords[j] + coords[j + 1])});
  }
  segs.push_back({coords.back(), inf, coords.back() + 1.0});
  return segs;
}

}  // namespace

double boundary_distance(const ShapeSpec& shape, const Point& p) {
  shape.validate();
  if (!shape.contains(p)) return 0.0;

  // Single box: distance to the nearest face in closed form.
  if (shape.boxes.size() == 1) {
    const auto& b = shape.boxes.front();
    double d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < shape.dim; ++i)
      d = std::min(d, std::min(p[i] - b.lo[i], b.hi[i] - p[i]));
    return d;
  }

  // General union: enumerate arrangement cells (including degenerate
  // faces), classify each by a representative point, and take the
  // minimal sup-norm distance to cells lying in the complement.
  std::array<std::vector<Segment>, 3> segs;
  for (int i = 0; i < shape.dim; ++i) segs[static_cast<std::size_t>(i)] = axis_segments(shape, i);

  std::array<std::size_t, 3> idx{0, 0, 0};
  std::array<std::size_t, 3> count{1, 1, 1};
  for (int i = 0; i < shape.dim; ++i) count[static_cast<std::size_t>(i)] = segs[static_cast<std::size_t>(i)].size();

  double best = std::numeric_limits<double>::infinity();
  while (true) {
    Point rep{};
    for (int i = 0; i < shape.dim; ++i) rep[i] = segs[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]].rep;
    if (!shape.contains(rep)) {
      double d = 0.0;
      for (int i = 0; i < shape.dim; ++i) {
        const auto& s = segs[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
        d = std::max(d, interval_distance(p[i], s.lo, s.hi));
      }
      best = std::min(best, d);
    }
    int axis = shape.dim - 1;
    while (axis >= 0) {
      if (++idx[static_cast<std::size_t>(axis)] < count[static_cast<std::size_t>(axis)]) break;
      idx[static_cast<std::size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return best;
}

Point LatticeDomain::position(int i) const {
  Point p{};
  for (int a = 0; a < dim_; ++a) p[a] = sites_[static_cast<std::size_t>(i)][a] * eps_;
  return p;
}

int LatticeDomain::index_of(const Site& s) const {
  auto it = std::lower_bound(sites_.begin(), sites_.end(), s);
  if (it == sites_.end() || *it != s) return -1;
  return static_cast<int>(it - sites_.begin());
}

void LatticeDomain::write_sites_csv(const std::string& path) const {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw Error("cannot open " + path + " for writing");
  std::fprintf(f, "index");
  for (int a = 0; a < dim_; ++a) std::fprintf(f, ",x%d", a + 1);
  std::fprintf(f, "\n");
  for (int i = 0; i < size(); ++i) {
    std::fprintf(f, "%d", i);
    for (int a = 0; a < dim_; ++a) std::fprintf(f, ",%d", sites_[static_cast<std::size_t>(i)][a]);
    std::fprintf(f, "\n");
  }
  std::fclose(f);
}

LatticeDomain discretize(const ShapeSpec& shape, double eps) {
  shape.validate();
  if (!(eps > 0.0)) throw InvalidConfig("eps must be positive");

  const BoxSpec bb = shape.bounding_box();
  std::array<int, 3> lo{0, 0, 0}, hi{0, 0, 0};
  for (int i = 0; i < shape.dim; ++i) {
    lo[static_cast<std::size_t>(i)] = static_cast<int>(std::floor(bb.lo[i] / eps)) - 1;
    hi[static_cast<std::size_t>(i)] = static_cast<int>(std::ceil(bb.hi[i] / eps)) + 1;
  }

  LatticeDomain dom;
  dom.eps_ = eps;
  dom.dim_ = shape.dim;

  // Lexicographic sweep keeps the site list sorted by construction.
  Site s{0, 0, 0};
  for (int x0 = lo[0]; x0 <= hi[0]; ++x0) {
    s[0] = x0;
    for (int x1 = lo[1]; x1 <= hi[1]; ++x1) {
      s[1] = (shape.dim > 1) ? x1 : 0;
      for (int x2 = lo[2]; x2 <= hi[2]; ++x2) {
        s[2] = (shape.dim > 2) ? x2 : 0;
        Point p{};
        for (int a = 0; a < shape.dim; ++a) p[a] = s[a] * eps;
        if (boundary_distance(shape, p) > eps) dom.sites_.push_back(s);
        if (shape.dim <= 2) break;
      }
      if (shape.dim <= 1) break;
    }
  }
  if (dom.sites_.empty())
    throw EmptyDomain("no lattice site qualifies at eps=" + std::to_string(eps));

  dom.neighbors_.resize(dom.sites_.size());
  for (int i = 0; i < dom.size(); ++i) {
    auto& nb = dom.neighbors_[static_cast<std::size_t>(i)];
    nb.fill(LatticeDomain::kBoundary);
    for (int a = 0; a < shape.dim; ++a) {
      for (int side = 0; side < 2; ++side) {
        Site t = dom.sites_[static_cast<std::size_t>(i)];
        t[a] += (side == 0) ? -1 : +1;
        nb[static_cast<std::size_t>(2 * a + side)] = dom.index_of(t);
      }
    }
  }
  return dom;
}

}  // namespace anderlab
