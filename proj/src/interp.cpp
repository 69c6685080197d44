#include "anderlab/interp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace anderlab {

LatticeFunction::LatticeFunction(int dim, double eps, Site lo, Site hi,
                                 std::vector<double> values)
    : dim_(dim), eps_(eps), lo_(lo), hi_(hi), values_(std::move(values)) {
  if (dim < 1 || dim > 3) throw InvalidConfig("lattice function dimension must be 1..3");
  if (!(eps > 0.0)) throw InvalidConfig("lattice function needs eps > 0");
  std::size_t total = 1;
  for (int a = 0; a < 3; ++a) {
    ext_[static_cast<std::size_t>(a)] = (a < dim) ? hi[static_cast<std::size_t>(a)] - lo[static_cast<std::size_t>(a)] + 1 : 1;
    if (ext_[static_cast<std::size_t>(a)] < 1) throw InvalidConfig("lattice function box is empty");
    total *= static_cast<std::size_t>(ext_[static_cast<std::size_t>(a)]);
  }
  if (values_.size() != total) throw DimensionMismatch("lattice function value count mismatch");
}

LatticeFunction LatticeFunction::on_domain(const LatticeDomain& dom,
                                           const std::vector<double>& site_values) {
  if (static_cast<int>(site_values.size()) != dom.size())
    throw DimensionMismatch("site value count mismatch");
  Site lo{0, 0, 0}, hi{0, 0, 0};
  for (int a = 0; a < dom.dim(); ++a) {
    int mn = std::numeric_limits<int>::max(), mx = std::numeric_limits<int>::min();
    for (const auto& s : dom.sites()) {
      mn = std::min(mn, s[static_cast<std::size_t>(a)]);
      mx = std::max(mx, s[static_cast<std::size_t>(a)]);
    }
    lo[static_cast<std::size_t>(a)] = mn;
    hi[static_cast<std::size_t>(a)] = mx;
  }
  std::size_t total = 1;
  for (int a = 0; a < dom.dim(); ++a) total *= static_cast<std::size_t>(hi[static_cast<std::size_t>(a)] - lo[static_cast<std::size_t>(a)] + 1);
  LatticeFunction f(dom.dim(), dom.eps(), lo, hi, std::vector<double>(total, 0.0));
  for (int i = 0; i < dom.size(); ++i) f.set(dom.site(i), site_values[static_cast<std::size_t>(i)]);
  return f;
}

std::size_t LatticeFunction::flat(const Site& s) const {
  std::size_t idx = 0;
  for (int a = 0; a < 3; ++a)
    idx = idx * static_cast<std::size_t>(ext_[static_cast<std::size_t>(a)]) +
          static_cast<std::size_t>(s[static_cast<std::size_t>(a)] - lo_[static_cast<std::size_t>(a)]);
  return idx;
}

bool LatticeFunction::inside(const Site& s) const {
  for (int a = 0; a < dim_; ++a)
    if (s[static_cast<std::size_t>(a)] < lo_[static_cast<std::size_t>(a)] || s[static_cast<std::size_t>(a)] > hi_[static_cast<std::size_t>(a)]) return false;
  for (int a = dim_; a < 3; ++a)
    if (s[static_cast<std::size_t>(a)] != 0) return false;
  return true;
}

double LatticeFunction::at(const Site& s) const {
  return inside(s) ? values_[flat(s)] : 0.0;
}

void LatticeFunction::set(const Site& s, double v) {
  if (!inside(s)) throw InvalidConfig("set outside the stored box");
  values_[flat(s)] = v;
}

double LatticeFunction::grad_norm(const Site& s) const {
  double acc = 0.0;
  for (int a = 0; a < dim_; ++a) {
    const double g = grad(s, a);
    acc += g * g;
  }
  return std::sqrt(acc);
}

namespace {

// Iterate over an inclusive integer box (unused axes pinned at zero).
template <typename Fn>
void for_box(int dim, const Site& lo, const Site& hi, Fn&& fn) {
  Site s{0, 0, 0};
  for (int x0 = lo[0]; x0 <= hi[0]; ++x0) {
    s[0] = x0;
    for (int x1 = (dim > 1 ? lo[1] : 0); x1 <= (dim > 1 ? hi[1] : 0); ++x1) {
      s[1] = x1;
      for (int x2 = (dim > 2 ? lo[2] : 0); x2 <= (dim > 2 ? hi[2] : 0); ++x2) {
        s[2] = x2;
        fn(s);
      }
    }
  }
}

Site expand_lo(const LatticeFunction& f) {
  Site lo = f.lo();
  for (int a = 0; a < f.dim(); ++a) --lo[static_cast<std::size_t>(a)];
  return lo;
}

}  // namespace

double LatticeFunction::l1_norm() const {
  long double acc = 0.0L;
  for (double v : values_) acc += std::abs(v);
  return static_cast<double>(acc);
}

double LatticeFunction::grad_l1_norm() const {
  long double acc = 0.0L;
  for_box(dim_, expand_lo(*this), hi_, [&](const Site& s) {
    for (int a = 0; a < dim_; ++a) acc += std::abs(grad(s, a));
  });
  return static_cast<double>(acc);
}

double LatticeFunction::grad_l2_sq() const {
  long double acc = 0.0L;
  for_box(dim_, expand_lo(*this), hi_, [&](const Site& s) {
    for (int a = 0; a < dim_; ++a) {
      const double g = grad(s, a);
      acc += static_cast<long double>(g) * g;
    }
  });
  return static_cast<double>(acc);
}

double scaled_norm(const LatticeFunction& f, double p) {
  if (std::isinf(p)) {
    double mx = 0.0;
    for_box(f.dim(), f.lo(), f.hi(), [&](const Site& s) { mx = std::max(mx, std::abs(f.at(s))); });
    return mx;
  }
  if (!(p >= 1.0)) throw InvalidConfig("scaled norm needs p >= 1");
  long double acc = 0.0L;
  for_box(f.dim(), f.lo(), f.hi(),
          [&](const Site& s) { acc += std::pow(std::abs(f.at(s)), static_cast<long double>(p)); });
  const double epsd = std::pow(f.eps(), f.dim());
  return static_cast<double>(std::pow(epsd * static_cast<double>(acc), 1.0 / p));
}

double Interpolant::eval_with_permutation(const Point& y, const std::array<int, 3>& perm) const {
  const int d = f_.dim();
  const double eps = f_.eps();
  Site cell{0, 0, 0};
  Point alpha_raw{0.0, 0.0, 0.0};
  for (int a = 0; a < d; ++a) {
    const double t = y[static_cast<std::size_t>(a)] / eps;
    cell[static_cast<std::size_t>(a)] = static_cast<int>(std::floor(t));
    alpha_raw[static_cast<std::size_t>(a)] = t - cell[static_cast<std::size_t>(a)];
  }
  // Corner-weight form: with alpha_0 = 1 and alpha_{d+1} = 0 the value is
  //   sum_i (alpha_i - alpha_{i+1}) f(cell + e_{perm(1)} + ... + e_{perm(i)}),
  // a convex combination of the corners along the sorted-axis chain.  Tied
  // fractional coordinates zero out exactly the corner that depends on the
  // permutation choice, so all admissible orders evaluate identically.
  double value = 0.0;
  double alpha_prev = 1.0;
  Site corner = cell;
  for (int i = 0; i < d; ++i) {
    const int axis = perm[static_cast<std::size_t>(i)];
    const double alpha = alpha_raw[static_cast<std::size_t>(axis)];
    value += (alpha_prev - alpha) * f_.at(corner);
    alpha_prev = alpha;
    ++corner[static_cast<std::size_t>(axis)];
  }
  value += alpha_prev * f_.at(corner);
  return value;
}

double Interpolant::operator()(const Point& y) const {
  const int d = f_.dim();
  const double eps = f_.eps();
  std::array<double, 3> frac{0.0, 0.0, 0.0};
  for (int a = 0; a < d; ++a) {
    const double t = y[static_cast<std::size_t>(a)] / eps;
    frac[static_cast<std::size_t>(a)] = t - std::floor(t);
  }
  std::array<int, 3> perm{0, 1, 2};
  // Stable descending sort of the fractional coordinates: equal entries
  // keep ascending axis order, the lexicographically smallest choice.
  std::stable_sort(perm.begin(), perm.begin() + d,
                   [&](int a, int b) { return frac[static_cast<std::size_t>(a)] > frac[static_cast<std::size_t>(b)]; });
  return eval_with_permutation(y, perm);
}

Interpolant interpolate(const LatticeFunction& f) { return Interpolant(f); }

void Interpolant::write_grid_csv(const std::string& path, int samples_per_axis) const {
  if (samples_per_axis < 2) throw InvalidConfig("need at least two samples per axis");
  std::FILE* out = std::fopen(path.c_str(), "wb");
  if (!out) throw Error("cannot open " + path + " for writing");
  const int d = f_.dim();
  std::fprintf(out, "%s", d == 1 ? "y1" : (d == 2 ? "y1,y2" : "y1,y2,y3"));
  std::fprintf(out, ",value\n");
  const double eps = f_.eps();
  Point lo{}, hi{};
  for (int a = 0; a < d; ++a) {
    lo[static_cast<std::size_t>(a)] = (f_.lo()[static_cast<std::size_t>(a)] - 1) * eps;
    hi[static_cast<std::size_t>(a)] = (f_.hi()[static_cast<std::size_t>(a)] + 1) * eps;
  }
  std::array<int, 3> steps{1, 1, 1};
  for (int a = 0; a < d; ++a) steps[static_cast<std::size_t>(a)] = samples_per_axis;
  for (int i = 0; i < steps[0]; ++i)
    for (int j = 0; j < steps[1]; ++j)
      for (int l = 0; l < steps[2]; ++l) {
        Point y{};
        const std::array<int, 3> ijk{i, j, l};
        for (int a = 0; a < d; ++a)
          y[static_cast<std::size_t>(a)] = lo[static_cast<std::size_t>(a)] +
                 (hi[static_cast<std::size_t>(a)] - lo[static_cast<std::size_t>(a)]) * ijk[static_cast<std::size_t>(a)] /
                     (samples_per_axis - 1);
        for (int a = 0; a < d; ++a) std::fprintf(out, "%.17g,", y[static_cast<std::size_t>(a)]);
        std::fprintf(out, "%.17g\n", (*this)(y));
      }
  std::fclose(out);
}

double interpolant_gradient_norm(const LatticeFunction& f) {
  const int d = f.dim();
  std::array<int, 3> perm{0, 1, 2};
  std::vector<std::array<int, 3>> perms;
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.begin() + d));

  long double acc = 0.0L;  // sum over simplices of |gradient|^2 * volume
  double factorial = 1.0;
  for (int a = 2; a <= d; ++a) factorial *= a;
  const double simplex_vol = std::pow(f.eps(), d) / factorial;
  const double inv_eps_sq = 1.0 / (f.eps() * f.eps());

  for_box(d, expand_lo(f), f.hi(), [&](const Site& cell) {
    for (const auto& sigma : perms) {
      Site corner = cell;
      long double grad_sq = 0.0L;
      for (int i = 0; i < d; ++i) {
        const int axis = sigma[static_cast<std::size_t>(i)];
        const double g = f.grad(corner, axis);
        grad_sq += static_cast<long double>(g) * g;
        ++corner[static_cast<std::size_t>(axis)];
      }
      acc += grad_sq * inv_eps_sq * simplex_vol;
    }
  });
  return std::sqrt(static_cast<double>(acc));
}

double interpolant_lp_norm_estimate(const LatticeFunction& f, double p, int samples_per_cell) {
  const int d = f.dim();
  const Interpolant itp(f);
  // Kronecker low-discrepancy offsets inside the unit cell, fixed across runs.
  static constexpr std::array<double, 3> kAlpha{0.7548776662466927, 0.5698402909980532,
                                                0.8191725133961645};
  const double cell_vol = std::pow(f.eps(), d);
  long double acc = 0.0L;
  double mx = 0.0;
  for_box(d, expand_lo(f), f.hi(), [&](const Site& cell) {
    for (int s = 0; s < samples_per_cell; ++s) {
      Point y{};
      for (int a = 0; a < d; ++a) {
        const double frac = std::fmod(0.5 + (s + 1) * kAlpha[static_cast<std::size_t>(a)], 1.0);
        y[static_cast<std::size_t>(a)] = (cell[static_cast<std::size_t>(a)] + frac) * f.eps();
      }
      const double v = std::abs(itp(y));
      mx = std::max(mx, v);
      if (!std::isinf(p)) acc += std::pow(static_cast<long double>(v), static_cast<long double>(p));
    }
  });
  if (std::isinf(p)) return mx;
  return static_cast<double>(
      std::pow(static_cast<double>(acc) * cell_vol / samples_per_cell, 1.0 / p));
}

LatticeFunction coarsen(const LatticeFunction& f, int L) {
  if (L < 1) throw InvalidConfig("coarsening block size must be >= 1");
  const int d = f.dim();
  auto anchor = [&](int x) { return L * static_cast<int>(std::floor(static_cast<double>(x) / L)); };
  Site lo = f.lo(), hi = f.hi();
  for (int a = 0; a < d; ++a) {
    lo[static_cast<std::size_t>(a)] = anchor(lo[static_cast<std::size_t>(a)]);
    hi[static_cast<std::size_t>(a)] = anchor(hi[static_cast<std::size_t>(a)]) + L - 1;
  }
  std::size_t total = 1;
  for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(hi[static_cast<std::size_t>(a)] - lo[static_cast<std::size_t>(a)] + 1);
  LatticeFunction out(d, f.eps(), lo, hi, std::vector<double>(total, 0.0));
  for_box(d, lo, hi, [&](const Site& s) {
    Site block{0, 0, 0};
    for (int a = 0; a < d; ++a) block[static_cast<std::size_t>(a)] = anchor(s[static_cast<std::size_t>(a)]);
    out.set(s, f.at(block));
  });
  return out;
}

std::pair<double, double> coarsening_bound(const LatticeFunction& f, int L) {
  const LatticeFunction fl = coarsen(f, L);
  Site lo = f.lo(), hi = f.hi();
  for (int a = 0; a < f.dim(); ++a) {
    lo[static_cast<std::size_t>(a)] = std::min(lo[static_cast<std::size_t>(a)], fl.lo()[static_cast<std::size_t>(a)]);
    hi[static_cast<std::size_t>(a)] = std::max(hi[static_cast<std::size_t>(a)], fl.hi()[static_cast<std::size_t>(a)]);
  }
  long double diff = 0.0L;
  for_box(f.dim(), lo, hi, [&](const Site& s) { diff += std::abs(f.at(s) - fl.at(s)); });
  const double c = std::pow(2.0, f.dim()) * std::sqrt(static_cast<double>(f.dim()));
  return {static_cast<double>(diff), c * L * f.grad_l1_norm()};
}

double constant_lift_inner(const LatticeFunction& f, const LatticeFunction& h) {
  if (f.dim() != h.dim() || f.eps() != h.eps())
    throw DimensionMismatch("lift inner product needs matching dim and eps");
  // Each cell contributes eps^dim * (eps^{-dim/2} f) (eps^{-dim/2} h).
  const double scale = std::pow(f.eps(), f.dim()) * std::pow(f.eps(), -static_cast<double>(f.dim()));
  Site lo = f.lo(), hi = f.hi();
  for (int a = 0; a < f.dim(); ++a) {
    lo[static_cast<std::size_t>(a)] = std::min(lo[static_cast<std::size_t>(a)], h.lo()[static_cast<std::size_t>(a)]);
    hi[static_cast<std::size_t>(a)] = std::max(hi[static_cast<std::size_t>(a)], h.hi()[static_cast<std::size_t>(a)]);
  }
  long double acc = 0.0L;
  for_box(f.dim(), lo, hi, [&](const Site& s) { acc += static_cast<long double>(f.at(s)) * h.at(s); });
  return static_cast<double>(acc) * scale;
}

}  // namespace anderlab
