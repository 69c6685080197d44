#include "anderlab/profile.hpp"

#include <algorithm>
#include <cmath>

namespace anderlab {

namespace {

double eval_grid(const ProfileFn::Grid& g, const Point& p) {
  // Multilinear interpolation with clamped coordinates.
  std::array<int, 3> i0{0, 0, 0};
  std::array<double, 3> frac{0.0, 0.0, 0.0};
  for (int a = 0; a < 3; ++a) {
    if (g.shape[static_cast<std::size_t>(a)] <= 1) continue;
    double t = (p[static_cast<std::size_t>(a)] - g.origin[static_cast<std::size_t>(a)]) / g.spacing;
    t = std::clamp(t, 0.0, static_cast<double>(g.shape[static_cast<std::size_t>(a)] - 1));
    i0[static_cast<std::size_t>(a)] = std::min(static_cast<int>(t), g.shape[static_cast<std::size_t>(a)] - 2);
    frac[static_cast<std::size_t>(a)] = t - i0[static_cast<std::size_t>(a)];
  }
  auto flat = [&](int x, int y, int z) {
    return (static_cast<std::size_t>(x) * static_cast<std::size_t>(g.shape[1]) +
            static_cast<std::size_t>(y)) * static_cast<std::size_t>(g.shape[2]) +
           static_cast<std::size_t>(z);
  };
  double acc = 0.0;
  for (int cx = 0; cx < (g.shape[0] > 1 ? 2 : 1); ++cx)
    for (int cy = 0; cy < (g.shape[1] > 1 ? 2 : 1); ++cy)
      for (int cz = 0; cz < (g.shape[2] > 1 ? 2 : 1); ++cz) {
        double w = 1.0;
        w *= (g.shape[0] > 1) ? (cx ? frac[0] : 1.0 - frac[0]) : 1.0;
        w *= (g.shape[1] > 1) ? (cy ? frac[1] : 1.0 - frac[1]) : 1.0;
        w *= (g.shape[2] > 1) ? (cz ? frac[2] : 1.0 - frac[2]) : 1.0;
        acc += w * g.values[flat(i0[0] + cx, i0[1] + cy, i0[2] + cz)];
      }
  return acc;
}

}  // namespace

double ProfileFn::operator()(const Point& p) const {
  switch (kind) {
    case Kind::Constant:
      return constant;
    case Kind::Polynomial: {
      double acc = 0.0;
      for (const auto& m : monomials) {
        double term = m.coeff;
        for (int a = 0; a < 3; ++a)
          for (int k = 0; k < m.powers[static_cast<std::size_t>(a)]; ++k) term *= p[static_cast<std::size_t>(a)];
        acc += term;
      }
      return acc;
    }
    case Kind::Trigonometric: {
      double acc = wave_offset;
      for (const auto& w : waves) {
        double arg = w.phase;
        for (int a = 0; a < 3; ++a) arg += w.frequency[static_cast<std::size_t>(a)] * p[static_cast<std::size_t>(a)];
        acc += w.amplitude * std::cos(arg);
      }
      return acc;
    }
    case Kind::Grid:
      return eval_grid(grid, p);
  }
  return 0.0;
}

}  // namespace anderlab
