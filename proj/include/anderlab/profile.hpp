#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "anderlab/geometry.hpp"

namespace anderlab {

// Spatial profile function, evaluable at any point of the region.
// Used for the mean field U(.) and the variance field V(.).
struct ProfileFn {
  enum class Kind { Constant, Polynomial, Trigonometric, Grid };

  struct Monomial {
    double coeff = 0.0;
    std::array<int, 3> powers{0, 0, 0};
  };
  struct Wave {
    double amplitude = 0.0;
    std::array<double, 3> frequency{0.0, 0.0, 0.0};  // radians per unit length
    double phase = 0.0;
  };
  struct Grid {
    Point origin{};
    double spacing = 1.0;
    std::array<int, 3> shape{1, 1, 1};
    std::vector<double> values;  // row-major, multilinear interpolation
  };

  Kind kind = Kind::Constant;
  double constant = 0.0;
  std::vector<Monomial> monomials;
  std::vector<Wave> waves;
  double wave_offset = 0.0;
  Grid grid;

  double operator()(const Point& p) const;

  static ProfileFn constant_fn(double v) {
    ProfileFn f;
    f.kind = Kind::Constant;
    f.constant = v;
    return f;
  }
  static ProfileFn polynomial_fn(std::vector<Monomial> terms) {
    ProfileFn f;
    f.kind = Kind::Polynomial;
    f.monomials = std::move(terms);
    return f;
  }
};

}  // namespace anderlab
