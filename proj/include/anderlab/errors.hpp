#pragma once

#include <stdexcept>
#include <string>

namespace anderlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Domain construction / configuration.
struct InvalidConfig : Error { using Error::Error; };
struct EmptyDomain : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// Random potential.
struct InfeasibleSpec : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };

// Eigensolvers and spectral identities.
struct NoConvergence : Error {
  int iterations;
  double worst_residual;
  NoConvergence(int it, double res)
      : Error("eigensolver failed to converge after " + std::to_string(it) +
              " iterations (worst residual " + std::to_string(res) + ")"),
        iterations(it),
        worst_residual(res) {}
};
struct DegenerateEigenvalue : Error { using Error::Error; };
struct NotOrthonormal : Error { using Error::Error; };
struct DegeneracyCrossing : Error { using Error::Error; };

// Continuum reference and campaigns.
struct ResolutionTooCoarse : Error { using Error::Error; };
struct DegenerateLimit : Error { using Error::Error; };
struct InsufficientSamples : Error { using Error::Error; };

}  // namespace anderlab
