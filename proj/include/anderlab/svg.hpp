#pragma once

#include <string>
#include <vector>

namespace anderlab {

// Histogram of scaled fluctuation samples with the predicted centered
// normal density overlaid.
void write_histogram_svg(const std::string& path, const std::vector<double>& samples,
                         double predicted_sigma, const std::string& title);

// Log-log ladder plot of variance against the lattice scale.
void write_ladder_svg(const std::string& path, const std::vector<double>& eps,
                      const std::vector<double>& variance, const std::string& title);

}  // namespace anderlab
