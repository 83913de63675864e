#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace isospec {

enum class GridSpacing { Uniform, ChebyshevClustered, Random };

/// Sample points on [lo, hi].
///
/// Uniform and Chebyshev-clustered grids include both ends; Random draws
/// `count` sorted points from a seeded generator (deterministic).
struct GridSpec {
  double lo = 0.0;
  double hi = 1.0;
  int count = 2;
  GridSpacing spacing = GridSpacing::Uniform;
  std::uint64_t seed = 0;

  std::vector<double> points() const;
};

/// Parses "lo:hi:count" (uniform spacing). Throws ParameterError.
GridSpec parse_grid(std::string_view text);

std::string_view grid_spacing_name(GridSpacing spacing);

}  // namespace isospec
