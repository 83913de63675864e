#include "isospec/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "isospec/errors.hpp"

namespace isospec {

std::vector<double> GridSpec::points() const {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw ParameterError("grid: need finite lo < hi");
  if (count < 2) throw ParameterError("grid: count must be >= 2");
  std::vector<double> xs(static_cast<std::size_t>(count));
  const double n = count - 1;
  switch (spacing) {
    case GridSpacing::Uniform:
      for (int i = 0; i < count; ++i) xs[i] = lo + (hi - lo) * (i / n);
      break;
    case GridSpacing::ChebyshevClustered:
      for (int i = 0; i < count; ++i) {
        xs[i] = 0.5 * (lo + hi) - 0.5 * (hi - lo) * std::cos(std::numbers::pi * i / n);
      }
      break;
    case GridSpacing::Random: {
      std::mt19937_64 rng(seed);
      for (double& x : xs) {
        // 53 random mantissa bits; independent of the library's distribution code.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        x = lo + (hi - lo) * u;
      }
      std::sort(xs.begin(), xs.end());
      break;
    }
  }
  xs.front() = std::max(xs.front(), lo);
  xs.back() = std::min(xs.back(), hi);
  return xs;
}

namespace {

double parse_number(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParameterError("grid: cannot parse number '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

GridSpec parse_grid(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos) throw ParameterError("grid: expected lo:hi:count, got '" + std::string(text) + "'");
  GridSpec g;
  g.lo = parse_number(text.substr(0, first));
  g.hi = parse_number(text.substr(first + 1, second - first - 1));
  const double count = parse_number(text.substr(second + 1));
  if (count != std::floor(count) || count < 2 || count > 1e7) throw ParameterError("grid: count must be an integer >= 2");
  g.count = static_cast<int>(count);
  if (!(g.lo < g.hi)) throw ParameterError("grid: need lo < hi");
  return g;
}

std::string_view grid_spacing_name(GridSpacing spacing) {
  switch (spacing) {
    case GridSpacing::Uniform:
      return "uniform";
    case GridSpacing::ChebyshevClustered:
      return "chebyshev-clustered";
    case GridSpacing::Random:
      return "random";
  }
  return "unknown";
}

}  // namespace isospec
