#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "isospec/errors.hpp"
#include "isospec/families.hpp"
#include "isospec/quadrature.hpp"
#include "oracles.hpp"

using namespace isospec;

TEST_CASE("integrate: closed-form integrals") {
  const QuadResult one = integrate([](double) { return 1.0; }, 0.0, 1.0);
  CHECK(std::abs(one.value - 1.0) <= 1e-14);
  CHECK(one.evaluations > 0);
  CHECK(one.abs_error_estimate >= 0.0);

  const QuadResult g = integrate([](double y) { return std::exp(-y * y); }, 0.0, 6.0);
  CHECK(std::abs(g.value - 0.886226925452758) <= 1e-12);

  QuadOptions rough;
  rough.rough_lo = rough.rough_hi = true;
  const QuadResult arcsine = integrate([](double y) { return 1.0 / std::sqrt(1.0 - y * y); }, -1.0, 1.0, rough);
  CHECK(std::abs(arcsine.value - std::numbers::pi) <= 1e-9);

  // x^{-1/2} singularity at the left end, without any hint.
  const QuadResult inv_sqrt = integrate([](double y) { return 1.0 / std::sqrt(y); }, 0.0, 4.0);
  CHECK(std::abs(inv_sqrt.value - 4.0) <= 1e-8);

  CHECK(integrate([](double y) { return y; }, 2.0, 2.0).value == 0.0);
}

TEST_CASE("integrate: error paths") {
  CHECK_THROWS_AS(integrate([](double y) { return 1.0 / y; }, 0.0, 1.0), NonFiniteError);
  QuadOptions tight;
  tight.max_evaluations = 200;
  CHECK_THROWS_AS(integrate([](double y) { return std::sin(1.0 / (y + 1e-3)); }, 0.0, 1.0, tight), ConvergenceError);
  CHECK_THROWS_AS(integrate([](double) { return std::nan(""); }, 0.0, 1.0), NonFiniteError);
  CHECK_THROWS_AS(integrate([](double y) { return y; }, 1.0, 0.0), ParameterError);
  CHECK_THROWS_AS(integrate([](double y) { return y; }, 0.0, INFINITY), ParameterError);
}

TEST_CASE("cumulative: examples") {
  const std::vector<double> xs{0.0, 0.5, 1.0};
  const auto c = cumulative([](double) { return 1.0; }, 0.0, xs);
  CHECK(c[0] == 0.0);
  CHECK(c[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(c[2] == doctest::Approx(1.0).epsilon(1e-14));

  const FamilySpec h = spec_for(FamilyId::hermite());
  const std::vector<double> hx{-1.0, 0.0, 1.0};
  const auto hc = cumulative([&](double y) { return h.denom_integrand(0, y); }, 0.0, hx);
  CHECK(std::abs(hc[0] - oracle::gauss_integral(-1.0)) <= 1e-10);
  CHECK(hc[1] == 0.0);
  CHECK(std::abs(hc[2] - oracle::gauss_integral(1.0)) <= 1e-10);
  CHECK(hc[2] == doctest::Approx(0.7468241328124270).epsilon(1e-12));

  const FamilySpec leg = spec_for(FamilyId::legendre());
  const std::vector<double> one{1.0};
  const auto lc = cumulative([&](double y) { return leg.denom_integrand(1, y); }, -1.0, one);
  CHECK(std::abs(lc[0] - 4.0 / 3.0) <= 1e-10);
}

TEST_CASE("cumulative: additivity, monotonicity, symmetry") {
  std::mt19937_64 rng(5);
  const std::vector<FamilyId> fams{FamilyId::hermite(), FamilyId::legendre(), FamilyId::chebyshev(),
                                   FamilyId::laguerre(0.5), FamilyId::jacobi_polynomial(0.5, -0.25)};
  for (int trial = 0; trial < 20; ++trial) {
    const FamilySpec s = spec_for(fams[trial % fams.size()]);
    const int n = trial % 4;
    const double lo = std::isfinite(s.domain.lo) ? s.domain.lo + 1e-3 : -4.0;
    const double hi = std::isfinite(s.domain.hi) ? s.domain.hi - 1e-3 : 8.0;
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> xs(30);
    for (double& x : xs) x = u(rng);
    std::sort(xs.begin(), xs.end());
    const auto f = [&](double y) { return s.denom_integrand(n, y); };
    QuadOptions opt;
    opt.rough_lo = s.x0 == s.domain.lo && s.rough_ends(n).first;
    const auto c = cumulative(f, s.x0, xs, opt);
    CAPTURE(s.family.label());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      QuadOptions direct = opt;
      double want = 0.0;
      if (xs[i] >= s.x0) {
        want = integrate(f, s.x0, xs[i], direct).value;
      } else {
        direct.rough_hi = direct.rough_lo;
        direct.rough_lo = false;
        want = -integrate(f, xs[i], s.x0, direct).value;
      }
      CHECK(std::abs(c[i] - want) <= 3e-11 * std::max(1.0, std::abs(want)));
      if (i > 0 && xs[i - 1] >= s.x0) CHECK(c[i] >= c[i - 1]);
    }
  }

  const std::vector<double> sym{-3.0, -1.5, -0.2, 0.2, 1.5, 3.0};
  const auto c = cumulative([](double y) { return std::exp(-y * y) * (1 + y * y); }, 0.0, sym);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(c[i] + c[5 - i]) <= 1e-12);
}

TEST_CASE("cumulative: unsorted input is rejected") {
  const std::vector<double> xs{1.0, 0.5};
  CHECK_THROWS_AS(cumulative([](double) { return 1.0; }, 0.0, xs), ParameterError);
}

TEST_CASE("tolerance scale environment variable") {
  ::setenv("ISOSPEC_TOLERANCE_SCALE", "10", 1);
  CHECK(default_quad_options().rel_tol == doctest::Approx(1e-10));
  CHECK(tolerance_scale() == 10.0);
  ::setenv("ISOSPEC_TOLERANCE_SCALE", "garbage", 1);
  CHECK(tolerance_scale() == 1.0);
  ::unsetenv("ISOSPEC_TOLERANCE_SCALE");
  CHECK(default_quad_options().rel_tol == doctest::Approx(1e-11));
}
