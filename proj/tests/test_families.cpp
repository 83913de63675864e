#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "isospec/classical.hpp"
#include "isospec/deformation.hpp"
#include "isospec/errors.hpp"
#include "isospec/families.hpp"

using namespace isospec;

namespace {

double double_factorial(int k) {
  double r = 1.0;
  for (; k > 1; k -= 2) r *= k;
  return r;
}

std::vector<FamilyId> all_families() {
  return {FamilyId::hermite(),         FamilyId::laguerre(0.0),
          FamilyId::laguerre(0.5),     FamilyId::legendre(),
          FamilyId::chebyshev(),       FamilyId::jacobi_function(2.5, 1.5),
          FamilyId::jacobi_polynomial(0.0, 0.0), FamilyId::jacobi_polynomial(0.5, -0.25),
          FamilyId::bessel()};
}

// Sample interval inside the open domain.
std::pair<double, double> sample_range(const FamilySpec& s) {
  const double lo = std::isfinite(s.domain.lo) ? s.domain.lo + 0.01 : -5.0;
  const double hi = std::isfinite(s.domain.hi) ? s.domain.hi - 0.01 : (s.domain.lo == 0.0 ? 20.0 : 5.0);
  return {lo, hi};
}

}  // namespace

TEST_CASE("printed closed forms") {
  const FamilySpec h = spec_for(FamilyId::hermite());
  for (int n : {0, 3, 7}) {
    for (double x : {-2.0, 0.0, 1.3}) CHECK(h.eval_delta(n, x) == doctest::Approx(-x * x));
  }
  const FamilySpec leg = spec_for(FamilyId::legendre());
  for (double y : {-0.99, 0.0, 0.5}) CHECK(leg.denom_integrand(0, y) == doctest::Approx(1.0));
  const FamilySpec cheb = spec_for(FamilyId::chebyshev());
  CHECK(cheb.gamma_rule.boundary(1) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
  CHECK(cheb.gamma_rule.threshold(5) == doctest::Approx(std::numbers::pi));
  CHECK(cheb.x0 == -1.0);
  const FamilySpec bes = spec_for(FamilyId::bessel());
  CHECK(bes.closed_form_b(0, 3.0, 1.7) == 0.0);
  CHECK(bes.closed_form_b(2, 1.0, 2.0) == doctest::Approx(4.0 / (32.0 + 2.0)));
}

TEST_CASE("gamma admissibility") {
  for (int n = 0; n <= 4; ++n) {
    CHECK(gamma_admissible(spec_for(FamilyId::hermite()), n, 1.0));
    CHECK(gamma_admissible(spec_for(FamilyId::hermite()), n, -1.0));
    CHECK_FALSE(gamma_admissible(spec_for(FamilyId::hermite()), n, 0.8));
    CHECK_FALSE(gamma_admissible(spec_for(FamilyId::chebyshev()), n, 3.0));
    CHECK(gamma_admissible(spec_for(FamilyId::chebyshev()), n, 3.2));
    CHECK(gamma_admissible(spec_for(FamilyId::legendre()), n, -2.5));
    CHECK_FALSE(gamma_admissible(spec_for(FamilyId::legendre()), n, 1.9));
    CHECK_FALSE(gamma_admissible(spec_for(FamilyId::laguerre(0.0)), n, 0.5));
    CHECK(gamma_admissible(spec_for(FamilyId::bessel()), n, 0.0));
    CHECK_FALSE(gamma_admissible(spec_for(FamilyId::bessel()), n, -1.0));
  }
  CHECK(gamma_admissible(spec_for(FamilyId::laguerre(0.0)), 2, -1.0));
  CHECK_FALSE(gamma_admissible(spec_for(FamilyId::hermite()), 0, std::nan("")));
}

TEST_CASE("delta' = (a+ - a-)/sqrt(P) by central differences, n <= 8") {
  std::mt19937_64 rng(3);
  for (const FamilyId& f : all_families()) {
    const FamilySpec s = spec_for(f);
    const auto [lo, hi] = sample_range(s);
    std::uniform_real_distribution<double> u(lo, hi);
    CAPTURE(f.label());
    for (int n = 0; n <= 8; ++n) {
      if (f.kind() == FamilyKind::JacobiFunction && n > 6) break;
      for (int i = 0; i < 50; ++i) {
        const double x = u(rng);
        const double h = 1e-6 * std::min(1.0, std::min(x - s.domain.lo, s.domain.hi - x));
        const double fd = (s.eval_delta(n, x + h) - s.eval_delta(n, x - h)) / (2 * h);
        const double w = (s.eval_a_plus(n, x) - s.eval_a_minus(n, x)) / s.eval_sqrt_p(x);
        CHECK(std::abs(fd - w) <= 1e-6 * (1.0 + std::abs(fd)));
        const double direct = std::exp(s.eval_delta(n, x)) / s.eval_sqrt_p(x);
        CHECK(std::abs(s.denom_integrand(n, x) - direct) <= 1e-12 * std::abs(direct));
      }
    }
  }
}

TEST_CASE("boundary constants against independent closed forms") {
  for (int n = 0; n <= 6; ++n) {
    CAPTURE(n);
    const double leg = 2.0 * double_factorial(2 * n) / double_factorial(2 * n + 1);
    CHECK(spec_for(FamilyId::legendre()).gamma_rule.boundary(n) == doctest::Approx(leg).epsilon(1e-13));
    CHECK(reference_integral(spec_for(FamilyId::legendre()), n) == doctest::Approx(leg).epsilon(1e-9));

    const double cheb = std::numbers::pi * double_factorial(2 * n - 1) / double_factorial(2 * n);
    CHECK(spec_for(FamilyId::chebyshev()).gamma_rule.boundary(n) == doctest::Approx(cheb).epsilon(1e-13));
    CHECK(reference_integral(spec_for(FamilyId::chebyshev()), n) == doctest::Approx(cheb).epsilon(1e-9));

    CHECK(reference_integral(spec_for(FamilyId::hermite()), n) ==
          doctest::Approx(0.8862269254527580).epsilon(1e-9));
  }
  for (double alpha : {0.0, 0.5}) {
    for (int n = 0; n <= 4; ++n) {
      const double g = std::tgamma(alpha + 2 * n + 2);
      const FamilySpec s = spec_for(FamilyId::laguerre(alpha));
      CHECK(s.gamma_rule.boundary(n) == doctest::Approx(g).epsilon(1e-12));
      CHECK(reference_integral(s, n) == doctest::Approx(g).epsilon(1e-9));
    }
  }
  for (auto [a, b] : {std::pair{0.0, 0.0}, std::pair{0.5, -0.25}}) {
    const FamilySpec s = spec_for(FamilyId::jacobi_polynomial(a, b));
    for (int n = 0; n <= 3; ++n) {
      const double q = 2 * n + 2 + a + b;
      const double p = (b * b - a * a) / q;
      const double c = std::pow(2.0, q - 1) * std::tgamma((q + p) / 2) * std::tgamma((q - p) / 2) / std::tgamma(q);
      CHECK(s.gamma_rule.boundary(n) == doctest::Approx(c).epsilon(1e-12));
      CHECK(reference_integral(s, n) == doctest::Approx(c).epsilon(1e-9));
    }
  }
  const FamilySpec jf = spec_for(FamilyId::jacobi_function(2.5, 1.5));
  for (int n = 0; n <= 4; ++n) {
    const auto [u, v] = jacobi_function_uv(FamilyId::jacobi_function(2.5, 1.5), n);
    const double beta = std::tgamma(u) * std::tgamma(v - u) / std::tgamma(v);
    CHECK(jf.gamma_rule.boundary(n) == doctest::Approx(beta).epsilon(1e-12));
    CHECK(jf.gamma_rule.threshold(n) == doctest::Approx(2 * beta).epsilon(1e-12));
    CHECK(reference_integral(jf, n) == doctest::Approx(beta).epsilon(1e-9));
  }
  CHECK_THROWS_AS(reference_integral(spec_for(FamilyId::bessel()), 1), NotApplicable);
}

TEST_CASE("both orderings of the ladder operators share K_n") {
  for (const FamilyId& f : all_families()) {
    const FamilySpec s = spec_for(f);
    const auto [lo, hi] = sample_range(s);
    CAPTURE(f.label());
    for (int n = 0; n <= 5; ++n) {
      CHECK(s.k(n) == doctest::Approx(s.raise_coeff(n) * s.lower_coeff(n)));
      for (int i = 0; i <= 10; ++i) {
        const double x = lo + (hi - lo) * i / 10.0;
        const Jet<double, 2> pn = truncate<2>(eval_classical(f, n, x).jet());
        const Jet<double, 2> pn1 = truncate<2>(eval_classical(f, n + 1, x).jet());
        const double down_up =
            apply_A(s, Direction::Minus, n, apply_A(s, Direction::Plus, n, pn, x), x).value();
        const double up_down =
            apply_A(s, Direction::Plus, n, apply_A(s, Direction::Minus, n, pn1, x), x).value();
        // A^-A^+ = L_n + K_n and A^+A^- = L_{n+1} + K_n: the L terms set the scale.
        const auto terms = [&](const Jet<double, 2>& p, int m) {
          return std::max({std::abs(s.k(n) * p.value()), std::abs(s.eval_p(x) * p.derivative(2)),
                           std::abs(s.eval_q(x) * p.derivative(1)), std::abs(s.eval_r(m, x) * p.value())});
        };
        CHECK(std::abs(down_up - s.k(n) * pn.value()) <= 1e-10 * std::max(terms(pn, n), 1e-300));
        CHECK(std::abs(up_down - s.k(n) * pn1.value()) <= 1e-10 * std::max(terms(pn1, n + 1), 1e-300));
      }
    }
  }
}

TEST_CASE("index and parameter checks") {
  // u = [(n+α)(n+λ) + (n+1)(n+1+α-λ)]/(2n+α+1) < 0 here.
  const FamilySpec bad = spec_for(FamilyId::jacobi_function(-0.9, 5.0));
  CHECK_THROWS_AS(check_index(bad, 0), ParameterError);
  CHECK_THROWS_AS(check_index(spec_for(FamilyId::hermite()), -1), ParameterError);
  CHECK_NOTHROW(check_index(spec_for(FamilyId::jacobi_function(2.5, 1.5)), 6));
}
