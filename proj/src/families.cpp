#include "isospec/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "isospec/errors.hpp"
#include "isospec/quadrature.hpp"

namespace isospec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// True when y^e is not a polynomial factor at y = 0 (fractional or negative power).
bool rough_power(double e) { return e < 0.0 || e != std::floor(e); }

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

// Smallest T >= start with 2 T^m e^{-T} below 1e-17 of Γ(m+1), the bound on
// ∫_T^∞ y^m e^{-y} dy once T >= 2(m+1).
double gamma_tail_cutoff(double m) {
  const double target = std::log(1e-17) + std::lgamma(m + 1.0) - std::log(2.0);
  double t = std::max(2.0 * (m + 1.0), 10.0);
  while (m * std::log(t) - t > target) t += 1.0;
  return t;
}

FamilySpec hermite_spec(const FamilyId& id) {
  FamilySpec s(id);
  s.p = [](const Jet3&) { return Jet3(1.0); };
  s.sqrt_p = [](const Jet3&) { return Jet3(1.0); };
  s.q = [](const Jet3& x) { return -2.0 * x; };
  s.r = [](int n, const Jet3&) { return Jet3(2.0 * n); };
  s.a_plus = [](int, const Jet3& x) { return -2.0 * x; };
  s.a_minus = [](int, const Jet3&) { return Jet3(0.0); };
  s.delta = [](int, const Jet3& x) { return -(x * x); };
  s.k = [](int n) { return -2.0 * (n + 1); };
  s.raise_coeff = [](int) { return -1.0; };
  s.lower_coeff = [](int n) { return 2.0 * (n + 1); };
  s.denom_integrand = [](int, double y) { return std::exp(-y * y); };
  s.rough_ends = [](int) { return std::pair{false, false}; };
  // e^{-T²}/(2T) < 1e-17 · √π/2
  s.reference_upper = [](int) { return 6.5; };
  s.x0 = 0.0;
  s.domain = {-kInf, kInf};
  constexpr double half_sqrt_pi = 0.886226925452758013649;  // √π/2, correctly rounded
  s.gamma_rule = {GammaBoundKind::AbsGreaterThan, [=](int) { return half_sqrt_pi; },
                  [=](int) { return half_sqrt_pi; }};
  return s;
}

FamilySpec laguerre_spec(const FamilyId& id) {
  const double a = id.alpha();
  FamilySpec s(id);
  s.p = [](const Jet3& x) { return x * x; };
  s.sqrt_p = [](const Jet3& x) { return x; };
  s.q = [a](const Jet3& x) { return (a + 1.0) * x - x * x; };
  s.r = [](int n, const Jet3& x) { return double(n) * x; };
  s.a_plus = [a](int n, const Jet3& x) { return (a + n + 1.0) - x; };
  s.a_minus = [](int n, const Jet3&) { return Jet3(-(n + 1.0)); };
  s.delta = [a](int n, const Jet3& x) { return (a + 2.0 * (n + 1)) * log(x) - x; };
  s.k = [a](int n) { return -(n + 1.0) * (a + n + 1.0); };
  s.raise_coeff = [](int n) { return n + 1.0; };
  s.lower_coeff = [a](int n) { return -(a + n + 1.0); };
  s.denom_integrand = [a](int n, double y) { return std::pow(y, a + 2 * n + 1) * std::exp(-y); };
  s.rough_ends = [a](int n) { return std::pair{rough_power(a + 2 * n + 1), false}; };
  s.reference_upper = [a](int n) { return gamma_tail_cutoff(a + 2 * n + 1); };
  s.x0 = 0.0;
  s.domain = {0.0, kInf};
  s.gamma_rule = {GammaBoundKind::LessThan, [](int) { return 0.0; },
                  [a](int n) { return std::exp(std::lgamma(a + 2 * n + 2)); }};
  return s;
}

FamilySpec legendre_spec(const FamilyId& id) {
  FamilySpec s(id);
  s.p = [](const Jet3& x) { return ipow(1.0 - x * x, 2); };
  s.sqrt_p = [](const Jet3& x) { return 1.0 - x * x; };
  s.q = [](const Jet3& x) { return -2.0 * x * (1.0 - x * x); };
  s.r = [](int n, const Jet3& x) { return double(n) * (n + 1.0) * (1.0 - x * x); };
  s.a_plus = [](int n, const Jet3& x) { return -(n + 1.0) * x; };
  s.a_minus = [](int n, const Jet3& x) { return (n + 1.0) * x; };
  s.delta = [](int n, const Jet3& x) { return (n + 1.0) * log(1.0 - x * x); };
  s.k = [](int n) { return -(n + 1.0) * (n + 1.0); };
  s.raise_coeff = [](int n) { return -(n + 1.0); };
  s.lower_coeff = [](int n) { return n + 1.0; };
  s.denom_integrand = [](int n, double y) { return ipow(1.0 - y * y, n); };
  s.rough_ends = [](int) { return std::pair{false, false}; };
  s.reference_upper = [](int) { return 1.0; };
  s.x0 = -1.0;
  s.domain = {-1.0, 1.0};
  // 2 (2n)!!/(2n+1)!! = √π n!/Γ(n+3/2)
  s.gamma_rule = {GammaBoundKind::AbsGreaterThan, [](int) { return 2.0; }, [](int n) {
                    return std::exp(0.5 * std::log(std::numbers::pi) + std::lgamma(n + 1.0) - std::lgamma(n + 1.5));
                  }};
  return s;
}

FamilySpec chebyshev_spec(const FamilyId& id) {
  FamilySpec s(id);
  s.p = [](const Jet3& x) { return ipow(1.0 - x * x, 2); };
  s.sqrt_p = [](const Jet3& x) { return 1.0 - x * x; };
  s.q = [](const Jet3& x) { return -1.0 * x * (1.0 - x * x); };
  s.r = [](int n, const Jet3& x) { return double(n) * n * (1.0 - x * x); };
  s.a_plus = [](int n, const Jet3& x) { return -double(n) * x; };
  s.a_minus = [](int n, const Jet3& x) { return (n + 1.0) * x; };
  s.delta = [](int n, const Jet3& x) { return (n + 0.5) * log(1.0 - x * x); };
  s.k = [](int n) { return -double(n) * (n + 1.0); };
  s.raise_coeff = [](int n) { return -double(n); };
  s.lower_coeff = [](int n) { return n + 1.0; };
  s.denom_integrand = [](int n, double y) { return std::pow(1.0 - y * y, n - 0.5); };
  s.rough_ends = [](int) { return std::pair{true, true}; };
  s.reference_upper = [](int) { return 1.0; };
  s.x0 = -1.0;
  s.domain = {-1.0, 1.0};
  // π (2n-1)!!/(2n)!! = √π Γ(n+1/2)/n!
  s.gamma_rule = {GammaBoundKind::GreaterThan, [](int) { return std::numbers::pi; }, [](int n) {
                    return std::exp(0.5 * std::log(std::numbers::pi) + std::lgamma(n + 0.5) - std::lgamma(n + 1.0));
                  }};
  return s;
}

FamilySpec jacobi_function_spec(const FamilyId& id) {
  const double a = id.alpha();
  const double l = id.lambda();
  auto uv = [id](int n) { return jacobi_function_uv(id, n); };
  FamilySpec s(id);
  s.p = [](const Jet3& x) { return ipow(x * (1.0 - x), 2); };
  s.sqrt_p = [](const Jet3& x) { return x * (1.0 - x); };
  s.q = [a, l](const Jet3& x) { return x * (1.0 - x) * (l - (a + 1.0) * x); };
  s.r = [a](int n, const Jet3& x) { return x * (1.0 - x) * (n * (n + a)); };
  s.a_plus = [a, l](int n, const Jet3& x) {
    const double v = 2.0 * n + a + 1.0;
    return -(n + a) * (x - (n + l) / v);
  };
  s.a_minus = [a, l](int n, const Jet3& x) {
    const double v = 2.0 * n + a + 1.0;
    return (n + 1.0) * (x - (n + 1.0 + a - l) / v);
  };
  s.delta = [uv](int n, const Jet3& x) {
    const auto [u, v] = uv(n);
    return u * log(x) + (v - u) * log(1.0 - x);
  };
  s.raise_coeff = [a, l](int n) { return (n + a) * (n + l) / (2.0 * n + a + 1.0); };
  s.lower_coeff = [a, l](int n) { return -(n + 1.0) * (n + 1.0 + a - l) / (2.0 * n + a + 1.0); };
  s.k = [rc = s.raise_coeff, lc = s.lower_coeff](int n) { return rc(n) * lc(n); };
  s.denom_integrand = [uv](int n, double y) {
    const auto [u, v] = uv(n);
    return std::pow(y, u - 1.0) * std::pow(1.0 - y, v - u - 1.0);
  };
  s.rough_ends = [uv](int n) {
    const auto [u, v] = uv(n);
    return std::pair{rough_power(u - 1.0), rough_power(v - u - 1.0)};
  };
  s.reference_upper = [](int) { return 1.0; };
  s.x0 = 0.0;
  s.domain = {0.0, 1.0};
  s.gamma_rule = {GammaBoundKind::AbsGreaterThan,
                  [uv](int n) {
                    const auto [u, v] = uv(n);
                    return 2.0 * std::exp(log_beta(u, v - u));
                  },
                  [uv](int n) {
                    const auto [u, v] = uv(n);
                    return std::exp(log_beta(u, v - u));
                  }};
  return s;
}

FamilySpec jacobi_polynomial_spec(const FamilyId& id) {
  const double a = id.alpha();
  const double b = id.beta();
  auto pq = [id](int n) { return jacobi_polynomial_pq(id, n); };
  FamilySpec s(id);
  s.p = [](const Jet3& x) { return ipow(1.0 - x * x, 2); };
  s.sqrt_p = [](const Jet3& x) { return 1.0 - x * x; };
  s.q = [a, b](const Jet3& x) { return (1.0 - x * x) * ((b - a) - (a + b + 2.0) * x); };
  s.r = [a, b](int n, const Jet3& x) { return (1.0 - x * x) * (n * (n + a + b + 1.0)); };
  s.a_plus = [a, b](int n, const Jet3& x) {
    const double q = 2.0 * n + 2.0 + a + b;
    return (n + 1.0 + a + b) * ((b - a) / q - x);
  };
  s.a_minus = [a, b](int n, const Jet3& x) {
    const double q = 2.0 * n + 2.0 + a + b;
    return (n + 1.0) * (x + (b - a) / q);
  };
  s.delta = [pq](int n, const Jet3& x) {
    const auto [p, q] = pq(n);
    return 0.5 * (q + p) * log(1.0 + x) + 0.5 * (q - p) * log(1.0 - x);
  };
  s.raise_coeff = [a, b](int n) { return -2.0 * (n + 1.0) * (n + 1.0 + a + b) / (2.0 * n + 2.0 + a + b); };
  s.lower_coeff = [a, b](int n) { return 2.0 * (n + 1.0 + a) * (n + 1.0 + b) / (2.0 * n + 2.0 + a + b); };
  s.k = [rc = s.raise_coeff, lc = s.lower_coeff](int n) { return rc(n) * lc(n); };
  s.denom_integrand = [pq](int n, double y) {
    const auto [p, q] = pq(n);
    return std::pow(1.0 + y, 0.5 * (q + p) - 1.0) * std::pow(1.0 - y, 0.5 * (q - p) - 1.0);
  };
  s.rough_ends = [pq](int n) {
    const auto [p, q] = pq(n);
    return std::pair{rough_power(0.5 * (q + p) - 1.0), rough_power(0.5 * (q - p) - 1.0)};
  };
  s.reference_upper = [](int) { return 1.0; };
  s.x0 = -1.0;
  s.domain = {-1.0, 1.0};
  // 2^{q-1} Γ((q+p)/2) Γ((q-p)/2) / Γ(q)
  auto constant = [pq](int n) {
    const auto [p, q] = pq(n);
    return std::exp((q - 1.0) * std::log(2.0) + log_beta(0.5 * (q + p), 0.5 * (q - p)));
  };
  s.gamma_rule = {GammaBoundKind::GreaterThan, constant, constant};
  return s;
}

FamilySpec bessel_spec(const FamilyId& id) {
  FamilySpec s(id);
  s.p = [](const Jet3&) { return Jet3(1.0); };
  s.sqrt_p = [](const Jet3&) { return Jet3(1.0); };
  s.q = [](const Jet3& x) { return 1.0 / x; };
  s.r = [](int n, const Jet3& x) { return 1.0 - double(n) * n / (x * x); };
  s.a_plus = [](int n, const Jet3& x) { return -double(n) / x; };
  s.a_minus = [](int n, const Jet3& x) { return (n + 1.0) / x; };
  s.delta = [](int n, const Jet3& x) { return -(2.0 * n + 1.0) * log(x); };
  s.k = [](int) { return -1.0; };
  s.raise_coeff = [](int) { return -1.0; };
  s.lower_coeff = [](int) { return 1.0; };
  s.denom_integrand = [](int n, double y) { return std::pow(y, -(2.0 * n + 1.0)); };
  s.rough_ends = [](int) { return std::pair{false, false}; };
  s.reference_upper = [](int) { return kInf; };
  s.x0 = kInf;
  s.domain = {0.0, kInf};
  s.gamma_rule = {GammaBoundKind::NonNegative, [](int) { return 0.0; }, [](int) { return 0.0; }};
  // γ = 2n γ' where γ' is the integration constant of the ∫_∞^x form.
  s.closed_form_b = [](int n, double gamma, double x) { return 2.0 * n / (gamma * std::pow(x, 2 * n + 1) + x); };
  return s;
}

}  // namespace

std::string_view gamma_bound_kind_name(GammaBoundKind kind) {
  switch (kind) {
    case GammaBoundKind::AbsGreaterThan:
      return "abs-greater-than";
    case GammaBoundKind::GreaterThan:
      return "greater-than";
    case GammaBoundKind::LessThan:
      return "less-than";
    case GammaBoundKind::NonNegative:
      return "non-negative";
  }
  return "unknown";
}

bool GammaBound::admits(int n, double gamma) const {
  if (!std::isfinite(gamma)) return false;
  switch (kind) {
    case GammaBoundKind::AbsGreaterThan:
      return std::abs(gamma) > threshold(n);
    case GammaBoundKind::GreaterThan:
      return gamma > threshold(n);
    case GammaBoundKind::LessThan:
      return gamma < threshold(n);
    case GammaBoundKind::NonNegative:
      return gamma >= 0.0;
  }
  return false;
}

std::pair<double, double> jacobi_function_uv(const FamilyId& family, int n) {
  const double a = family.alpha();
  const double l = family.lambda();
  const double v = 2.0 * n + a + 1.0;
  const double u = ((n + a) * (n + l) + (n + 1.0) * (n + 1.0 + a - l)) / v;
  return {u, v};
}

std::pair<double, double> jacobi_polynomial_pq(const FamilyId& family, int n) {
  const double a = family.alpha();
  const double b = family.beta();
  const double q = 2.0 * n + 2.0 + a + b;
  return {(b * b - a * a) / q, q};
}

FamilySpec spec_for(const FamilyId& family) {
  switch (family.kind()) {
    case FamilyKind::Hermite:
      return hermite_spec(family);
    case FamilyKind::Laguerre:
      return laguerre_spec(family);
    case FamilyKind::Legendre:
      return legendre_spec(family);
    case FamilyKind::Chebyshev:
      return chebyshev_spec(family);
    case FamilyKind::JacobiFunction:
      return jacobi_function_spec(family);
    case FamilyKind::JacobiPolynomial:
      return jacobi_polynomial_spec(family);
    case FamilyKind::Bessel:
      return bessel_spec(family);
  }
  throw ParameterError("unknown family");
}

void check_index(const FamilySpec& spec, int n) {
  if (n < 0) throw ParameterError("index n must be >= 0");
  if (spec.family.kind() == FamilyKind::JacobiFunction) {
    const auto [u, v] = jacobi_function_uv(spec.family, n);
    if (!(u > 0.0) || !(v - u > 0.0)) {
      throw ParameterError(spec.family.label() + ": need u > 0 and v > u at n=" + std::to_string(n));
    }
  }
  if (spec.family.kind() == FamilyKind::JacobiPolynomial) {
    const auto [p, q] = jacobi_polynomial_pq(spec.family, n);
    if (!(q + p > 0.0) || !(q - p > 0.0)) {
      throw ParameterError(spec.family.label() + ": need q > |p| at n=" + std::to_string(n));
    }
  }
}

double reference_integral(const FamilySpec& spec, int n) {
  check_index(spec, n);
  if (spec.closed_form_b) throw NotApplicable("reference integral diverges for " + spec.family.label());
  const double upper = std::isfinite(spec.domain.hi) ? spec.domain.hi : spec.reference_upper(n);
  const auto [rough_lo, rough_hi] = spec.rough_ends(n);
  QuadOptions opt = default_quad_options();
  opt.rough_lo = spec.x0 == spec.domain.lo && rough_lo;
  opt.rough_hi = std::isfinite(spec.domain.hi) && rough_hi;
  return integrate([&](double y) { return spec.denom_integrand(n, y); }, spec.x0, upper, opt).value;
}

bool gamma_admissible(const FamilySpec& spec, int n, double gamma) {
  try {
    check_index(spec, n);
  } catch (const ParameterError&) {
    return false;
  }
  if (!spec.gamma_rule.admits(n, gamma)) return false;
  if (spec.closed_form_b) return true;  // γ x^{2n+1} + x > 0 for γ >= 0, x > 0

  constexpr int kPoints = 256;
  const double lo = std::isfinite(spec.domain.lo) ? spec.domain.lo : -spec.reference_upper(n);
  const double hi = std::isfinite(spec.domain.hi) ? spec.domain.hi : spec.reference_upper(n);
  std::vector<double> xs(kPoints);
  for (int i = 0; i < kPoints; ++i) xs[i] = lo + (hi - lo) * (i + 0.5) / kPoints;

  QuadOptions opt = default_quad_options();
  opt.rough_lo = spec.x0 == spec.domain.lo && spec.rough_ends(n).first;
  std::vector<double> integral;
  try {
    integral = cumulative([&](double y) { return spec.denom_integrand(n, y); }, spec.x0, xs, opt);
    integral.push_back(reference_integral(spec, n));
    if (spec.x0 > lo) {
      // Hermite: the integral also reaches its minimum at the far left end.
      QuadOptions left = default_quad_options();
      integral.push_back(-integrate([&](double y) { return spec.denom_integrand(n, y); }, lo, spec.x0, left).value);
    }
  } catch (const NumericalError&) {
    return false;
  }
  const double floor = 1e-8 * std::abs(gamma);
  const double first = gamma - integral.front();
  for (double i : integral) {
    const double d = gamma - i;
    if (std::abs(d) <= floor || std::signbit(d) != std::signbit(first)) return false;
  }
  return true;
}

}  // namespace isospec
