#pragma once

#include <functional>
#include <limits>
#include <string_view>
#include <utility>

#include "isospec/family_id.hpp"
#include "isospec/jet.hpp"

namespace isospec {

struct Interval {
  double lo;
  double hi;

  bool contains(double x) const { return x > lo && x < hi; }
  double width() const { return hi - lo; }
};

enum class GammaBoundKind {
  AbsGreaterThan,  // |γ| > c(n)
  GreaterThan,     // γ > c(n)
  LessThan,        // γ < c(n)
  NonNegative,     // γ >= 0
};

std::string_view gamma_bound_kind_name(GammaBoundKind kind);

/// Admissible γ region for one family.
///
/// `threshold` is the constant in the family's stated condition and
/// `boundary` is the closed form of ∫ over [x0, domain end) of the
/// denominator integrand, i.e. the largest value the integral reaches.
/// The two coincide except where the stated condition is uniform in n
/// (Legendre |γ| > 2, Chebyshev γ > π, Laguerre γ < 0) or deliberately
/// conservative (Jacobi functions, 2B(u, v-u)).
struct GammaBound {
  GammaBoundKind kind = GammaBoundKind::NonNegative;
  std::function<double(int)> threshold;
  std::function<double(int)> boundary;

  bool admits(int n, double gamma) const;
};

using CoefficientFn = std::function<Jet3(const Jet3&)>;
using IndexedCoefficientFn = std::function<Jet3(int, const Jet3&)>;

/// Sturm-Liouville data and factorization closed forms of one family.
///
/// The operator is L_n = P d² + Q d + R_n with ladder operators
///   A_n^+     = √P d + a_plus(n, ·)     A_n^+ ψ_n = raise_coeff(n) ψ_{n+1}
///   A_{n+1}^- = √P d + a_minus(n, ·)    A_{n+1}^- ψ_{n+1} = lower_coeff(n) ψ_n
/// so that A_{n+1}^- A_n^+ = L_n + K_n and A_n^+ A_{n+1}^- = L_{n+1} + K_n.
/// √P is the positive root on the open domain.
struct FamilySpec {
  explicit FamilySpec(const FamilyId& id) : family(id) {}

  FamilyId family;

  CoefficientFn p;
  CoefficientFn sqrt_p;
  CoefficientFn q;
  IndexedCoefficientFn r;
  IndexedCoefficientFn a_plus;
  IndexedCoefficientFn a_minus;
  IndexedCoefficientFn delta;

  std::function<double(int)> k;
  std::function<double(int)> raise_coeff;
  std::function<double(int)> lower_coeff;

  /// e^{δ(y)}/√P(y) in closed form.
  std::function<double(int, double)> denom_integrand;
  /// Whether the integrand is non-smooth (fractional power) or singular at
  /// the domain ends; the quadrature removes square-root type behaviour there.
  std::function<std::pair<bool, bool>(int)> rough_ends;
  /// Finite upper limit standing in for an infinite domain end in the
  /// reference integral ∫_{x0}^{domain.hi}; tail below 1e-17 of the total.
  std::function<double(int)> reference_upper;

  /// Lower limit of the denominator integral (+inf for Bessel).
  double x0 = 0.0;
  Interval domain{};
  GammaBound gamma_rule{};

  /// Closed form of b_n^+(x; γ) when the family supplies one (Bessel).
  std::function<double(int, double, double)> closed_form_b;

  double eval_p(double x) const { return p(Jet3(x)).value(); }
  double eval_sqrt_p(double x) const { return sqrt_p(Jet3(x)).value(); }
  double eval_q(double x) const { return q(Jet3(x)).value(); }
  double eval_r(int n, double x) const { return r(n, Jet3(x)).value(); }
  double eval_a_plus(int n, double x) const { return a_plus(n, Jet3(x)).value(); }
  double eval_a_minus(int n, double x) const { return a_minus(n, Jet3(x)).value(); }
  double eval_delta(int n, double x) const { return delta(n, Jet3(x)).value(); }
};

FamilySpec spec_for(const FamilyId& family);

/// u and v of the Jacobi-function δ = u ln x + (v-u) ln(1-x).
std::pair<double, double> jacobi_function_uv(const FamilyId& family, int n);
/// p and q of the Jacobi-polynomial δ = ½(q+p) ln(1+x) + ½(q-p) ln(1-x).
std::pair<double, double> jacobi_polynomial_pq(const FamilyId& family, int n);

/// Throws ParameterError when the family's denominator integral is not
/// finite at index n (e.g. Jacobi-function exponents u <= 0 or v-u <= 0).
void check_index(const FamilySpec& spec, int n);

/// True iff γ satisfies the family's stated condition at index n and the
/// denominator γ - ∫_{x0}^x stays away from zero on a dense grid.
bool gamma_admissible(const FamilySpec& spec, int n, double gamma);

/// ∫_{x0}^{domain end} of the denominator integrand by adaptive quadrature.
double reference_integral(const FamilySpec& spec, int n);

}  // namespace isospec
