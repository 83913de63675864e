#pragma once

#include <span>
#include <vector>

#include "isospec/classical.hpp"
#include "isospec/families.hpp"
#include "isospec/grid.hpp"
#include "isospec/jet.hpp"
#include "isospec/quadrature.hpp"

namespace isospec {

enum class Direction { Plus, Minus };

/// A family bound to an index n and deformation parameter γ.
///
/// Caches ∫_{x0}^{x} e^{δ}/√P on the working grid so that the denominator
/// D(x) = γ - ∫_{x0}^{x} e^{δ(y)}/√P(y) dy costs one short panel anywhere
/// near the grid. Immutable after construction.
class DeformationContext {
 public:
  /// Throws InadmissibleGamma when γ violates the family's condition,
  /// DenominatorVanishes when D comes within 1e-8·|γ| of zero on the grid and
  /// DomainError when a grid point is outside the open domain.
  DeformationContext(FamilySpec spec, int n, double gamma, std::vector<double> grid,
                     QuadOptions quad = default_quad_options());

  const FamilySpec& spec() const { return spec_; }
  int n() const { return n_; }
  double gamma() const { return gamma_; }
  std::span<const double> grid() const { return grid_; }

  /// D(x); +inf for Bessel at n = 0 where b vanishes identically.
  double denominator(double x) const;
  /// D at each point, all measured from the grid anchor nearest to the first
  /// point, so quadrature error is a common offset across a stencil.
  std::vector<double> denominators(std::span<const double> xs) const;
  double min_abs_denominator() const { return min_abs_denominator_; }

  double b(double x) const;
  /// b at each point with a shared anchor (see `denominators`).
  std::vector<double> b_values(std::span<const double> xs) const;

  /// Taylor jet of b_n^+ at x: value from the closed form / integral, higher
  /// coefficients from √P b' = b² + b (a_n^+ - a_{n+1}^-).
  Jet3 b_jet(double x) const;
  Jet3 riccati_jet(double x, double b0) const;

  Jet3 sqrt_p_jet(double x) const { return spec_.sqrt_p(Jet3::variable(x)); }
  Jet3 a_plus_jet(double x) const { return spec_.a_plus(n_, Jet3::variable(x)); }
  Jet3 a_minus_jet(double x) const { return spec_.a_minus(n_, Jet3::variable(x)); }

 private:
  double integral_from_anchor(std::size_t anchor, double x) const;
  std::size_t nearest_anchor(double x) const;
  double b_from_denominator(double x, double d) const;

  FamilySpec spec_;
  int n_;
  double gamma_;
  std::vector<double> grid_;
  std::vector<double> integral_;
  QuadOptions quad_;
  double min_abs_denominator_ = 0.0;
};

DeformationContext make_context(const FamilyId& family, int n, double gamma, const GridSpec& grid);

struct BEval {
  double b;
  double db;
};

BEval eval_b(const DeformationContext& ctx, double x);

struct DeformedEval {
  double x = 0.0;
  double b = 0.0;
  double db = 0.0;
  double psi_tilde = 0.0;
  double psi_tilde_d1 = 0.0;
  double psi_tilde_d2 = 0.0;
};

/// ψ̃_{n+1} = B_n^+ ψ_n = raise_coeff(n) ψ_{n+1} + b ψ_n with two derivatives.
DeformedEval eval_psi_tilde(const DeformationContext& ctx, double x);
/// Same, as a third-order jet.
Jet3 psi_tilde_jet(const DeformationContext& ctx, double x);

/// s f' + c f for jets; the result loses one order.
template <int N>
Jet<double, N - 1> first_order(const Jet3& s, const Jet3& c, const Jet<double, N>& f) {
  static_assert(N >= 1 && N <= 4, "first_order needs 1 <= N <= 4");
  return truncate<N - 1>(s) * differentiate(f) + truncate<N - 1>(c) * truncate<N - 1>(f);
}

/// A_n^+ (Plus) or A_{n+1}^- (Minus) of the undeformed factorization.
template <int N>
Jet<double, N - 1> apply_A(const FamilySpec& spec, Direction dir, int n, const Jet<double, N>& f, double x) {
  const Jet3 xv = Jet3::variable(x);
  const Jet3 c = dir == Direction::Plus ? spec.a_plus(n, xv) : spec.a_minus(n, xv);
  return first_order(spec.sqrt_p(xv), c, f);
}

/// B_n^+ = A_n^+ + b_n^+ (Plus) or B_{n+1}^- = A_{n+1}^- - b_n^+ (Minus).
template <int N>
Jet<double, N - 1> apply_B(const DeformationContext& ctx, Direction dir, const Jet<double, N>& f, double x) {
  const Jet3 b = ctx.b_jet(x);
  const Jet3 c = dir == Direction::Plus ? ctx.a_plus_jet(x) + b : ctx.a_minus_jet(x) - b;
  return first_order(ctx.sqrt_p_jet(x), c, f);
}

/// 𝓛̃_{n+1} f = P f'' + Q f' + R_{n+1} f - 2 √P b' f.
double apply_L_tilde(const DeformationContext& ctx, const Jet<double, 2>& f, double x);

/// Contexts at n-1 and n (same family and γ) for the third-order operators
///   C_n^+     = B_n^+ A_{n-1}^+ B_n^-        acting on ψ̃_n
///   C_{n+1}^- = B_{n-1}^+ A_n^- B_{n+1}^-    acting on ψ̃_{n+1}
/// Both need n >= 1: B_n^- involves b_{n-1}^+.
class DeformationChain {
 public:
  /// Throws IndexError for n < 1.
  DeformationChain(const FamilyId& family, int n, double gamma, const GridSpec& grid);

  int n() const { return upper_.n(); }
  const DeformationContext& lower() const { return lower_; }  // index n-1
  const DeformationContext& upper() const { return upper_; }  // index n

 private:
  static DeformationContext build_lower(const FamilyId& family, int n, double gamma, const GridSpec& grid);

  DeformationContext lower_;
  DeformationContext upper_;
};

/// Plus: C_n^+ f. Minus: C_{n+1}^- f. f carries three derivatives.
double apply_C(const DeformationChain& chain, Direction dir, const Jet3& f, double x);

}  // namespace isospec
