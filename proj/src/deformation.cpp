#include "isospec/deformation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "isospec/errors.hpp"

namespace isospec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string describe(const FamilySpec& spec, int n, double gamma) {
  return spec.family.label() + " n=" + std::to_string(n) + " gamma=" + std::to_string(gamma);
}

}  // namespace

DeformationContext::DeformationContext(FamilySpec spec, int n, double gamma, std::vector<double> grid, QuadOptions quad)
    : spec_(std::move(spec)), n_(n), gamma_(gamma), grid_(std::move(grid)), quad_(quad) {
  check_index(spec_, n_);
  if (!spec_.gamma_rule.admits(n_, gamma_)) {
    throw InadmissibleGamma(describe(spec_, n_, gamma_) + " violates the " +
                            std::string(gamma_bound_kind_name(spec_.gamma_rule.kind)) + " " +
                            std::to_string(spec_.gamma_rule.threshold(n_)) + " condition");
  }
  if (grid_.empty()) throw ParameterError("deformation context needs a non-empty grid");
  std::sort(grid_.begin(), grid_.end());
  for (double x : grid_) {
    if (!spec_.domain.contains(x)) {
      throw DomainError(spec_.family.label() + ": grid point " + std::to_string(x) + " outside open domain");
    }
  }

  if (spec_.closed_form_b) {
    min_abs_denominator_ = kInf;
    for (double x : grid_) min_abs_denominator_ = std::min(min_abs_denominator_, std::abs(denominator(x)));
    return;
  }

  if (!gamma_admissible(spec_, n_, gamma_)) {
    throw DenominatorVanishes(describe(spec_, n_, gamma_) + ": denominator reaches zero on the domain");
  }
  QuadOptions opt = quad_;
  opt.rough_lo = spec_.x0 == spec_.domain.lo && spec_.rough_ends(n_).first;
  integral_ = cumulative([this](double y) { return spec_.denom_integrand(n_, y); }, spec_.x0, grid_, opt);

  min_abs_denominator_ = kInf;
  const bool negative = std::signbit(gamma_ - integral_.front());
  for (double i : integral_) {
    const double d = gamma_ - i;
    min_abs_denominator_ = std::min(min_abs_denominator_, std::abs(d));
    if (std::signbit(d) != negative) {
      throw DenominatorVanishes(describe(spec_, n_, gamma_) + ": denominator changes sign on the grid");
    }
  }
  if (!(min_abs_denominator_ > 1e-8 * std::abs(gamma_))) {
    throw DenominatorVanishes(describe(spec_, n_, gamma_) + ": |denominator| below 1e-8 |gamma|");
  }
}

std::size_t DeformationContext::nearest_anchor(double x) const {
  const auto it = std::lower_bound(grid_.begin(), grid_.end(), x);
  if (it == grid_.begin()) return 0;
  if (it == grid_.end()) return grid_.size() - 1;
  const auto hi = static_cast<std::size_t>(it - grid_.begin());
  return (x - grid_[hi - 1] <= grid_[hi] - x) ? hi - 1 : hi;
}

double DeformationContext::integral_from_anchor(std::size_t anchor, double x) const {
  const double a = grid_[anchor];
  if (x == a) return integral_[anchor];
  const auto f = [this](double y) { return spec_.denom_integrand(n_, y); };
  QuadOptions opt = quad_;
  opt.rough_lo = false;
  opt.rough_hi = false;
  if (x > a) return integral_[anchor] + integrate(f, a, x, opt).value;
  return integral_[anchor] - integrate(f, x, a, opt).value;
}

double DeformationContext::denominator(double x) const {
  if (spec_.closed_form_b) {
    if (n_ == 0) return kInf;
    const double m = 2.0 * n_;
    return gamma_ / m + std::pow(x, -m) / m;
  }
  return gamma_ - integral_from_anchor(nearest_anchor(x), x);
}

std::vector<double> DeformationContext::denominators(std::span<const double> xs) const {
  std::vector<double> out;
  out.reserve(xs.size());
  if (xs.empty()) return out;
  if (spec_.closed_form_b) {
    for (double x : xs) out.push_back(denominator(x));
    return out;
  }
  const std::size_t anchor = nearest_anchor(xs.front());
  for (double x : xs) out.push_back(gamma_ - integral_from_anchor(anchor, x));
  return out;
}

double DeformationContext::b_from_denominator(double x, double d) const {
  if (spec_.closed_form_b) return spec_.closed_form_b(n_, gamma_, x);
  return std::exp(spec_.eval_delta(n_, x)) / d;
}

double DeformationContext::b(double x) const { return b_from_denominator(x, denominator(x)); }

std::vector<double> DeformationContext::b_values(std::span<const double> xs) const {
  const std::vector<double> d = denominators(xs);
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = b_from_denominator(xs[i], d[i]);
  return out;
}

Jet3 DeformationContext::riccati_jet(double x, double b0) const {
  const Jet3 s = sqrt_p_jet(x);
  const Jet3 w = a_plus_jet(x) - a_minus_jet(x);
  Jet3 b(b0);
  // s b' = b² + w b, solved one Taylor coefficient at a time.
  for (int k = 0; k < Jet3::order; ++k) {
    double rhs = 0.0;
    for (int i = 0; i <= k; ++i) rhs += (b.coeff(i) + w.coeff(i)) * b.coeff(k - i);
    for (int i = 1; i <= k; ++i) rhs -= s.coeff(i) * (k - i + 1) * b.coeff(k - i + 1);
    b.coeff(k + 1) = rhs / (s.coeff(0) * (k + 1));
  }
  return b;
}

Jet3 DeformationContext::b_jet(double x) const { return riccati_jet(x, b(x)); }

DeformationContext make_context(const FamilyId& family, int n, double gamma, const GridSpec& grid) {
  return DeformationContext(spec_for(family), n, gamma, grid.points());
}

BEval eval_b(const DeformationContext& ctx, double x) {
  const Jet3 b = ctx.b_jet(x);
  return {b.value(), b.derivative(1)};
}

Jet3 psi_tilde_jet(const DeformationContext& ctx, double x) {
  const FamilySpec& spec = ctx.spec();
  const int n = ctx.n();
  const Jet3 lower = eval_classical(spec.family, n, x).jet();
  const Jet3 upper = eval_classical(spec.family, n + 1, x).jet();
  return spec.raise_coeff(n) * upper + ctx.b_jet(x) * lower;
}

DeformedEval eval_psi_tilde(const DeformationContext& ctx, double x) {
  const Jet3 b = ctx.b_jet(x);
  const Jet3 psi = psi_tilde_jet(ctx, x);
  return {x, b.value(), b.derivative(1), psi.value(), psi.derivative(1), psi.derivative(2)};
}

double apply_L_tilde(const DeformationContext& ctx, const Jet<double, 2>& f, double x) {
  const FamilySpec& spec = ctx.spec();
  const double db = ctx.b_jet(x).derivative(1);
  return spec.eval_p(x) * f.derivative(2) + spec.eval_q(x) * f.derivative(1) +
         (spec.eval_r(ctx.n() + 1, x) - 2.0 * spec.eval_sqrt_p(x) * db) * f.value();
}

DeformationContext DeformationChain::build_lower(const FamilyId& family, int n, double gamma, const GridSpec& grid) {
  if (n < 1) {
    throw IndexError("third-order ladder operators need n >= 1: B_{n+1}^- is not defined for n = 0");
  }
  return make_context(family, n - 1, gamma, grid);
}

DeformationChain::DeformationChain(const FamilyId& family, int n, double gamma, const GridSpec& grid)
    : lower_(build_lower(family, n, gamma, grid)), upper_(make_context(family, n, gamma, grid)) {}

double apply_C(const DeformationChain& chain, Direction dir, const Jet3& f, double x) {
  const FamilySpec& spec = chain.upper().spec();
  const int n = chain.n();
  if (dir == Direction::Plus) {
    // B_n^+ A_{n-1}^+ B_n^-; B_n^- = A_n^- - b_{n-1}^+ is the lower context's minus operator.
    const auto g1 = apply_B(chain.lower(), Direction::Minus, f, x);
    const auto g2 = apply_A(spec, Direction::Plus, n - 1, g1, x);
    return apply_B(chain.upper(), Direction::Plus, g2, x).value();
  }
  // B_{n-1}^+ A_n^- B_{n+1}^-; A_n^- lowers ψ_n, i.e. a_minus at index n-1.
  const auto g1 = apply_B(chain.upper(), Direction::Minus, f, x);
  const auto g2 = apply_A(spec, Direction::Minus, n - 1, g1, x);
  return apply_B(chain.lower(), Direction::Plus, g2, x).value();
}

}  // namespace isospec
