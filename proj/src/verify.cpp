#include "isospec/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "isospec/classical.hpp"
#include "isospec/deformation.hpp"
#include "isospec/errors.hpp"
#include "isospec/quadrature.hpp"

namespace isospec {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kHuge = std::numeric_limits<double>::max();

constexpr std::array kIdentities = {
    Identity::ClassicalODE,       Identity::LadderRaise,     Identity::LadderLower,
    Identity::DeltaConsistency,   Identity::RiccatiB,        Identity::FactorizationBB,
    Identity::AnnihilationLtilde, Identity::AnnihilationLtildeFD, Identity::EigenvalueBB,
    Identity::GammaBoundQuadrature, Identity::LimitGammaInf, Identity::BesselClosedForm,
    Identity::BesselGammaZero,    Identity::CLadderPlus,     Identity::CLadderMinus,
};

// Largest residual and largest term magnitude over the grid.
struct Accumulator {
  double max_abs = 0.0;
  double scale = 0.0;

  void add(double residual, std::initializer_list<double> terms) {
    max_abs = std::isnan(residual) ? residual : std::max(max_abs, std::abs(residual));
    for (double t : terms) scale = std::max(scale, std::abs(t));
  }
  double rel() const { return max_abs == 0.0 ? 0.0 : max_abs / scale; }
};

void finish(ResidualReport& r, double max_abs, double max_rel, double scale) {
  if (!std::isfinite(max_abs) || !std::isfinite(max_rel)) {
    r.note = r.note.empty() ? "non-finite residual" : r.note + "; non-finite residual";
    max_abs = kHuge;
    max_rel = kHuge;
  }
  r.max_abs_residual = max_abs;
  r.max_rel_residual = max_rel;
  r.scale = (std::isfinite(scale) && scale > 0.0) ? scale : 1.0;
  r.pass = r.max_rel_residual <= r.tolerance;
}

void finish(ResidualReport& r, const Accumulator& acc) { finish(r, acc.max_abs, acc.rel(), acc.scale); }

// min(1, distance to the nearest finite domain end).
double local_scale(const FamilySpec& spec, double x) {
  double l = 1.0;
  if (std::isfinite(spec.domain.lo)) l = std::min(l, x - spec.domain.lo);
  if (std::isfinite(spec.domain.hi)) l = std::min(l, spec.domain.hi - x);
  return l;
}

double step_first(const FamilySpec& spec, double x) { return std::cbrt(kEps) * local_scale(spec, x); }
double step_second(const FamilySpec& spec, double x) { return std::sqrt(std::sqrt(kEps)) * local_scale(spec, x); }

template <int N>
Jet<double, N> magnitude(const Jet<double, N>& j) {
  Jet<double, N> m(0.0);
  for (int k = 0; k <= N; ++k) m.coeff(k) = std::abs(j.coeff(k));
  return m;
}

double psi(const FamilyId& family, int n, double x) { return eval_classical(family, n, x).value; }

std::vector<double> sorted_points(const GridSpec& grid) {
  std::vector<double> xs = grid.points();
  std::sort(xs.begin(), xs.end());
  return xs;
}

void check_grid_in_domain(const FamilySpec& spec, std::span<const double> xs) {
  for (double x : xs) {
    if (!spec.domain.contains(x)) {
      throw DomainError(spec.family.label() + ": grid point " + std::to_string(x) + " outside open domain");
    }
  }
}

double require_gamma(Identity id, std::optional<double> gamma) {
  if (!gamma) throw ParameterError(std::string(identity_name(id)) + " needs a gamma value");
  return *gamma;
}

// ---- classical identities ----

void run_classical_ode(ResidualReport& r, const FamilySpec& spec, int n, std::span<const double> xs) {
  Accumulator acc;
  for (double x : xs) {
    const ClassicalEval e = eval_classical(spec.family, n, x);
    const double t1 = spec.eval_p(x) * e.d2;
    const double t2 = spec.eval_q(x) * e.d1;
    const double t3 = spec.eval_r(n, x) * e.value;
    acc.add(t1 + t2 + t3, {t1, t2, t3});
  }
  finish(r, acc);
}

void run_ladder(ResidualReport& r, const FamilySpec& spec, int n, bool raise, std::span<const double> xs) {
  Accumulator acc;
  for (double x : xs) {
    const ClassicalEval from = eval_classical(spec.family, raise ? n : n + 1, x);
    const double to = psi(spec.family, raise ? n + 1 : n, x);
    const double t1 = spec.eval_sqrt_p(x) * from.d1;
    const double t2 = (raise ? spec.eval_a_plus(n, x) : spec.eval_a_minus(n, x)) * from.value;
    const double t3 = (raise ? spec.raise_coeff(n) : spec.lower_coeff(n)) * to;
    acc.add(t1 + t2 - t3, {t1, t2, t3});
  }
  finish(r, acc);
}

void run_delta(ResidualReport& r, const FamilySpec& spec, int n, std::span<const double> xs) {
  Accumulator slope;
  double integrand_rel = 0.0;
  double integrand_abs = 0.0;
  for (double x : xs) {
    const double h = step_first(spec, x);
    const double fd = (spec.eval_delta(n, x + h) - spec.eval_delta(n, x - h)) / (2.0 * h);
    const double s = spec.eval_sqrt_p(x);
    const double w = (spec.eval_a_plus(n, x) - spec.eval_a_minus(n, x)) / s;
    slope.add(fd - w, {fd, w});
    const double direct = std::exp(spec.eval_delta(n, x)) / s;
    const double diff = std::abs(spec.denom_integrand(n, x) - direct);
    integrand_abs = std::max(integrand_abs, diff);
    if (direct != 0.0) integrand_rel = std::max(integrand_rel, diff / std::abs(direct));
  }
  finish(r, std::max(slope.max_abs, integrand_abs), std::max(slope.rel(), integrand_rel), slope.scale);
}

void run_gamma_bound(ResidualReport& r, const FamilySpec& spec, int n) {
  const double expected = spec.gamma_rule.boundary(n);
  const double value = reference_integral(spec, n);
  r.measured = value;
  const double diff = std::abs(value - expected);
  finish(r, diff, diff / std::abs(expected), std::abs(expected));
}

// ---- deformation identities ----

void run_riccati(ResidualReport& r, const DeformationContext& ctx, std::span<const double> xs) {
  const FamilySpec& spec = ctx.spec();
  const int n = ctx.n();
  Accumulator acc;
  for (double x : xs) {
    const double h = step_first(spec, x);
    const std::array<double, 3> st{x - h, x, x + h};
    const std::vector<double> b = ctx.b_values(st);
    const double db = (b[2] - b[0]) / (2.0 * h);
    const double t1 = spec.eval_sqrt_p(x) * db;
    const double t2 = b[1] * b[1];
    const double t3 = b[1] * (spec.eval_a_minus(n, x) - spec.eval_a_plus(n, x));
    acc.add(t1 - t2 + t3, {t1, t2, t3});
  }
  finish(r, acc);
}

void run_factorization(ResidualReport& r, const DeformationContext& ctx, std::span<const double> xs) {
  const FamilySpec& spec = ctx.spec();
  const int n = ctx.n();
  Accumulator acc;
  for (double x : xs) {
    const Jet<double, 2> f = truncate<2>(eval_classical(spec.family, n, x).jet());
    const double bb = apply_B(ctx, Direction::Minus, apply_B(ctx, Direction::Plus, f, x), x).value();
    const double aa = apply_A(spec, Direction::Minus, n, apply_A(spec, Direction::Plus, n, f, x), x).value();
    const double kf = spec.k(n) * f.value();
    const Jet3 b = ctx.b_jet(x);
    const double s = spec.eval_sqrt_p(x);
    const double w = spec.eval_a_plus(n, x) - spec.eval_a_minus(n, x);
    const double residual = std::max(std::abs(bb - aa), std::abs(aa - kf));
    acc.add(residual, {bb, aa, kf, spec.eval_p(x) * f.derivative(2), spec.eval_q(x) * f.derivative(1),
                       spec.eval_r(n, x) * f.value(), s * b.derivative(1) * f.value(),
                       b.value() * b.value() * f.value(), w * b.value() * f.value()});
  }
  finish(r, acc);
}

void run_annihilation(ResidualReport& r, const DeformationContext& ctx, std::span<const double> xs) {
  const FamilySpec& spec = ctx.spec();
  const int n = ctx.n();
  Accumulator acc;
  for (double x : xs) {
    const Jet<double, 2> f = truncate<2>(psi_tilde_jet(ctx, x));
    const double db = ctx.b_jet(x).derivative(1);
    const double t1 = spec.eval_p(x) * f.derivative(2);
    const double t2 = spec.eval_q(x) * f.derivative(1);
    const double t3 = spec.eval_r(n + 1, x) * f.value();
    const double t4 = 2.0 * spec.eval_sqrt_p(x) * db * f.value();
    acc.add(apply_L_tilde(ctx, f, x), {t1, t2, t3, t4});
  }
  finish(r, acc);
}

// Derivatives of ψ̃ and b by central differences of tabulated values only.
void run_annihilation_fd(ResidualReport& r, const DeformationContext& ctx, std::span<const double> xs) {
  const FamilySpec& spec = ctx.spec();
  const int n = ctx.n();
  const double rc = spec.raise_coeff(n);
  Accumulator acc;
  for (double x : xs) {
    const double h = step_second(spec, x);
    const std::array<double, 3> st{x - h, x, x + h};
    const std::vector<double> b = ctx.b_values(st);
    std::array<double, 3> f{};
    for (int i = 0; i < 3; ++i) f[i] = rc * psi(spec.family, n + 1, st[i]) + b[i] * psi(spec.family, n, st[i]);
    const double d1 = (f[2] - f[0]) / (2.0 * h);
    const double d2 = (f[2] - 2.0 * f[1] + f[0]) / (h * h);
    const double db = (b[2] - b[0]) / (2.0 * h);
    const double t1 = spec.eval_p(x) * d2;
    const double t2 = spec.eval_q(x) * d1;
    const double t3 = spec.eval_r(n + 1, x) * f[1];
    const double t4 = 2.0 * spec.eval_sqrt_p(x) * db * f[1];
    acc.add(t1 + t2 + t3 - t4, {t1, t2, t3, t4});
  }
  finish(r, acc);
}

void run_eigenvalue(ResidualReport& r, const DeformationContext& ctx, std::span<const double> xs) {
  const FamilySpec& spec = ctx.spec();
  const int n = ctx.n();
  Accumulator acc;
  for (double x : xs) {
    const Jet<double, 2> f = truncate<2>(psi_tilde_jet(ctx, x));
    const double lhs = apply_B(ctx, Direction::Plus, apply_B(ctx, Direction::Minus, f, x), x).value();
    const double kf = spec.k(n) * f.value();
    const Jet3 b = ctx.b_jet(x);
    acc.add(lhs - kf, {lhs, kf, spec.eval_p(x) * f.derivative(2), spec.eval_q(x) * f.derivative(1),
                       spec.eval_r(n + 1, x) * f.value(), 2.0 * spec.eval_sqrt_p(x) * b.derivative(1) * f.value()});
  }
  finish(r, acc);
}

// dev(γ) = max |ψ̃(·;γ) - raise ψ_{n+1}| should behave like C/|γ|: the spread
// of dev·|γ| across γ ∈ m·{1e2, 1e3, 1e4} is reported as max/min - 1.
void run_limit(ResidualReport& r, const FamilySpec& spec, int n, const GridSpec& grid) {
  const std::vector<double> xs = sorted_points(grid);
  const GammaBound& rule = spec.gamma_rule;
  const double sign = rule.kind == GammaBoundKind::LessThan ? -1.0 : 1.0;
  double m = std::max(1.0, std::abs(rule.threshold(n)));
  if (spec.family.kind() == FamilyKind::Bessel) {
    // No boundary constant; the integral from +inf to the smallest grid point is x^{-2n}/(2n).
    m = std::max(m, std::pow(xs.front(), -2.0 * n));
  } else {
    m = std::max(m, std::abs(rule.boundary(n)));
  }
  const double rc = spec.raise_coeff(n);
  double lo = kHuge;
  double hi = 0.0;
  double sum = 0.0;
  for (double scale : {1e2, 1e3, 1e4}) {
    const double gamma = sign * m * scale;
    const DeformationContext ctx(spec, n, gamma, xs);
    double dev = 0.0;
    for (double x : xs) dev = std::max(dev, std::abs(eval_psi_tilde(ctx, x).psi_tilde - rc * psi(spec.family, n + 1, x)));
    const double c = dev * std::abs(gamma);
    lo = std::min(lo, c);
    hi = std::max(hi, c);
    sum += c;
  }
  r.measured = sum / 3.0;
  r.gamma.reset();
  const double spread = lo > 0.0 ? hi / lo - 1.0 : kHuge;
  finish(r, spread * r.measured.value(), spread, r.measured.value());
}

// Integral form of b with the upper limit x0 = ∞ replaced by a reference
// point: ∫_∞^x = -xr^{-2n}/(2n) + ∫_{xr}^x. Taking xr at the right end of the
// grid keeps every term of the denominator the same sign for γ >= 0.
void run_bessel_closed_form(ResidualReport& r, const FamilySpec& spec, int n, double gamma, std::span<const double> xs) {
  const double xr = xs.back();
  const double m = 2.0 * n;
  const auto integrand = [&](double y) { return std::pow(y, -(m + 1.0)); };
  const std::vector<double> part = cumulative(integrand, xr, xs);
  double max_abs = 0.0;
  double max_rel = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const double d = gamma / m + std::pow(xr, -m) / m - part[i];
    const double from_integral = std::pow(x, -(m + 1.0)) / d;
    const double closed = spec.closed_form_b(n, gamma, x);
    const double diff = std::abs(from_integral - closed);
    max_abs = std::max(max_abs, diff);
    max_rel = std::max(max_rel, diff / std::abs(closed));
    scale = std::max(scale, std::abs(closed));
  }
  finish(r, max_abs, max_rel, scale);
}

// γ = 0: ψ̃_{n+1} = J_{n-1} (absolute) and R_{n+1} - 2√P b' = R_{n-1} (relative).
void run_bessel_gamma_zero(ResidualReport& r, const FamilySpec& spec, int n, std::span<const double> xs) {
  const DeformationContext ctx(spec, n, 0.0, std::vector<double>(xs.begin(), xs.end()));
  r.gamma = 0.0;
  double psi_abs = 0.0;
  double coef_rel = 0.0;
  for (double x : xs) {
    const DeformedEval e = eval_psi_tilde(ctx, x);
    psi_abs = std::max(psi_abs, std::abs(e.psi_tilde - bessel_j(n - 1, x)));
    const double deformed = spec.eval_r(n + 1, x) - 2.0 * spec.eval_sqrt_p(x) * e.db;
    const double target = spec.eval_r(n - 1, x);
    coef_rel = std::max(coef_rel, std::abs(deformed - target) / std::max(std::abs(target), 1.0));
  }
  finish(r, std::max(psi_abs, coef_rel), std::max(psi_abs, coef_rel), 1.0);
}

// C± applied to ψ̃ against ψ̃ of the neighbouring index, re-evaluated directly.
// The envelope is the same composition with every Taylor coefficient replaced
// by its magnitude: the size of the terms before cancellation.
void run_c_ladder(ResidualReport& r, const DeformationChain& chain, Direction dir, std::span<const double> xs) {
  const FamilySpec& spec = chain.upper().spec();
  const int n = chain.n();
  const DeformationContext& from = dir == Direction::Plus ? chain.lower() : chain.upper();
  const DeformationContext& to = dir == Direction::Plus ? chain.upper() : chain.lower();
  const DeformationContext& first = dir == Direction::Plus ? chain.lower() : chain.upper();
  const DeformationContext& last = dir == Direction::Plus ? chain.upper() : chain.lower();

  std::vector<double> g(xs.size());
  std::vector<double> h(xs.size());
  double envelope = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const Jet3 f = psi_tilde_jet(from, x);
    g[i] = apply_C(chain, dir, f, x);
    h[i] = psi_tilde_jet(to, x).value();

    const Jet3 xv = Jet3::variable(x);
    const Jet3 s = magnitude(spec.sqrt_p(xv));
    const Jet3 c1 = magnitude(first.a_minus_jet(x)) + magnitude(first.b_jet(x));
    const Jet3 c2 = magnitude(dir == Direction::Plus ? spec.a_plus(n - 1, xv) : spec.a_minus(n - 1, xv));
    const Jet3 c3 = magnitude(last.a_plus_jet(x)) + magnitude(last.b_jet(x));
    const auto e1 = first_order(s, c1, magnitude(f));
    const auto e2 = first_order(s, c2, e1);
    envelope = std::max(envelope, first_order(s, c3, e2).value());
  }

  double hmax = 0.0;
  for (double v : h) hmax = std::max(hmax, std::abs(v));
  double gmax = 0.0;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::abs(h[i]) <= 1e-3 * hmax) continue;
    gmax = std::max(gmax, std::abs(g[i]));
    num += g[i] * h[i];
    den += h[i] * h[i];
  }
  if (!(envelope > 0.0) || den == 0.0) {
    finish(r, kHuge, kHuge, 1.0);
    return;
  }
  if (gmax <= 1e-8 * envelope) {
    r.measured = 0.0;
    r.note = "operator annihilates the function: proportionality scalar is 0";
    finish(r, gmax, gmax / envelope, envelope);
    return;
  }
  const double c = num / den;
  r.measured = c;
  double max_abs = 0.0;
  double max_rel = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::abs(h[i]) <= 1e-3 * hmax) continue;
    max_abs = std::max(max_abs, std::abs(g[i] - c * h[i]));
    max_rel = std::max(max_rel, std::abs(g[i] / h[i] - c) / std::abs(c));
  }
  finish(r, max_abs, max_rel, std::abs(c) * hmax);
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

std::span<const Identity> all_identities() { return kIdentities; }

std::string_view identity_name(Identity id) {
  switch (id) {
    case Identity::ClassicalODE: return "ClassicalODE";
    case Identity::LadderRaise: return "LadderRaise";
    case Identity::LadderLower: return "LadderLower";
    case Identity::DeltaConsistency: return "DeltaConsistency";
    case Identity::RiccatiB: return "RiccatiB";
    case Identity::FactorizationBB: return "FactorizationBB";
    case Identity::AnnihilationLtilde: return "AnnihilationLtilde";
    case Identity::AnnihilationLtildeFD: return "AnnihilationLtildeFD";
    case Identity::EigenvalueBB: return "EigenvalueBB";
    case Identity::GammaBoundQuadrature: return "GammaBoundQuadrature";
    case Identity::LimitGammaInf: return "LimitGammaInf";
    case Identity::BesselClosedForm: return "BesselClosedForm";
    case Identity::BesselGammaZero: return "BesselGammaZero";
    case Identity::CLadderPlus: return "CLadderPlus";
    case Identity::CLadderMinus: return "CLadderMinus";
  }
  return "unknown";
}

Identity parse_identity(std::string_view name) {
  for (Identity id : kIdentities) {
    if (identity_name(id) == name) return id;
  }
  throw ParameterError("unknown identity '" + std::string(name) + "'");
}

bool identity_needs_gamma(Identity id) {
  switch (id) {
    case Identity::RiccatiB:
    case Identity::FactorizationBB:
    case Identity::AnnihilationLtilde:
    case Identity::AnnihilationLtildeFD:
    case Identity::EigenvalueBB:
    case Identity::BesselClosedForm:
    case Identity::CLadderPlus:
    case Identity::CLadderMinus:
      return true;
    default:
      return false;
  }
}

double default_tolerance(Identity id) {
  double tol = 1e-8;
  switch (id) {
    case Identity::ClassicalODE: tol = 1e-10; break;
    case Identity::LadderRaise:
    case Identity::LadderLower: tol = 1e-9; break;
    case Identity::DeltaConsistency:
    case Identity::RiccatiB: tol = 1e-6; break;
    case Identity::FactorizationBB:
    case Identity::AnnihilationLtilde:
    case Identity::BesselClosedForm: tol = 1e-8; break;
    case Identity::AnnihilationLtildeFD:
    case Identity::CLadderPlus:
    case Identity::CLadderMinus: tol = 1e-5; break;
    case Identity::EigenvalueBB: tol = 1e-7; break;
    case Identity::GammaBoundQuadrature:
    case Identity::BesselGammaZero: tol = 1e-9; break;
    case Identity::LimitGammaInf: tol = 1.0; break;
  }
  return tol * tolerance_scale();
}

GridSpec default_grid(const FamilyId& family, int count) {
  GridSpec g;
  g.count = count;
  switch (family.kind()) {
    case FamilyKind::Hermite:
      g.lo = -4.0;
      g.hi = 4.0;
      break;
    case FamilyKind::Laguerre:
    case FamilyKind::Bessel:
      g.lo = 0.05;
      g.hi = 20.0;
      break;
    case FamilyKind::JacobiFunction:
      g.lo = 0.001;
      g.hi = 0.999;
      break;
    default:
      g.lo = -0.998;
      g.hi = 0.998;
      break;
  }
  return g;
}

std::optional<std::string> not_applicable_reason(Identity id, const FamilyId& family, int n) {
  const bool bessel = family.kind() == FamilyKind::Bessel;
  switch (id) {
    case Identity::GammaBoundQuadrature:
      if (bessel) return "Bessel: gamma >= 0 has no finite boundary constant";
      break;
    case Identity::LimitGammaInf:
      if (bessel && n == 0) return "Bessel n=0: b vanishes identically, no gamma dependence";
      break;
    case Identity::BesselClosedForm:
      if (!bessel) return "closed-form b exists only for Bessel";
      if (n == 0) return "Bessel n=0: b vanishes identically";
      break;
    case Identity::BesselGammaZero:
      if (!bessel) return "degenerate gamma=0 case exists only for Bessel";
      break;
    case Identity::CLadderPlus:
    case Identity::CLadderMinus:
      if (n < 1) return "third-order ladder operators lack the n=0 element";
      break;
    default:
      break;
  }
  return std::nullopt;
}

ResidualReport run_identity(Identity id, const FamilyId& family, int n, std::optional<double> gamma,
                            const GridSpec& grid, double tol) {
  if (n < 0) throw ParameterError("index n must be >= 0");
  if (const auto why = not_applicable_reason(id, family, n)) {
    throw NotApplicable(std::string(identity_name(id)) + " for " + family.label() + ": " + *why);
  }
  const FamilySpec spec = spec_for(family);
  check_index(spec, n);

  ResidualReport r;
  r.identity = id;
  r.family = family;
  r.n = n;
  r.tolerance = tol;
  if (identity_needs_gamma(id)) r.gamma = require_gamma(id, gamma);

  if (id == Identity::GammaBoundQuadrature) {
    run_gamma_bound(r, spec, n);
    return r;
  }
  if (id == Identity::LimitGammaInf) {
    run_limit(r, spec, n, grid);
    return r;
  }

  const std::vector<double> xs = sorted_points(grid);
  check_grid_in_domain(spec, xs);
  switch (id) {
    case Identity::ClassicalODE:
      run_classical_ode(r, spec, n, xs);
      break;
    case Identity::LadderRaise:
    case Identity::LadderLower:
      run_ladder(r, spec, n, id == Identity::LadderRaise, xs);
      break;
    case Identity::DeltaConsistency:
      run_delta(r, spec, n, xs);
      break;
    case Identity::BesselClosedForm:
      run_bessel_closed_form(r, spec, n, *r.gamma, xs);
      break;
    case Identity::BesselGammaZero:
      run_bessel_gamma_zero(r, spec, n, xs);
      break;
    case Identity::CLadderPlus:
    case Identity::CLadderMinus: {
      const DeformationChain chain(family, n, *r.gamma, grid);
      run_c_ladder(r, chain, id == Identity::CLadderPlus ? Direction::Plus : Direction::Minus, xs);
      break;
    }
    default: {
      const DeformationContext ctx(spec, n, *r.gamma, xs);
      if (id == Identity::RiccatiB) run_riccati(r, ctx, xs);
      if (id == Identity::FactorizationBB) run_factorization(r, ctx, xs);
      if (id == Identity::AnnihilationLtilde) run_annihilation(r, ctx, xs);
      if (id == Identity::AnnihilationLtildeFD) run_annihilation_fd(r, ctx, xs);
      if (id == Identity::EigenvalueBB) run_eigenvalue(r, ctx, xs);
      break;
    }
  }
  return r;
}

std::vector<double> sample_gammas(const FamilySpec& spec, int n, int count) {
  std::vector<double> out;
  if (count <= 0) return out;
  const GammaBound& rule = spec.gamma_rule;
  double c = 0.0;
  for (int k = std::max(0, n - 1); k <= n + 1; ++k) {
    const double v = rule.kind == GammaBoundKind::LessThan ? rule.boundary(k) : rule.threshold(k);
    c = std::max(c, std::abs(v));
  }
  constexpr std::array<double, 3> base{1.5, 3.0, 10.0};
  for (int i = 0; i < count; ++i) {
    const double mult = base[static_cast<std::size_t>(i) % base.size()] *
                        std::pow(10.0, static_cast<double>(i / static_cast<int>(base.size())));
    switch (rule.kind) {
      case GammaBoundKind::AbsGreaterThan:
        out.push_back((i % 2 == 0 ? 1.0 : -1.0) * mult * c);
        break;
      case GammaBoundKind::GreaterThan:
        out.push_back(mult * c);
        break;
      case GammaBoundKind::LessThan:
        out.push_back(-mult * c);
        break;
      case GammaBoundKind::NonNegative:
        out.push_back(i == 0 ? 0.0 : std::pow(10.0, i - 1));
        break;
    }
  }
  return out;
}

std::vector<FamilyId> default_families() {
  return {FamilyId::hermite(),
          FamilyId::laguerre(0.0),
          FamilyId::laguerre(0.5),
          FamilyId::legendre(),
          FamilyId::chebyshev(),
          FamilyId::jacobi_function(2.5, 1.5),
          FamilyId::jacobi_polynomial(0.0, 0.0),
          FamilyId::jacobi_polynomial(0.5, -0.25),
          FamilyId::bessel()};
}

std::vector<ResidualReport> run_suite(std::span<const FamilyId> families, int n_max, int gammas_per_family,
                                      std::uint64_t seed) {
  if (n_max < 1) throw ParameterError("run_suite: n_max must be >= 1");
  std::vector<ResidualReport> out;
  const auto cell = [&](Identity id, const FamilyId& family, int n, std::optional<double> gamma,
                        const GridSpec& grid) {
    try {
      out.push_back(run_identity(id, family, n, gamma, grid, default_tolerance(id)));
    } catch (const NotApplicable&) {
      ResidualReport r;
      r.identity = id;
      r.family = family;
      r.n = n;
      if (identity_needs_gamma(id)) r.gamma = gamma;
      r.applicable = false;
      r.note = not_applicable_reason(id, family, n).value_or("not applicable");
      r.tolerance = default_tolerance(id);
      out.push_back(r);
    } catch (const std::exception& e) {
      ResidualReport r;
      r.identity = id;
      r.family = family;
      r.n = n;
      if (identity_needs_gamma(id)) r.gamma = gamma;
      r.note = std::string("error: ") + e.what();
      r.tolerance = default_tolerance(id);
      finish(r, kHuge, kHuge, 1.0);
      out.push_back(r);
    }
  };

  std::uint64_t family_index = 0;
  for (const FamilyId& family : families) {
    ++family_index;
    const FamilySpec spec = spec_for(family);
    const GridSpec grid = default_grid(family);
    GridSpec bessel_grid = grid;
    if (family.kind() == FamilyKind::Bessel) {
      bessel_grid.lo = 0.5;
      bessel_grid.hi = 10.0;
    }
    for (int n = 0; n <= n_max; ++n) {
      GridSpec random = grid;
      random.count = 100;
      random.spacing = GridSpacing::Random;
      random.seed = mix(seed ^ mix(family_index * 1000003u + static_cast<std::uint64_t>(n)));
      for (Identity id : {Identity::ClassicalODE, Identity::LadderRaise, Identity::LadderLower,
                          Identity::DeltaConsistency}) {
        cell(id, family, n, std::nullopt, random);
      }
      cell(Identity::GammaBoundQuadrature, family, n, std::nullopt, grid);
      cell(Identity::LimitGammaInf, family, n, std::nullopt, bessel_grid);
      cell(Identity::BesselGammaZero, family, n, std::nullopt, bessel_grid);
      for (double gamma : sample_gammas(spec, n, gammas_per_family)) {
        for (Identity id : {Identity::RiccatiB, Identity::FactorizationBB, Identity::AnnihilationLtilde,
                            Identity::AnnihilationLtildeFD, Identity::EigenvalueBB, Identity::BesselClosedForm,
                            Identity::CLadderPlus, Identity::CLadderMinus}) {
          cell(id, family, n, gamma, grid);
        }
      }
    }
  }
  return out;
}

bool all_pass(std::span<const ResidualReport> reports) {
  return std::all_of(reports.begin(), reports.end(), [](const ResidualReport& r) { return r.pass; });
}

}  // namespace isospec
