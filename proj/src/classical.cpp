#include "isospec/classical.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "isospec/errors.hpp"

namespace isospec {

namespace {

// p_{k+1} = (a x + b) p_k - c p_{k-1}
struct RecurrenceStep {
  double a;
  double b;
  double c;
};

RecurrenceStep hermite_step(int k) { return {2.0, 0.0, 2.0 * k}; }

RecurrenceStep laguerre_step(int k, double alpha) {
  const double kp1 = k + 1.0;
  return {-1.0 / kp1, (2.0 * k + alpha + 1.0) / kp1, (k + alpha) / kp1};
}

RecurrenceStep legendre_step(int k) {
  const double kp1 = k + 1.0;
  return {(2.0 * k + 1.0) / kp1, 0.0, k / kp1};
}

RecurrenceStep chebyshev_step(int k) { return k == 0 ? RecurrenceStep{1.0, 0.0, 0.0} : RecurrenceStep{2.0, 0.0, 1.0}; }

RecurrenceStep jacobi_step(int k, double alpha, double beta) {
  if (k == 0) return {(alpha + beta + 2.0) / 2.0, (alpha - beta) / 2.0, 0.0};
  const double s = 2.0 * k + alpha + beta;
  const double den = 2.0 * (k + 1.0) * (k + alpha + beta + 1.0) * s;
  return {(s + 1.0) * (s + 2.0) * s / den, (s + 1.0) * (alpha * alpha - beta * beta) / den,
          2.0 * (k + alpha) * (k + beta) * (s + 2.0) / den};
}

// f_k(x) = 2F1(-k, k+α; λ; x) = k!/(λ)_k P_k^(λ-1, α-λ)(1-2x); the Jacobi step in
// t = 1-2x is rewritten in x and rescaled by the normalization ratios.
RecurrenceStep jacobi_function_step(int k, double alpha, double lambda) {
  const RecurrenceStep j = jacobi_step(k, lambda - 1.0, alpha - lambda);
  const double up = (k + 1.0) / (lambda + k);                      // c_{k+1}/c_k
  const double up2 = k == 0 ? 0.0 : up * k / (lambda + k - 1.0);  // c_{k+1}/c_{k-1}
  return {-2.0 * j.a * up, (j.a + j.b) * up, j.c * up2};
}

template <typename StepFn>
ClassicalEval run_recurrence(int n, double x, StepFn step) {
  // prev[m], cur[m] hold the m-th derivative of p_{k-1}, p_k.
  std::array<double, 4> prev{0.0, 0.0, 0.0, 0.0};
  std::array<double, 4> cur{1.0, 0.0, 0.0, 0.0};
  for (int k = 0; k < n; ++k) {
    const RecurrenceStep s = step(k);
    const double lin = s.a * x + s.b;
    std::array<double, 4> next{};
    next[0] = lin * cur[0] - s.c * prev[0];
    for (int m = 1; m < 4; ++m) next[m] = m * s.a * cur[m - 1] + lin * cur[m] - s.c * prev[m];
    prev = cur;
    cur = next;
  }
  return {x, n, cur[0], cur[1], cur[2], cur[3]};
}

double bessel_series(int n, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int i = 1; i <= n; ++i) term *= half / i;
  const double q = half * half;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= -q / (k * static_cast<double>(n + k));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

std::vector<double> bessel_miller(int nmax, double x) {
  const int m = std::max(nmax, static_cast<int>(std::ceil(x)));
  int start = m + 30 + static_cast<int>(std::sqrt(60.0 * m));
  start += start % 2;
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
  double above = 0.0;
  double cur = 1e-30;
  double sum_sq = 0.0;
  double sum_lin = 0.0;
  for (int k = start; k >= 0; --k) {
    if (k <= nmax) out[k] = cur;
    sum_sq += (k == 0 ? 1.0 : 2.0) * cur * cur;
    if (k % 2 == 0) sum_lin += (k == 0 ? 1.0 : 2.0) * cur;
    if (k == 0) break;
    const double below = 2.0 * k / x * cur - above;
    above = cur;
    cur = below;
    if (std::abs(cur) > 1e150) {
      constexpr double kScale = 1e-150;
      cur *= kScale;
      above *= kScale;
      sum_sq *= kScale * kScale;
      sum_lin *= kScale;
      for (int i = k - 1; i <= nmax; ++i) {
        if (i >= 0) out[i] *= kScale;
      }
    }
  }
  const double norm = std::copysign(std::sqrt(sum_sq), sum_lin);
  for (double& v : out) v /= norm;
  return out;
}

void check_domain(bool ok, const FamilyId& family, double x) {
  if (!ok) throw DomainError(std::string(family.name()) + ": x=" + std::to_string(x) + " outside domain");
}

}  // namespace

std::vector<double> bessel_j_sequence(int nmax, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("bessel: x must be positive and finite");
  if (nmax < 0) throw ParameterError("bessel: nmax must be >= 0");
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1);
  std::vector<double> miller;
  for (int k = 0; k <= nmax; ++k) {
    if (x < k + 2.0) {
      out[k] = bessel_series(k, x);
    } else {
      if (miller.empty()) miller = bessel_miller(nmax, x);
      out[k] = miller[k];
    }
  }
  return out;
}

double bessel_j(int n, double x) {
  const int m = std::abs(n);
  const double v = bessel_j_sequence(m, x)[m];
  return (n < 0 && m % 2 == 1) ? -v : v;
}

ClassicalEval eval_classical(const FamilyId& family, int n, double x) {
  if (n < 0) throw ParameterError("classical index must be >= 0");
  check_domain(std::isfinite(x), family, x);
  switch (family.kind()) {
    case FamilyKind::Hermite:
      return run_recurrence(n, x, hermite_step);
    case FamilyKind::Laguerre:
      check_domain(x >= 0.0, family, x);
      return run_recurrence(n, x, [a = family.alpha()](int k) { return laguerre_step(k, a); });
    case FamilyKind::Legendre:
      check_domain(std::abs(x) <= 1.0, family, x);
      return run_recurrence(n, x, legendre_step);
    case FamilyKind::Chebyshev:
      check_domain(std::abs(x) <= 1.0, family, x);
      return run_recurrence(n, x, chebyshev_step);
    case FamilyKind::JacobiPolynomial:
      check_domain(std::abs(x) <= 1.0, family, x);
      return run_recurrence(n, x, [a = family.alpha(), b = family.beta()](int k) { return jacobi_step(k, a, b); });
    case FamilyKind::JacobiFunction:
      check_domain(x >= 0.0 && x <= 1.0, family, x);
      return run_recurrence(
          n, x, [a = family.alpha(), l = family.lambda()](int k) { return jacobi_function_step(k, a, l); });
    case FamilyKind::Bessel: {
      check_domain(x > 0.0, family, x);
      const std::vector<double> seq = bessel_j_sequence(n + 3, x);
      auto j = [&](int k) {
        const int m = std::abs(k);
        return (k < 0 && m % 2 == 1) ? -seq[m] : seq[m];
      };
      return {x,
              n,
              j(n),
              0.5 * (j(n - 1) - j(n + 1)),
              0.25 * (j(n - 2) - 2.0 * j(n) + j(n + 2)),
              0.125 * (j(n - 3) - 3.0 * j(n - 1) + 3.0 * j(n + 1) - j(n + 3))};
    }
  }
  throw ParameterError("unknown family");
}

}  // namespace isospec
