#include "isospec/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <queue>
#include <string>

#include "isospec/errors.hpp"

namespace isospec {

namespace {

// Kronrod abscissae (positive half) and weights; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  double abs_value;

  bool operator<(const Panel& o) const { return error < o.error; }
};

double checked(const Integrand& f, double y) {
  const double v = f(y);
  if (!std::isfinite(v)) throw NonFiniteError("integrand returned non-finite value at y=" + std::to_string(y));
  return v;
}

Panel gauss_kronrod(const Integrand& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = checked(f, center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_sum = std::abs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = checked(f, center - dx);
    const double f2 = checked(f, center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half), abs_sum * std::abs(half)};
}

QuadResult adaptive(const Integrand& f, double lo, double hi, const QuadOptions& opt) {
  constexpr std::size_t kEvalsPerPanel = 15;
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  std::priority_queue<Panel> queue;
  Panel first = gauss_kronrod(f, lo, hi);
  double value = first.value;
  double error = first.error;
  double abs_value = first.abs_value;
  std::size_t evaluations = kEvalsPerPanel;
  queue.push(first);

  // Panels too narrow to split keep their error in `frozen`.
  double frozen = 0.0;
  while (true) {
    const double target = std::max({opt.abs_tol, opt.rel_tol * std::abs(value), 50.0 * kEps * abs_value});
    if (error - frozen <= target || queue.empty()) break;
    if (evaluations + 2 * kEvalsPerPanel > opt.max_evaluations) {
      throw ConvergenceError("quadrature: tolerance not met within " + std::to_string(opt.max_evaluations) +
                             " evaluations (error estimate " + std::to_string(error) + ")");
    }
    const Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      frozen += worst.error;
      continue;
    }
    const Panel left = gauss_kronrod(f, worst.lo, mid);
    const Panel right = gauss_kronrod(f, mid, worst.hi);
    evaluations += 2 * kEvalsPerPanel;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    abs_value += left.abs_value + right.abs_value - worst.abs_value;
    queue.push(left);
    queue.push(right);
  }
  return {value, std::max(error, 0.0), evaluations};
}

QuadResult integrate_rough_lo(const Integrand& f, double lo, double hi, const QuadOptions& opt) {
  const double w = hi - lo;
  return adaptive([&](double t) { return 2.0 * w * t * f(lo + w * t * t); }, 0.0, 1.0, opt);
}

QuadResult integrate_rough_hi(const Integrand& f, double lo, double hi, const QuadOptions& opt) {
  const double w = hi - lo;
  return adaptive([&](double t) { return 2.0 * w * t * f(hi - w * t * t); }, 0.0, 1.0, opt);
}

}  // namespace

double tolerance_scale() {
  const char* env = std::getenv("ISOSPEC_TOLERANCE_SCALE");
  if (env == nullptr) return 1.0;
  char* end = nullptr;
  const double s = std::strtod(env, &end);
  return (end != env && std::isfinite(s) && s > 0.0) ? s : 1.0;
}

QuadOptions default_quad_options() {
  QuadOptions opt;
  const double s = tolerance_scale();
  opt.rel_tol *= s;
  opt.abs_tol *= s;
  return opt;
}

QuadResult integrate(const Integrand& f, double lo, double hi, const QuadOptions& options) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
    throw ParameterError("integrate: need finite lo <= hi");
  }
  if (lo == hi) return {0.0, 0.0, 1};
  if (options.rough_lo && options.rough_hi) {
    const double mid = 0.5 * (lo + hi);
    QuadOptions half = options;
    half.abs_tol = 0.5 * options.abs_tol;
    const QuadResult a = integrate_rough_lo(f, lo, mid, half);
    const QuadResult b = integrate_rough_hi(f, mid, hi, half);
    return {a.value + b.value, a.abs_error_estimate + b.abs_error_estimate, a.evaluations + b.evaluations};
  }
  if (options.rough_lo) return integrate_rough_lo(f, lo, hi, options);
  if (options.rough_hi) return integrate_rough_hi(f, lo, hi, options);
  return adaptive(f, lo, hi, options);
}

std::vector<double> cumulative(const Integrand& f, double x0, std::span<const double> xs, const QuadOptions& options) {
  if (!std::isfinite(x0)) throw ParameterError("cumulative: x0 must be finite");
  if (!std::is_sorted(xs.begin(), xs.end())) throw ParameterError("cumulative: xs must be sorted");

  std::vector<double> out(xs.size(), 0.0);
  QuadOptions panel = options;
  panel.rough_lo = false;
  panel.rough_hi = false;

  const auto split = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), x0) - xs.begin());

  // Right of x0, ascending.
  double acc = 0.0;
  double prev = x0;
  for (std::size_t i = split; i < xs.size(); ++i) {
    QuadOptions o = panel;
    o.rough_lo = (prev == x0) && options.rough_lo;
    acc += integrate(f, prev, xs[i], o).value;
    out[i] = acc;
    prev = xs[i];
  }

  // Left of x0, descending.
  acc = 0.0;
  prev = x0;
  for (std::size_t i = split; i-- > 0;) {
    QuadOptions o = panel;
    o.rough_hi = (prev == x0) && options.rough_lo;
    acc -= integrate(f, xs[i], prev, o).value;
    out[i] = acc;
    prev = xs[i];
  }
  return out;
}

}  // namespace isospec
