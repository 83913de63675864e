#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace isospec {

/// Truncated Taylor expansion of a function around a point.
///
/// Stores the normalized coefficients c_k = f^(k)(x)/k! for k = 0..Order.
/// Arithmetic follows the usual power-series rules, so evaluating a closed
/// form on `Jet::variable(x)` yields its first `Order` derivatives exactly
/// (up to rounding). Closed forms in this library are written as generic
/// lambdas so the same expression serves `double` and `Jet` arguments.
template <typename Scalar, int Order>
class Jet {
  static_assert(Order >= 0, "Jet order must be non-negative");

 public:
  static constexpr int order = Order;

  Jet() { coeffs_.fill(Scalar(0)); }

  // Implicit so that closed forms like `1.0 - x * x` work for jets.
  Jet(Scalar constant) {  // NOLINT(google-explicit-constructor)
    coeffs_.fill(Scalar(0));
    coeffs_[0] = constant;
  }

  static Jet variable(Scalar x) {
    Jet j(x);
    if constexpr (Order >= 1) j.coeffs_[1] = Scalar(1);
    return j;
  }

  /// Builds a jet from plain derivatives f, f', f'', ...
  static Jet from_derivatives(const std::array<Scalar, Order + 1>& d) {
    Jet j;
    Scalar factorial(1);
    for (int k = 0; k <= Order; ++k) {
      if (k > 0) factorial *= Scalar(k);
      j.coeffs_[k] = d[k] / factorial;
    }
    return j;
  }

  Scalar value() const { return coeffs_[0]; }
  Scalar coeff(int k) const { return coeffs_[k]; }
  Scalar& coeff(int k) { return coeffs_[k]; }

  /// k-th derivative, k!·c_k.
  Scalar derivative(int k) const {
    Scalar factorial(1);
    for (int i = 2; i <= k; ++i) factorial *= Scalar(i);
    return coeffs_[k] * factorial;
  }

  Jet& operator+=(const Jet& o) {
    for (int k = 0; k <= Order; ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k <= Order; ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  Jet operator-() const {
    Jet r;
    for (int k = 0; k <= Order; ++k) r.coeffs_[k] = -coeffs_[k];
    return r;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= Order; ++k) {
      Scalar s(0);
      for (int i = 0; i <= k; ++i) s += a.coeffs_[i] * b.coeffs_[k - i];
      r.coeffs_[k] = s;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= Order; ++k) {
      Scalar s = a.coeffs_[k];
      for (int i = 1; i <= k; ++i) s -= b.coeffs_[i] * r.coeffs_[k - i];
      r.coeffs_[k] = s / b.coeffs_[0];
    }
    return r;
  }

  friend Jet exp(const Jet& a) {
    using std::exp;
    Jet r;
    r.coeffs_[0] = exp(a.coeffs_[0]);
    for (int k = 1; k <= Order; ++k) {
      Scalar s(0);
      for (int j = 1; j <= k; ++j) s += Scalar(j) * a.coeffs_[j] * r.coeffs_[k - j];
      r.coeffs_[k] = s / Scalar(k);
    }
    return r;
  }

  friend Jet log(const Jet& a) {
    using std::log;
    Jet r;
    r.coeffs_[0] = log(a.coeffs_[0]);
    for (int k = 1; k <= Order; ++k) {
      Scalar s = a.coeffs_[k];
      for (int j = 1; j < k; ++j) s -= Scalar(j) * r.coeffs_[j] * a.coeffs_[k - j] / Scalar(k);
      r.coeffs_[k] = s / a.coeffs_[0];
    }
    return r;
  }

  /// a^p for a(x) > 0.
  friend Jet pow(const Jet& a, Scalar p) {
    using std::pow;
    // (a^p)' a = p a' a^p, solved coefficient by coefficient.
    Jet r;
    r.coeffs_[0] = pow(a.coeffs_[0], p);
    for (int k = 1; k <= Order; ++k) {
      Scalar s(0);
      for (int j = 1; j <= k; ++j) {
        s += (p * Scalar(j) - Scalar(k - j)) * a.coeffs_[j] * r.coeffs_[k - j];
      }
      r.coeffs_[k] = s / (Scalar(k) * a.coeffs_[0]);
    }
    return r;
  }

  friend Jet sqrt(const Jet& a) { return pow(a, Scalar(0.5)); }

 private:
  std::array<Scalar, Order + 1> coeffs_;
};

template <typename Scalar, int Order>
Jet<Scalar, Order> operator+(const Jet<Scalar, Order>& a, Scalar b) { return a + Jet<Scalar, Order>(b); }
template <typename Scalar, int Order>
Jet<Scalar, Order> operator+(Scalar a, const Jet<Scalar, Order>& b) { return Jet<Scalar, Order>(a) + b; }
template <typename Scalar, int Order>
Jet<Scalar, Order> operator-(const Jet<Scalar, Order>& a, Scalar b) { return a - Jet<Scalar, Order>(b); }
template <typename Scalar, int Order>
Jet<Scalar, Order> operator-(Scalar a, const Jet<Scalar, Order>& b) { return Jet<Scalar, Order>(a) - b; }
template <typename Scalar, int Order>
Jet<Scalar, Order> operator*(const Jet<Scalar, Order>& a, Scalar b) { return a * Jet<Scalar, Order>(b); }
template <typename Scalar, int Order>
Jet<Scalar, Order> operator*(Scalar a, const Jet<Scalar, Order>& b) { return Jet<Scalar, Order>(a) * b; }
template <typename Scalar, int Order>
Jet<Scalar, Order> operator/(const Jet<Scalar, Order>& a, Scalar b) { return a / Jet<Scalar, Order>(b); }
template <typename Scalar, int Order>
Jet<Scalar, Order> operator/(Scalar a, const Jet<Scalar, Order>& b) { return Jet<Scalar, Order>(a) / b; }

/// d/dx of the expansion; loses the top coefficient.
template <typename Scalar, int Order>
Jet<Scalar, Order - 1> differentiate(const Jet<Scalar, Order>& a) {
  static_assert(Order >= 1, "cannot differentiate an order-0 jet");
  Jet<Scalar, Order - 1> r;
  for (int k = 0; k < Order; ++k) r.coeff(k) = Scalar(k + 1) * a.coeff(k + 1);
  return r;
}

template <int NewOrder, typename Scalar, int Order>
Jet<Scalar, NewOrder> truncate(const Jet<Scalar, Order>& a) {
  static_assert(NewOrder <= Order, "truncate cannot raise the order");
  Jet<Scalar, NewOrder> r;
  for (int k = 0; k <= NewOrder; ++k) r.coeff(k) = a.coeff(k);
  return r;
}

/// x^k for integer k >= 0 by repeated multiplication; valid at x = 0.
template <typename T>
T ipow(const T& x, int k) {
  T r(1.0);
  for (int i = 0; i < k; ++i) r = r * x;
  return r;
}

using Jet3 = Jet<double, 3>;

}  // namespace isospec
