#pragma once

#include <string>
#include <string_view>

namespace isospec {

enum class FamilyKind {
  Hermite,
  Laguerre,
  Legendre,
  Chebyshev,
  JacobiFunction,
  JacobiPolynomial,
  Bessel,
};

/// One of the seven classical families together with its parameters.
///
/// Parameter constraints are checked at construction:
///   Laguerre            alpha > -1
///   JacobiPolynomial    alpha > -1, beta > -1
///   JacobiFunction      alpha > -1, lambda > 0
class FamilyId {
 public:
  static FamilyId hermite() { return FamilyId(FamilyKind::Hermite); }
  static FamilyId laguerre(double alpha);
  static FamilyId legendre() { return FamilyId(FamilyKind::Legendre); }
  static FamilyId chebyshev() { return FamilyId(FamilyKind::Chebyshev); }
  static FamilyId jacobi_function(double alpha, double lambda);
  static FamilyId jacobi_polynomial(double alpha, double beta);
  static FamilyId bessel() { return FamilyId(FamilyKind::Bessel); }

  FamilyKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double lambda() const { return lambda_; }

  bool is_polynomial() const { return kind_ != FamilyKind::Bessel; }

  /// Short command-line name, e.g. "jacobi-polynomial".
  std::string_view name() const;
  /// Name plus parameters, e.g. "laguerre(alpha=0.5)".
  std::string label() const;

  friend bool operator==(const FamilyId&, const FamilyId&) = default;

 private:
  explicit FamilyId(FamilyKind kind) : kind_(kind) {}

  FamilyKind kind_;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  double lambda_ = 0.0;
};

std::string_view family_name(FamilyKind kind);
/// Inverse of family_name; throws ParameterError for unknown names.
FamilyKind parse_family_kind(std::string_view name);

}  // namespace isospec
