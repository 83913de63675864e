#include "isospec/family_id.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include "isospec/errors.hpp"

namespace isospec {

namespace {

constexpr std::array<std::pair<FamilyKind, std::string_view>, 7> kNames{{
    {FamilyKind::Hermite, "hermite"},
    {FamilyKind::Laguerre, "laguerre"},
    {FamilyKind::Legendre, "legendre"},
    {FamilyKind::Chebyshev, "chebyshev"},
    {FamilyKind::JacobiFunction, "jacobi-function"},
    {FamilyKind::JacobiPolynomial, "jacobi-polynomial"},
    {FamilyKind::Bessel, "bessel"},
}};

void require(bool ok, const char* what) {
  if (!ok) throw ParameterError(what);
}

}  // namespace

FamilyId FamilyId::laguerre(double alpha) {
  require(std::isfinite(alpha) && alpha > -1.0, "laguerre: alpha must be > -1");
  FamilyId id(FamilyKind::Laguerre);
  id.alpha_ = alpha;
  return id;
}

FamilyId FamilyId::jacobi_function(double alpha, double lambda) {
  require(std::isfinite(alpha) && alpha > -1.0, "jacobi-function: alpha must be > -1");
  require(std::isfinite(lambda) && lambda > 0.0, "jacobi-function: lambda must be > 0");
  FamilyId id(FamilyKind::JacobiFunction);
  id.alpha_ = alpha;
  id.lambda_ = lambda;
  return id;
}

FamilyId FamilyId::jacobi_polynomial(double alpha, double beta) {
  require(std::isfinite(alpha) && alpha > -1.0, "jacobi-polynomial: alpha must be > -1");
  require(std::isfinite(beta) && beta > -1.0, "jacobi-polynomial: beta must be > -1");
  FamilyId id(FamilyKind::JacobiPolynomial);
  id.alpha_ = alpha;
  id.beta_ = beta;
  return id;
}

std::string_view FamilyId::name() const { return family_name(kind_); }

std::string FamilyId::label() const {
  std::ostringstream os;
  os << name();
  switch (kind_) {
    case FamilyKind::Laguerre:
      os << "(alpha=" << alpha_ << ")";
      break;
    case FamilyKind::JacobiFunction:
      os << "(alpha=" << alpha_ << ",lambda=" << lambda_ << ")";
      break;
    case FamilyKind::JacobiPolynomial:
      os << "(alpha=" << alpha_ << ",beta=" << beta_ << ")";
      break;
    default:
      break;
  }
  return os.str();
}

std::string_view family_name(FamilyKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

FamilyKind parse_family_kind(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  throw ParameterError("unknown family '" + std::string(name) + "'");
}

}  // namespace isospec
