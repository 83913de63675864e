#pragma once

#include <vector>

#include "isospec/family_id.hpp"
#include "isospec/jet.hpp"

namespace isospec {

/// ψ_n(x) and its first three derivatives.
struct ClassicalEval {
  double x = 0.0;
  int n = 0;
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;

  Jet3 jet() const { return Jet3::from_derivatives({value, d1, d2, d3}); }
};

/// Evaluates the classical function of index n at x.
///
/// Normalizations follow the ladder relations used by the deformation code:
/// physicists' Hermite H_n, generalized Laguerre L_n^α, Legendre P_n,
/// Chebyshev T_n, Jacobi P_n^(α,β), the Jacobi function
/// f_n(x) = 2F1(-n, n+α; λ; x) and Bessel J_n.
///
/// Polynomials are evaluated with their three-term recurrence, derivatives
/// with the differentiated recurrence. Bessel derivatives come from
/// J_n' = (J_{n-1} - J_{n+1})/2 and its iterates.
///
/// Throws DomainError outside the closed natural domain and ParameterError
/// for n < 0.
ClassicalEval eval_classical(const FamilyId& family, int n, double x);

/// Bessel function of the first kind J_n(x), integer n (negative allowed), x > 0.
///
/// Ascending series when x < |n| + 2, otherwise Miller's backward recurrence
/// normalized with J_0² + 2 Σ J_k² = 1.
double bessel_j(int n, double x);

/// J_0(x) .. J_nmax(x) from one backward sweep (x > 0).
std::vector<double> bessel_j_sequence(int nmax, double x);

}  // namespace isospec
