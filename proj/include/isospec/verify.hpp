#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "isospec/families.hpp"
#include "isospec/grid.hpp"

namespace isospec {

enum class Identity {
  ClassicalODE,          // P ψ'' + Q ψ' + R_n ψ = 0
  LadderRaise,           // A_n^+ ψ_n = raise ψ_{n+1}
  LadderLower,           // A_{n+1}^- ψ_{n+1} = lower ψ_n
  DeltaConsistency,      // δ' = (a^+ - a^-)/√P, integrand = e^δ/√P
  RiccatiB,              // √P b' - b² + b (a^- - a^+) = 0, b' by finite differences
  FactorizationBB,       // B_{n+1}^- B_n^+ ψ_n = A_{n+1}^- A_n^+ ψ_n = K_n ψ_n
  AnnihilationLtilde,    // 𝓛̃_{n+1} ψ̃_{n+1} = 0, analytic derivatives
  AnnihilationLtildeFD,  // same, derivatives by finite differences of tabulated values
  EigenvalueBB,          // B_n^+ B_{n+1}^- ψ̃_{n+1} = K_n ψ̃_{n+1}
  GammaBoundQuadrature,  // quadrature of the denominator integrand = closed-form boundary
  LimitGammaInf,         // ψ̃ → raise ψ_{n+1} like 1/γ
  BesselClosedForm,      // integral form of b = 2n/(γ x^{2n+1} + x)
  BesselGammaZero,       // γ = 0: ψ̃_{n+1} = J_{n-1}, 𝓛̃_{n+1} = 𝓛_{n-1}
  CLadderPlus,           // C_n^+ ψ̃_n ∝ ψ̃_{n+1}
  CLadderMinus,          // C_{n+1}^- ψ̃_{n+1} ∝ ψ̃_n
};

std::span<const Identity> all_identities();
std::string_view identity_name(Identity id);
/// Throws ParameterError for unknown names.
Identity parse_identity(std::string_view name);
bool identity_needs_gamma(Identity id);

/// Default tolerance, multiplied by ISOSPEC_TOLERANCE_SCALE when set.
double default_tolerance(Identity id);

struct ResidualReport {
  Identity identity = Identity::ClassicalODE;
  FamilyId family = FamilyId::hermite();
  int n = 0;
  std::optional<double> gamma;
  bool applicable = true;
  std::string note;
  double max_abs_residual = 0.0;
  double max_rel_residual = 0.0;
  double scale = 1.0;
  double tolerance = 0.0;
  bool pass = true;
  /// Quadrature value, measured C± scalar or fitted 1/γ constant.
  std::optional<double> measured;
};

/// Verification grid for a family: 1e-3 of the width inside finite ends of
/// bounded domains, [0.05, 20] for Laguerre and Bessel, [-4, 4] for Hermite.
GridSpec default_grid(const FamilyId& family, int count = 400);

/// Empty when applicable; otherwise the reason.
std::optional<std::string> not_applicable_reason(Identity id, const FamilyId& family, int n);

/// Evaluates one identity against its independent oracle on the grid.
///
/// Throws NotApplicable, InadmissibleGamma, or ParameterError when a
/// deformation identity is called without γ. LimitGammaInf and
/// BesselGammaZero choose their own γ values and ignore `gamma`.
ResidualReport run_identity(Identity id, const FamilyId& family, int n, std::optional<double> gamma,
                            const GridSpec& grid, double tol);

/// γ values at threshold × {1.5, 3, 10, ...}; sign alternates for |γ| > c
/// rules, negative for γ < 0 rules; {0, 1, 10, ...} for γ >= 0. The constant
/// is the largest over n-1, n, n+1 so the third-order chain is admissible too.
std::vector<double> sample_gammas(const FamilySpec& spec, int n, int count);

/// Families used by `--families all`.
std::vector<FamilyId> default_families();

/// Sweep every identity × family × n <= n_max × sampled γ. Deterministic for a
/// given seed. Cells that do not apply are reported with applicable = false;
/// numerical failures are reported as failing cells.
std::vector<ResidualReport> run_suite(std::span<const FamilyId> families, int n_max, int gammas_per_family,
                                      std::uint64_t seed);

bool all_pass(std::span<const ResidualReport> reports);

}  // namespace isospec
