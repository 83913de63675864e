// isospec: tabulate classical and deformed functions, run the identity
// suite, query gamma bounds.
//
// Exit codes: 0 success, 1 verification failure, 2 argument error,
// 3 inadmissible gamma, 4 numerical failure.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "isospec/classical.hpp"
#include "isospec/deformation.hpp"
#include "isospec/errors.hpp"
#include "isospec/families.hpp"
#include "isospec/io.hpp"
#include "isospec/verify.hpp"

namespace {

using namespace isospec;

struct Options {
  std::string family;
  int n = 0;
  std::optional<double> gamma;
  std::string grid;
  std::string spacing = "uniform";
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> lambda;
  std::string format;
  std::string output;
  bool derivatives = false;
  std::string families = "all";
  std::optional<int> n_max;
  std::uint64_t seed = 42;
  int gammas = 3;
  std::vector<std::string> tolerances;
  std::string identity;
};

FamilyId make_family(FamilyKind kind, const Options& o) {
  switch (kind) {
    case FamilyKind::Hermite:
      return FamilyId::hermite();
    case FamilyKind::Laguerre:
      return FamilyId::laguerre(o.alpha.value_or(0.0));
    case FamilyKind::Legendre:
      return FamilyId::legendre();
    case FamilyKind::Chebyshev:
      return FamilyId::chebyshev();
    case FamilyKind::JacobiFunction:
      return FamilyId::jacobi_function(o.alpha.value_or(2.5), o.lambda.value_or(1.5));
    case FamilyKind::JacobiPolynomial:
      return FamilyId::jacobi_polynomial(o.alpha.value_or(0.5), o.beta.value_or(-0.25));
    case FamilyKind::Bessel:
      return FamilyId::bessel();
  }
  throw ParameterError("unknown family");
}

FamilyId single_family(const Options& o) {
  if (o.family.empty()) throw ParameterError("--family is required");
  return make_family(parse_family_kind(o.family), o);
}

GridSpec grid_for(const Options& o, const FamilyId& family, int default_count) {
  GridSpec g = o.grid.empty() ? default_grid(family, default_count) : parse_grid(o.grid);
  if (o.spacing == "uniform") {
    g.spacing = GridSpacing::Uniform;
  } else if (o.spacing == "chebyshev-clustered") {
    g.spacing = GridSpacing::ChebyshevClustered;
  } else {
    throw ParameterError("--spacing must be uniform or chebyshev-clustered");
  }
  return g;
}

Format format_for(const Options& o, Format fallback) { return o.format.empty() ? fallback : parse_format(o.format); }

std::map<Identity, double> tolerance_overrides(const Options& o) {
  std::map<Identity, double> out;
  for (const std::string& t : o.tolerances) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParameterError("--tolerance expects identity=value, got '" + t + "'");
    const double v = parse_double(std::string_view(t).substr(eq + 1));
    if (!(v > 0.0)) throw ParameterError("--tolerance value must be positive");
    out[parse_identity(std::string_view(t).substr(0, eq))] = v;
  }
  return out;
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw ParameterError("cannot open output file '" + o.output + "'");
  f << text;
  if (!f) throw ParameterError("failed writing output file '" + o.output + "'");
}

int cmd_tabulate(const Options& o) {
  const FamilyId family = single_family(o);
  if (o.n < 0) throw ParameterError("--n must be >= 0");
  const GridSpec grid = grid_for(o, family, 101);
  const std::vector<double> xs = grid.points();

  Table t;
  t.columns = {"x", "psi_n", "psi_np1"};
  if (o.derivatives) t.columns.insert(t.columns.end(), {"psi_n_d1", "psi_n_d2", "psi_np1_d1", "psi_np1_d2"});
  std::optional<DeformationContext> ctx;
  if (o.gamma) {
    ctx.emplace(spec_for(family), o.n, *o.gamma, xs);
    t.columns.insert(t.columns.end(), {"b", "psi_tilde"});
    if (o.derivatives) t.columns.insert(t.columns.end(), {"db", "psi_tilde_d1", "psi_tilde_d2"});
  }
  for (double x : xs) {
    const ClassicalEval lo = eval_classical(family, o.n, x);
    const ClassicalEval hi = eval_classical(family, o.n + 1, x);
    std::vector<Cell> row{x, lo.value, hi.value};
    if (o.derivatives) row.insert(row.end(), {lo.d1, lo.d2, hi.d1, hi.d2});
    if (ctx) {
      const DeformedEval e = eval_psi_tilde(*ctx, x);
      row.insert(row.end(), {e.b, e.psi_tilde});
      if (o.derivatives) row.insert(row.end(), {e.db, e.psi_tilde_d1, e.psi_tilde_d2});
    }
    t.rows.push_back(std::move(row));
  }
  std::ostringstream out;
  write_table(out, t, format_for(o, Format::Csv));
  emit(o, out.str());
  return 0;
}

int cmd_bounds(const Options& o) {
  const FamilyId family = single_family(o);
  const int n_max = o.n_max.value_or(3);
  if (n_max < 0) throw ParameterError("--n-max must be >= 0");
  const FamilySpec spec = spec_for(family);
  Table t;
  t.columns = {"n", "kind", "threshold", "constant", "quadrature", "discrepancy"};
  for (int n = 0; n <= n_max; ++n) {
    check_index(spec, n);
    const double constant = spec.gamma_rule.boundary(n);
    std::vector<Cell> row{std::int64_t{n}, std::string(gamma_bound_kind_name(spec.gamma_rule.kind)),
                          spec.gamma_rule.threshold(n), constant};
    if (family.kind() == FamilyKind::Bessel) {
      row.insert(row.end(), {Cell{}, Cell{}});
    } else {
      const double q = reference_integral(spec, n);
      row.insert(row.end(), {q, std::abs(q - constant) / std::abs(constant)});
    }
    t.rows.push_back(std::move(row));
  }
  std::ostringstream out;
  write_table(out, t, format_for(o, Format::Csv));
  emit(o, out.str());
  return 0;
}

std::vector<FamilyId> family_list(const Options& o) {
  if (o.families == "all") return default_families();
  std::vector<FamilyId> out;
  std::string_view rest = o.families;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view name = rest.substr(0, comma);
    if (!name.empty()) out.push_back(make_family(parse_family_kind(name), o));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

void apply_overrides(std::vector<ResidualReport>& reports, const std::map<Identity, double>& tol) {
  for (ResidualReport& r : reports) {
    const auto it = tol.find(r.identity);
    if (it == tol.end()) continue;
    r.tolerance = it->second;
    if (r.applicable) r.pass = r.max_rel_residual <= r.tolerance;
  }
}

std::string render_reports(const Options& o, const std::vector<ResidualReport>& reports) {
  if (format_for(o, Format::Json) == Format::Json) return reports_to_json(reports) + "\n";
  std::ostringstream out;
  write_table(out, reports_table(reports), Format::Csv);
  return out.str();
}

int cmd_verify(const Options& o) {
  const std::vector<FamilyId> families = family_list(o);
  const auto tol = tolerance_overrides(o);
  if (o.gammas < 1) throw ParameterError("--gammas must be >= 1");
  std::vector<ResidualReport> reports = run_suite(families, o.n_max.value_or(4), o.gammas, o.seed);
  apply_overrides(reports, tol);
  emit(o, render_reports(o, reports));
  std::size_t pass = 0;
  std::size_t na = 0;
  for (const auto& r : reports) {
    if (!r.applicable) {
      ++na;
    } else if (r.pass) {
      ++pass;
    }
  }
  std::cerr << "verify: " << reports.size() << " reports, " << pass << " pass, " << reports.size() - pass - na
            << " fail, " << na << " not applicable\n";
  return all_pass(reports) ? 0 : 1;
}

int cmd_residual(const Options& o) {
  if (o.identity.empty()) throw ParameterError("--identity is required");
  const Identity id = parse_identity(o.identity);
  const FamilyId family = single_family(o);
  const GridSpec grid = grid_for(o, family, 400);
  const auto tol = tolerance_overrides(o);
  const auto it = tol.find(id);
  std::vector<ResidualReport> reports{
      run_identity(id, family, o.n, o.gamma, grid, it == tol.end() ? default_tolerance(id) : it->second)};
  emit(o, render_reports(o, reports));
  return reports.front().pass ? 0 : 1;
}

// "--grid -4:4:9" would otherwise read "-4:4:9" as a short option.
std::vector<std::string> join_negative_values(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    const bool negative_value = a.size() > 1 && a[0] == '-' && (std::isdigit(static_cast<unsigned char>(a[1])) || a[1] == '.');
    if (negative_value && !args.empty() && args.back().rfind("--", 0) == 0 &&
        args.back().find('=') == std::string::npos) {
      args.back() += "=" + a;
    } else {
      args.push_back(std::move(a));
    }
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isospectral deformations of classical special functions"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key = value file mirroring the flags; flags override it");
  Options o;
  app.add_option("--family", o.family, "hermite|laguerre|legendre|chebyshev|jacobi-function|jacobi-polynomial|bessel");
  app.add_option("--n", o.n, "Index n");
  app.add_option("--gamma", o.gamma, "Deformation parameter");
  app.add_option("--grid", o.grid, "lo:hi:count");
  app.add_option("--spacing", o.spacing, "uniform|chebyshev-clustered");
  app.add_option("--alpha", o.alpha, "Laguerre / Jacobi alpha");
  app.add_option("--beta", o.beta, "Jacobi-polynomial beta");
  app.add_option("--lambda", o.lambda, "Jacobi-function lambda");
  app.add_option("--format", o.format, "csv|json");
  app.add_option("--output", o.output, "Output file (default stdout)");
  app.add_flag("--derivatives", o.derivatives, "Add first and second derivative columns");
  app.add_option("--families", o.families, "all, or a comma-separated family list");
  app.add_option("--n-max", o.n_max, "Largest index");
  app.add_option("--seed", o.seed, "Seed for random verification grids");
  app.add_option("--gammas", o.gammas, "Sampled gamma values per family and index");
  app.add_option("--tolerance", o.tolerances, "identity=value override, repeatable");
  app.add_option("--identity", o.identity, "Identity for the residual command");

  auto* tabulate = app.add_subcommand("tabulate", "Tabulate psi_n, psi_{n+1} and, with --gamma, b and psi_tilde");
  auto* verify = app.add_subcommand("verify", "Run the identity suite; exit 1 when any check fails");
  auto* bounds = app.add_subcommand("bounds", "Gamma-bound constants with quadrature cross-check");
  auto* residual = app.add_subcommand("residual", "Run one identity");
  for (auto* sub : {tabulate, verify, bounds, residual}) sub->fallthrough();

  std::vector<std::string> args = join_negative_values(argc, argv);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*tabulate) return cmd_tabulate(o);
    if (*verify) return cmd_verify(o);
    if (*bounds) return cmd_bounds(o);
    return cmd_residual(o);
  } catch (const InadmissibleGamma& e) {
    std::cerr << "isospec: inadmissible gamma: " << e.what() << '\n';
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "isospec: numerical failure: " << e.what() << '\n';
    return 4;
  } catch (const Error& e) {
    std::cerr << "isospec: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "isospec: numerical failure: " << e.what() << '\n';
    return 4;
  }
}
