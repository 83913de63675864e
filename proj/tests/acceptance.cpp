// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
//
// Tolerances are written out here rather than taken from the library so that
// ISOSPEC_TOLERANCE_SCALE cannot loosen them.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "isospec/deformation.hpp"
#include "isospec/errors.hpp"
#include "isospec/io.hpp"
#include "isospec/verify.hpp"

using namespace isospec;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Tracks the worst cell of a sweep.
struct Sweep {
  int cells = 0;
  int failures = 0;
  double worst = 0.0;
  std::string worst_cell;
  std::string first_failure;

  void add(const ResidualReport& r, double tol) {
    ++cells;
    const bool ok = r.applicable && r.max_rel_residual <= tol;
    std::ostringstream where;
    where << identity_name(r.identity) << ' ' << r.family.label() << " n=" << r.n;
    if (r.gamma) where << " gamma=" << *r.gamma;
    if (!ok) {
      ++failures;
      if (first_failure.empty()) first_failure = where.str() + (r.note.empty() ? "" : " (" + r.note + ")");
    }
    if (r.max_rel_residual >= worst) {
      worst = r.max_rel_residual;
      worst_cell = where.str();
    }
  }

  void fail(const std::string& where) {
    ++cells;
    ++failures;
    if (first_failure.empty()) first_failure = where;
  }

  Outcome outcome() const {
    std::ostringstream s;
    s << cells << " cells, worst " << worst << " at " << worst_cell;
    if (failures) s << "; " << failures << " failed, first: " << first_failure;
    return {failures == 0 && cells > 0, s.str()};
  }
};

void run_cell(Sweep& sweep, Identity id, const FamilyId& f, int n, std::optional<double> gamma, const GridSpec& g,
              double tol) {
  try {
    sweep.add(run_identity(id, f, n, gamma, g, tol), tol);
  } catch (const std::exception& e) {
    std::ostringstream where;
    where << identity_name(id) << ' ' << f.label() << " n=" << n << ": " << e.what();
    sweep.fail(where.str());
  }
}

// Sweep over every family, n = 0..6 and three admissible γ per (family, n).
Outcome gamma_sweep(const std::vector<std::pair<Identity, double>>& checks, int n_lo = 0, int n_hi = 6) {
  Sweep sweep;
  for (const FamilyId& f : default_families()) {
    const FamilySpec spec = spec_for(f);
    for (int n = n_lo; n <= n_hi; ++n) {
      for (double gamma : sample_gammas(spec, n, 3)) {
        for (const auto& [id, tol] : checks) {
          if (not_applicable_reason(id, f, n)) continue;
          run_cell(sweep, id, f, n, gamma, default_grid(f, 400), tol);
        }
      }
    }
  }
  return sweep.outcome();
}

double double_factorial(int k) {
  double r = 1.0;
  for (; k > 1; k -= 2) r *= k;
  return r;
}

Outcome c1_annihilation() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o = gamma_sweep({{Identity::AnnihilationLtilde, 1e-8}, {Identity::AnnihilationLtildeFD, 1e-5}});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream s;
  s << o.detail << "; " << secs << " s";
  o.detail = s.str();
  o.pass = o.pass && secs < 60.0;
  return o;
}

Outcome c2_riccati() { return gamma_sweep({{Identity::RiccatiB, 1e-6}}); }
Outcome c3_factorization() { return gamma_sweep({{Identity::FactorizationBB, 1e-8}}); }
Outcome c4_eigenvalue() { return gamma_sweep({{Identity::EigenvalueBB, 1e-7}}); }

Outcome c5_bounds() {
  Sweep sweep;
  const auto check = [&](const FamilyId& f, int n, double expected) {
    try {
      const ResidualReport r =
          run_identity(Identity::GammaBoundQuadrature, f, n, std::nullopt, default_grid(f), 1e-9);
      ResidualReport against = r;
      against.max_rel_residual = std::abs(r.measured.value() - expected) / std::abs(expected);
      sweep.add(against, 1e-9);
    } catch (const std::exception& e) {
      sweep.fail(f.label() + " n=" + std::to_string(n) + ": " + e.what());
    }
  };
  for (int n = 0; n <= 6; ++n) {
    check(FamilyId::hermite(), n, 0.8862269254527580);
    check(FamilyId::legendre(), n, 2.0 * double_factorial(2 * n) / double_factorial(2 * n + 1));
    check(FamilyId::chebyshev(), n, std::numbers::pi * double_factorial(2 * n - 1) / double_factorial(2 * n));
  }
  for (double alpha : {0.0, 0.5}) {
    for (int n = 0; n <= 4; ++n) check(FamilyId::laguerre(alpha), n, std::tgamma(alpha + 2 * n + 2));
  }
  for (auto [a, b] : {std::pair{0.0, 0.0}, std::pair{0.5, -0.25}}) {
    for (int n = 0; n <= 3; ++n) {
      const double q = 2 * n + 2 + a + b;
      const double p = (b * b - a * a) / q;
      check(FamilyId::jacobi_polynomial(a, b), n,
            std::pow(2.0, q - 1) * std::tgamma((q + p) / 2) * std::tgamma((q - p) / 2) / std::tgamma(q));
    }
  }
  return sweep.outcome();
}

Outcome c6_bessel() {
  Sweep sweep;
  GridSpec g;
  g.lo = 0.5;
  g.hi = 10.0;
  g.count = 400;
  const std::vector<double> xs = g.points();
  for (int n = 1; n <= 3; ++n) {
    // ψ̃_{n+1} at γ = 0 against the standard library's J_{n-1}.
    try {
      const DeformationContext ctx = make_context(FamilyId::bessel(), n, 0.0, g);
      ResidualReport r;
      r.identity = Identity::BesselGammaZero;
      r.family = FamilyId::bessel();
      r.n = n;
      r.gamma = 0.0;
      for (double x : xs) {
        const double err = std::abs(eval_psi_tilde(ctx, x).psi_tilde - std::cyl_bessel_j(double(n - 1), x));
        r.max_rel_residual = std::max(r.max_rel_residual, err);
      }
      sweep.add(r, 1e-9);
    } catch (const std::exception& e) {
      sweep.fail("bessel gamma=0 n=" + std::to_string(n) + ": " + e.what());
    }
    run_cell(sweep, Identity::BesselGammaZero, FamilyId::bessel(), n, std::nullopt, g, 1e-9);
    for (double gamma : sample_gammas(spec_for(FamilyId::bessel()), n, 3)) {
      run_cell(sweep, Identity::BesselClosedForm, FamilyId::bessel(), n, gamma, default_grid(FamilyId::bessel()),
               1e-8);
    }
  }
  return sweep.outcome();
}

Outcome c7_ladders() {
  Sweep sweep;
  std::uint64_t seed = 1;
  for (const FamilyId& f : default_families()) {
    for (int n = 0; n <= 8; ++n) {
      try {
        check_index(spec_for(f), n + 1);
      } catch (const ParameterError&) {
        break;
      }
      GridSpec g = default_grid(f);
      g.count = 100;
      g.spacing = GridSpacing::Random;
      g.seed = seed++;
      for (Identity id : {Identity::LadderRaise, Identity::LadderLower}) run_cell(sweep, id, f, n, std::nullopt, g, 1e-9);
    }
  }
  return sweep.outcome();
}

Outcome c8_limit() {
  Sweep sweep;
  for (const FamilyId& f : default_families()) {
    GridSpec g = default_grid(f);
    if (f.kind() == FamilyKind::Bessel) {
      g.lo = 0.5;
      g.hi = 10.0;
    }
    // Bessel b vanishes identically at n = 0, so there is nothing to scale.
    for (int n = f.kind() == FamilyKind::Bessel ? 1 : 0; n <= 6; ++n) {
      run_cell(sweep, Identity::LimitGammaInf, f, n, std::nullopt, g, 1.0);
    }
  }
  return sweep.outcome();
}

Outcome c9_c_ladders() {
  Outcome o = gamma_sweep({{Identity::CLadderPlus, 1e-5}, {Identity::CLadderMinus, 1e-5}}, 1, 3);
  int raised = 0;
  for (const FamilyId& f : default_families()) {
    const FamilySpec spec = spec_for(f);
    try {
      const DeformationChain chain(f, 0, sample_gammas(spec, 0, 1).front(), default_grid(f));
    } catch (const IndexError&) {
      ++raised;
    } catch (const std::exception&) {
    }
  }
  const int expected = static_cast<int>(default_families().size());
  o.detail += "; n=0 IndexError " + std::to_string(raised) + "/" + std::to_string(expected);
  o.pass = o.pass && raised == expected;
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Outcome c10_cli() {
  std::vector<std::string> failed;
  const auto expect = [&](const std::string& args, int code) {
    const int got = cli::run(args).code;
    if (got != code) failed.push_back("'" + args + "' exited " + std::to_string(got));
  };
  expect("tabulate --family legendre --n 0 --grid -2:2:9", 2);
  expect("tabulate --family nosuch --n 0", 2);
  expect("tabulate --family chebyshev --n 1 --gamma 3", 3);
  expect("tabulate --family hermite --n 0 --gamma 0.88622692545275813 --grid -4:4:81", 4);

  for (const char* fmt : {"csv", "json"}) {
    const std::string path =
        (std::filesystem::temp_directory_path() / (std::string("isospec_acceptance.") + fmt)).string();
    const cli::Result r = cli::run(std::string("tabulate --family jacobi-polynomial --n 2 --gamma 9 --derivatives ") +
                                   "--format " + fmt + " --output " + path);
    try {
      const Format f = parse_format(fmt);
      const std::string text = slurp(path);
      std::ostringstream again;
      write_table(again, read_table(text, f), f);
      if (r.code != 0 || text.empty() || again.str() != text) failed.push_back(std::string(fmt) + " round trip");
    } catch (const std::exception& e) {
      failed.push_back(std::string(fmt) + " round trip: " + e.what());
    }
    std::remove(path.c_str());
  }

  const auto t0 = std::chrono::steady_clock::now();
  expect("verify --families all --n-max 4 --seed 42", 0);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::ostringstream s;
  s << "exit codes 2/3/4, csv/json round trip, full verify in " << secs << " s";
  for (const std::string& f : failed) s << "; " << f;
  return {failed.empty(), s.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"C1 annihilation", c1_annihilation},
      {"C2 riccati", c2_riccati},
      {"C3 factorization", c3_factorization},
      {"C4 eigenvalue", c4_eigenvalue},
      {"C5 gamma bounds", c5_bounds},
      {"C6 bessel degenerate", c6_bessel},
      {"C7 classical ladders", c7_ladders},
      {"C8 gamma limit", c8_limit},
      {"C9 third-order ladders", c9_c_ladders},
      {"C10 cli contract", c10_cli},
  };
  bool all = true;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  }
  return all ? 0 : 1;
}
