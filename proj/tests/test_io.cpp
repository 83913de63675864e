#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <sstream>

#include "doctest.h"
#include "isospec/errors.hpp"
#include "isospec/io.hpp"

using namespace isospec;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

Table random_table(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> ex(-300, 300);
  Table t;
  t.columns = {"x", "psi_n", "psi_np1"};
  for (int i = 0; i < 200; ++i) {
    std::vector<Cell> row;
    for (int c = 0; c < 3; ++c) row.emplace_back(std::ldexp(mant(rng), ex(rng)));
    t.rows.push_back(row);
  }
  t.rows.push_back({0.0, -0.0, std::numeric_limits<double>::denorm_min()});
  t.rows.push_back({std::numeric_limits<double>::max(), 0.1, 1.0 / 3.0});
  return t;
}

}  // namespace

TEST_CASE("format_double") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(0.8862269254527580) == "0.886226925452758");
  CHECK_THROWS_AS(format_double(std::nan("")), NonFiniteError);
  CHECK_THROWS_AS(format_double(INFINITY), NonFiniteError);
  CHECK(parse_double("1e-3") == 1e-3);
  CHECK_THROWS_AS(parse_double("1.5x"), ParameterError);
  CHECK_THROWS_AS(parse_format("xml"), ParameterError);
}

TEST_CASE("tables round trip bit for bit") {
  for (Format f : {Format::Csv, Format::Json}) {
    const Table t = random_table(9);
    std::ostringstream out;
    write_table(out, t, f);
    const Table back = read_table(out.str(), f);
    REQUIRE(back.columns == t.columns);
    REQUIRE(back.rows.size() == t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      for (const std::string& c : t.columns) {
        CHECK(same_bits(back.number(r, c), std::get<double>(t.rows[r][t.column(c)])));
      }
    }
  }
}

TEST_CASE("text and empty cells") {
  Table t;
  t.columns = {"n", "kind", "constant", "quadrature"};
  t.rows.push_back({std::int64_t{2}, std::string("abs, \"greater\""), 1.5, std::monostate{}});
  for (Format f : {Format::Csv, Format::Json}) {
    std::ostringstream out;
    write_table(out, t, f);
    const Table back = read_table(out.str(), f);
    REQUIRE(back.rows.size() == 1);
    CHECK(back.number(0, "n") == 2.0);
    CHECK(std::get<std::string>(back.rows[0][1]) == "abs, \"greater\"");
    CHECK(std::holds_alternative<std::monostate>(back.rows[0][3]));
  }
  CHECK_THROWS_AS(t.column("missing"), ParameterError);
  Table bad = t;
  bad.rows[0][2] = std::nan("");
  std::ostringstream out;
  CHECK_THROWS_AS(write_table(out, bad, Format::Csv), NonFiniteError);
}

TEST_CASE("reports round trip through JSON") {
  std::vector<ResidualReport> rs(2);
  rs[0].identity = Identity::RiccatiB;
  rs[0].family = FamilyId::jacobi_polynomial(0.5, -0.25);
  rs[0].n = 3;
  rs[0].gamma = -7.25;
  rs[0].max_abs_residual = 1.0 / 3.0;
  rs[0].max_rel_residual = 2e-9;
  rs[0].scale = 11.5;
  rs[0].tolerance = 1e-6;
  rs[1].identity = Identity::BesselClosedForm;
  rs[1].family = FamilyId::laguerre(0.5);
  rs[1].applicable = false;
  rs[1].note = "Bessel only";
  rs[1].measured = 3.5;
  const auto back = reports_from_json(reports_to_json(rs));
  REQUIRE(back.size() == 2);
  CHECK(back[0].identity == Identity::RiccatiB);
  CHECK(back[0].family == rs[0].family);
  CHECK(back[0].gamma == rs[0].gamma);
  CHECK(same_bits(back[0].max_abs_residual, rs[0].max_abs_residual));
  CHECK(back[1].family == rs[1].family);
  CHECK_FALSE(back[1].applicable);
  CHECK(back[1].note == "Bessel only");
  CHECK_FALSE(back[1].gamma.has_value());
  CHECK(back[1].measured == 3.5);
  CHECK(reports_table(rs).rows.size() == 2);
  CHECK(reports_to_json({}) == "[]");
}
