#include "isospec/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "isospec/errors.hpp"
#include "json.hpp"

namespace isospec {

using json = nlohmann::ordered_json;

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw ParameterError("unknown format '" + std::string(name) + "' (expected csv or json)");
}

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw ParameterError("no column '" + std::string(name) + "'");
}

double Table::number(std::size_t row, std::string_view name) const {
  const Cell& c = rows.at(row).at(column(name));
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  throw ParameterError("column '" + std::string(name) + "' is not numeric");
}

std::string format_double(double v) {
  if (!std::isfinite(v)) throw NonFiniteError("refusing to serialize a non-finite value");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParameterError("cannot parse number '" + std::string(text) + "'");
  }
  return v;
}

namespace {

std::string csv_field(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* s = std::get_if<std::string>(&c)) {
    if (s->find_first_of(",\"\n\r") == std::string::npos) return *s;
    std::string q = "\"";
    for (char ch : *s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + '"';
  }
  return {};
}

json json_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) throw NonFiniteError("refusing to serialize a non-finite value");
    return *d;
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  return nullptr;
}

Cell cell_from_json(const json& j) {
  if (j.is_null()) return std::monostate{};
  if (j.is_number_float()) return j.get<double>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return std::string(j.get<bool>() ? "true" : "false");
  throw ParameterError("unsupported JSON cell: " + j.dump());
}

Cell cell_from_csv(const std::string& field, bool quoted) {
  if (quoted) return field;
  if (field.empty()) return std::monostate{};
  std::int64_t i = 0;
  const char* end = field.data() + field.size();
  if (auto [p, ec] = std::from_chars(field.data(), end, i); ec == std::errc() && p == end) {
    if (i == 0 && field.front() == '-') return -0.0;
    return i;
  }
  double d = 0.0;
  if (auto [p, ec] = std::from_chars(field.data(), end, d); ec == std::errc() && p == end) return d;
  return field;
}

// One CSV record per line; quoted fields may contain commas, quotes and newlines.
std::vector<std::vector<Cell>> parse_csv(std::string_view text) {
  std::vector<std::vector<Cell>> records;
  std::vector<Cell> record;
  std::string field;
  bool quoted = false;
  bool in_quotes = false;
  bool any = false;
  const auto end_field = [&] {
    record.push_back(cell_from_csv(field, quoted));
    field.clear();
    quoted = false;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (in_quotes) {
      if (ch == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        in_quotes = false;
      } else {
        field += ch;
      }
      continue;
    }
    any = true;
    if (ch == '"') {
      in_quotes = true;
      quoted = true;
    } else if (ch == ',') {
      end_field();
    } else if (ch == '\n' || ch == '\r') {
      if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      end_field();
      records.push_back(std::move(record));
      record.clear();
      any = false;
    } else {
      field += ch;
    }
  }
  if (in_quotes) throw ParameterError("csv: unterminated quoted field");
  if (any) {
    end_field();
    records.push_back(std::move(record));
  }
  return records;
}

json report_json(const ResidualReport& r) {
  json j;
  j["identity"] = std::string(identity_name(r.identity));
  j["family"] = std::string(r.family.name());
  j["family_label"] = r.family.label();
  switch (r.family.kind()) {
    case FamilyKind::Laguerre:
      j["alpha"] = r.family.alpha();
      break;
    case FamilyKind::JacobiFunction:
      j["alpha"] = r.family.alpha();
      j["lambda"] = r.family.lambda();
      break;
    case FamilyKind::JacobiPolynomial:
      j["alpha"] = r.family.alpha();
      j["beta"] = r.family.beta();
      break;
    default:
      break;
  }
  j["n"] = r.n;
  j["gamma"] = r.gamma ? json(*r.gamma) : json(nullptr);
  j["applicable"] = r.applicable;
  j["pass"] = r.pass;
  j["max_abs_residual"] = r.max_abs_residual;
  j["max_rel_residual"] = r.max_rel_residual;
  j["scale"] = r.scale;
  j["tolerance"] = r.tolerance;
  j["measured"] = r.measured ? json(*r.measured) : json(nullptr);
  j["note"] = r.note;
  for (const char* key : {"gamma", "max_abs_residual", "max_rel_residual", "scale", "tolerance", "measured"}) {
    if (j[key].is_number_float() && !std::isfinite(j[key].get<double>())) {
      throw NonFiniteError(std::string("report field '") + key + "' is not finite");
    }
  }
  return j;
}

FamilyId family_from_json(const json& j) {
  switch (parse_family_kind(j.at("family").get<std::string>())) {
    case FamilyKind::Hermite:
      return FamilyId::hermite();
    case FamilyKind::Laguerre:
      return FamilyId::laguerre(j.at("alpha").get<double>());
    case FamilyKind::Legendre:
      return FamilyId::legendre();
    case FamilyKind::Chebyshev:
      return FamilyId::chebyshev();
    case FamilyKind::JacobiFunction:
      return FamilyId::jacobi_function(j.at("alpha").get<double>(), j.at("lambda").get<double>());
    case FamilyKind::JacobiPolynomial:
      return FamilyId::jacobi_polynomial(j.at("alpha").get<double>(), j.at("beta").get<double>());
    case FamilyKind::Bessel:
      return FamilyId::bessel();
  }
  throw ParameterError("unknown family");
}

std::optional<double> optional_number(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

}  // namespace

void write_table(std::ostream& out, const Table& table, Format format) {
  if (format == Format::Csv) {
    std::string line;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      if (i) line += ',';
      line += csv_field(Cell(table.columns[i]));
    }
    out << line << '\n';
    for (const auto& row : table.rows) {
      line.clear();
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) line += ',';
        line += csv_field(row[i]);
      }
      out << line << '\n';
    }
    return;
  }
  json arr = json::array();
  for (const auto& row : table.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) obj[table.columns[i]] = json_cell(row[i]);
    arr.push_back(std::move(obj));
  }
  out << arr.dump(2) << '\n';
}

Table read_table(std::string_view text, Format format) {
  Table t;
  if (format == Format::Csv) {
    auto records = parse_csv(text);
    if (records.empty()) return t;
    for (const Cell& c : records.front()) {
      const auto* s = std::get_if<std::string>(&c);
      t.columns.push_back(s ? *s : csv_field(c));
    }
    t.rows.assign(std::make_move_iterator(records.begin() + 1), std::make_move_iterator(records.end()));
    return t;
  }
  json arr;
  try {
    arr = json::parse(text);
  } catch (const json::exception& e) {
    throw ParameterError(std::string("json: ") + e.what());
  }
  if (!arr.is_array()) throw ParameterError("json: expected an array of row objects");
  for (const auto& obj : arr) {
    // The first row fixes the column set.
    if (t.columns.empty()) {
      for (const auto& [key, value] : obj.items()) t.columns.push_back(key);
    }
    std::vector<Cell> row;
    for (const auto& c : t.columns) row.push_back(obj.contains(c) ? cell_from_json(obj.at(c)) : Cell{});
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string reports_to_json(std::span<const ResidualReport> reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  return arr.dump(2);
}

std::vector<ResidualReport> reports_from_json(std::string_view text) {
  std::vector<ResidualReport> out;
  try {
    const json arr = json::parse(text);
    if (!arr.is_array()) throw ParameterError("json: expected an array of reports");
    for (const auto& j : arr) {
      ResidualReport r;
      r.identity = parse_identity(j.at("identity").get<std::string>());
      r.family = family_from_json(j);
      r.n = j.at("n").get<int>();
      r.gamma = optional_number(j, "gamma");
      r.applicable = j.at("applicable").get<bool>();
      r.pass = j.at("pass").get<bool>();
      r.max_abs_residual = j.at("max_abs_residual").get<double>();
      r.max_rel_residual = j.at("max_rel_residual").get<double>();
      r.scale = j.at("scale").get<double>();
      r.tolerance = j.at("tolerance").get<double>();
      r.measured = optional_number(j, "measured");
      r.note = j.value("note", "");
      out.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw ParameterError(std::string("json: ") + e.what());
  }
  return out;
}

Table reports_table(std::span<const ResidualReport> reports) {
  Table t;
  t.columns = {"identity", "family", "n", "gamma", "applicable", "pass", "max_abs_residual",
               "max_rel_residual", "scale", "tolerance", "measured", "note"};
  for (const auto& r : reports) {
    t.rows.push_back({std::string(identity_name(r.identity)), r.family.label(), std::int64_t{r.n},
                      r.gamma ? Cell(*r.gamma) : Cell{}, std::string(r.applicable ? "true" : "false"),
                      std::string(r.pass ? "true" : "false"), r.max_abs_residual, r.max_rel_residual, r.scale,
                      r.tolerance, r.measured ? Cell(*r.measured) : Cell{}, r.note});
  }
  return t;
}

}  // namespace isospec
