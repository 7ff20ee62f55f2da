#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "zeta/harness.hpp"

namespace zeta::harness {
namespace {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// CSV primitives (RFC 4180, LF line endings)

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string_view>& header) {
    for (auto h : header) field(std::string(h));
    end_row();
  }
  CsvWriter& field(const std::string& s) {
    if (!first_) out_ += ',';
    out_ += quote(s);
    first_ = false;
    return *this;
  }
  CsvWriter& field(double x) { return field(fmt(x)); }
  CsvWriter& field(std::int64_t n) { return field(std::to_string(n)); }
  CsvWriter& field(bool b) { return field(std::string(b ? "true" : "false")); }
  void end_row() {
    out_ += '\n';
    first_ = true;
  }
  std::string str() const { return out_; }

 private:
  std::string out_;
  bool first_ = true;
};

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    any = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      record.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(record));
      record.clear();
      any = false;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw IoError("unterminated quoted CSV field");
  if (any || !field.empty() || !record.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

double to_double(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw IoError("trailing characters in number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    // stod rejects subnormals with out_of_range; strtod handles them.
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0') throw IoError("not a number in CSV: '" + s + "'");
    return v;
  }
}

std::int64_t to_int(const std::string& s) {
  try {
    return std::stoll(s);
  } catch (const std::logic_error&) {
    throw IoError("not an integer in CSV: '" + s + "'");
  }
}

bool to_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw IoError("not a boolean in CSV: '" + s + "'");
}

void expect_header(const std::vector<std::vector<std::string>>& records,
                   const std::vector<std::string_view>& header) {
  if (records.empty()) throw IoError("CSV has no header");
  const auto& got = records.front();
  if (got.size() != header.size() || !std::equal(header.begin(), header.end(), got.begin())) {
    throw IoError("unexpected CSV header");
  }
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].size() != header.size()) throw IoError("CSV row has the wrong field count");
  }
}

const std::vector<std::string_view> kComparisonHeader = {
    "row",       "s_re",     "s_im",        "reference_re", "reference_im",
    "reference_err", "max_abs_deviation", "method", "value_re", "value_im",
    "err_estimate", "evals", "converged", "error"};

const std::vector<std::string_view> kReportHeader = {
    "id",      "variant", "parameters", "lhs_re",  "lhs_im",  "rhs_re",           "rhs_im",
    "abs_diff", "rel_diff", "tol_abs",  "tol_rel", "pass",    "expected_to_hold", "notes"};

// ---------------------------------------------------------------------------
// JSON primitives

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

double json_double(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

Complex json_complex(const Json& j) { return {json_double(j.at("re")), json_double(j.at("im"))}; }

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw IoError(std::string("malformed JSON: ") + e.what());
  }
}

template <class Fn>
auto json_guard(Fn&& fn) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw IoError(std::string("unexpected JSON layout: ") + e.what());
  }
}

std::string params_field(const std::vector<NamedScalar>& params) {
  std::string out;
  for (const auto& p : params) {
    if (!out.empty()) out += ';';
    out += p.name + "=" + fmt(p.value);
  }
  return out;
}

std::vector<NamedScalar> params_from_field(const std::string& field) {
  std::vector<NamedScalar> out;
  if (field.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const auto end = field.find(';', start);
    const std::string item = field.substr(start, end == std::string::npos ? end : end - start);
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw IoError("malformed parameter '" + item + "'");
    out.push_back({item.substr(0, eq), to_double(item.substr(eq + 1))});
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

Format format_from_string(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw UsageError("unknown format '" + std::string(name) + "' (csv or json)");
}

// ---------------------------------------------------------------------------
// Comparison rows

std::string to_csv(const std::vector<ComparisonRow>& rows) {
  CsvWriter w(kComparisonHeader);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ComparisonRow& r = rows[i];
    const auto prefix = [&] {
      w.field(static_cast<std::int64_t>(i))
          .field(r.s.real())
          .field(r.s.imag())
          .field(r.reference.real())
          .field(r.reference.imag())
          .field(r.reference_err)
          .field(r.max_abs_deviation);
    };
    if (r.cells.empty()) {
      prefix();
      for (int k = 0; k < 7; ++k) w.field(std::string());
      w.end_row();
    }
    for (const MethodCell& c : r.cells) {
      prefix();
      w.field(std::string(to_string(c.method)))
          .field(c.value.real())
          .field(c.value.imag())
          .field(c.err_estimate)
          .field(c.evals)
          .field(c.converged)
          .field(c.error);
      w.end_row();
    }
  }
  return w.str();
}

std::vector<ComparisonRow> comparison_from_csv(std::string_view text) {
  const auto records = parse_csv(text);
  expect_header(records, kComparisonHeader);
  std::vector<ComparisonRow> rows;
  std::int64_t current = -1;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i];
    const std::int64_t index = to_int(f[0]);
    if (index != current) {
      if (index != current + 1) throw IoError("comparison rows out of order");
      current = index;
      ComparisonRow row;
      row.s = {to_double(f[1]), to_double(f[2])};
      row.reference = {to_double(f[3]), to_double(f[4])};
      row.reference_err = to_double(f[5]);
      row.max_abs_deviation = to_double(f[6]);
      rows.push_back(row);
    }
    if (f[7].empty()) continue;  // reference-only row
    MethodCell c;
    try {
      c.method = method_from_string(f[7]);
    } catch (const UsageError& e) {
      throw IoError(e.what());
    }
    c.value = {to_double(f[8]), to_double(f[9])};
    c.err_estimate = to_double(f[10]);
    c.evals = to_int(f[11]);
    c.converged = to_bool(f[12]);
    c.error = f[13];
    rows.back().cells.push_back(c);
  }
  return rows;
}

std::string to_json(const std::vector<ComparisonRow>& rows) {
  Json arr = Json::array();
  for (const ComparisonRow& r : rows) {
    Json cells = Json::array();
    for (const MethodCell& c : r.cells) {
      cells.push_back(Json{{"method", to_string(c.method)},
                           {"value", complex_json(c.value)},
                           {"err_estimate", c.err_estimate},
                           {"evals", c.evals},
                           {"converged", c.converged},
                           {"error", c.error}});
    }
    arr.push_back(Json{{"s", complex_json(r.s)},
                       {"reference", complex_json(r.reference)},
                       {"reference_err", r.reference_err},
                       {"max_abs_deviation", r.max_abs_deviation},
                       {"cells", cells}});
  }
  return arr.dump(2) + "\n";
}

std::vector<ComparisonRow> comparison_from_json(std::string_view text) {
  const Json arr = parse_json(text);
  return json_guard([&] {
    std::vector<ComparisonRow> rows;
    for (const Json& j : arr) {
      ComparisonRow r;
      r.s = json_complex(j.at("s"));
      r.reference = json_complex(j.at("reference"));
      r.reference_err = json_double(j.at("reference_err"));
      r.max_abs_deviation = json_double(j.at("max_abs_deviation"));
      for (const Json& c : j.at("cells")) {
        MethodCell cell;
        cell.method = method_from_string(c.at("method").get<std::string>());
        cell.value = json_complex(c.at("value"));
        cell.err_estimate = json_double(c.at("err_estimate"));
        cell.evals = c.at("evals").get<std::int64_t>();
        cell.converged = c.at("converged").get<bool>();
        cell.error = c.at("error").get<std::string>();
        r.cells.push_back(cell);
      }
      rows.push_back(r);
    }
    return rows;
  });
}

// ---------------------------------------------------------------------------
// Identity reports

std::string to_csv(const std::vector<IdentityReport>& reports) {
  CsvWriter w(kReportHeader);
  for (const IdentityReport& r : reports) {
    w.field(std::string(to_string(r.id)))
        .field(r.variant)
        .field(params_field(r.parameters))
        .field(r.lhs.real())
        .field(r.lhs.imag())
        .field(r.rhs.real())
        .field(r.rhs.imag())
        .field(r.abs_diff)
        .field(r.rel_diff)
        .field(r.tol_abs)
        .field(r.tol_rel)
        .field(r.pass)
        .field(r.expected_to_hold)
        .field(r.notes);
    w.end_row();
  }
  return w.str();
}

std::vector<IdentityReport> reports_from_csv(std::string_view text) {
  const auto records = parse_csv(text);
  expect_header(records, kReportHeader);
  std::vector<IdentityReport> out;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i];
    IdentityReport r;
    try {
      r.id = identity_from_string(f[0]);
    } catch (const UsageError& e) {
      throw IoError(e.what());
    }
    r.variant = f[1];
    r.parameters = params_from_field(f[2]);
    r.lhs = {to_double(f[3]), to_double(f[4])};
    r.rhs = {to_double(f[5]), to_double(f[6])};
    r.abs_diff = to_double(f[7]);
    r.rel_diff = to_double(f[8]);
    r.tol_abs = to_double(f[9]);
    r.tol_rel = to_double(f[10]);
    r.pass = to_bool(f[11]);
    r.expected_to_hold = to_bool(f[12]);
    r.notes = f[13];
    out.push_back(r);
  }
  return out;
}

std::string to_json(const std::vector<IdentityReport>& reports) {
  Json arr = Json::array();
  for (const IdentityReport& r : reports) {
    Json params = Json::object();
    for (const auto& p : r.parameters) params[p.name] = p.value;
    arr.push_back(Json{{"id", to_string(r.id)},
                       {"variant", r.variant},
                       {"parameters", params},
                       {"lhs", complex_json(r.lhs)},
                       {"rhs", complex_json(r.rhs)},
                       {"abs_diff", r.abs_diff},
                       {"rel_diff", r.rel_diff},
                       {"tol_abs", r.tol_abs},
                       {"tol_rel", r.tol_rel},
                       {"pass", r.pass},
                       {"expected_to_hold", r.expected_to_hold},
                       {"notes", r.notes}});
  }
  return arr.dump(2) + "\n";
}

std::vector<IdentityReport> reports_from_json(std::string_view text) {
  const Json arr = parse_json(text);
  return json_guard([&] {
    std::vector<IdentityReport> out;
    for (const Json& j : arr) {
      IdentityReport r;
      r.id = identity_from_string(j.at("id").get<std::string>());
      r.variant = j.at("variant").get<std::string>();
      for (const auto& [name, value] : j.at("parameters").items()) {
        r.parameters.push_back({name, json_double(value)});
      }
      r.lhs = json_complex(j.at("lhs"));
      r.rhs = json_complex(j.at("rhs"));
      r.abs_diff = json_double(j.at("abs_diff"));
      r.rel_diff = json_double(j.at("rel_diff"));
      r.tol_abs = json_double(j.at("tol_abs"));
      r.tol_rel = json_double(j.at("tol_rel"));
      r.pass = j.at("pass").get<bool>();
      r.expected_to_hold = j.at("expected_to_hold").get<bool>();
      r.notes = j.at("notes").get<std::string>();
      out.push_back(r);
    }
    return out;
  });
}

// ---------------------------------------------------------------------------
// Benchmarks and zeros

std::string to_csv(const std::vector<BenchRow>& rows) {
  CsvWriter w({"s_re", "s_im", "method", "median_seconds", "evals", "abs_error", "converged",
               "error"});
  for (const BenchRow& r : rows) {
    w.field(r.s.real())
        .field(r.s.imag())
        .field(std::string(to_string(r.method)))
        .field(r.median_seconds)
        .field(r.evals)
        .field(r.abs_error)
        .field(r.converged)
        .field(r.error);
    w.end_row();
  }
  return w.str();
}

std::string to_json(const std::vector<BenchRow>& rows) {
  Json arr = Json::array();
  for (const BenchRow& r : rows) {
    arr.push_back(Json{{"s", complex_json(r.s)},
                       {"method", to_string(r.method)},
                       {"median_seconds", r.median_seconds},
                       {"evals", r.evals},
                       {"abs_error", r.abs_error},
                       {"converged", r.converged},
                       {"error", r.error}});
  }
  return arr.dump(2) + "\n";
}

std::string to_csv(const std::vector<ZeroBracket>& brackets) {
  CsvWriter w({"t_lo", "t_hi", "z_lo", "z_hi", "refined_t", "residual"});
  for (const ZeroBracket& b : brackets) {
    w.field(b.t_lo).field(b.t_hi).field(b.z_lo).field(b.z_hi).field(b.refined_t).field(b.residual);
    w.end_row();
  }
  return w.str();
}

void write_text(const std::filesystem::path& dest, const std::string& content) {
  std::ofstream out(dest, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + dest.string() + "' for writing");
  out << content;
  out.close();
  if (!out) throw IoError("failed writing '" + dest.string() + "'");
}

std::string read_text(const std::filesystem::path& src) {
  std::ifstream in(src, std::ios::binary);
  if (!in) throw IoError("cannot open '" + src.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace zeta::harness
