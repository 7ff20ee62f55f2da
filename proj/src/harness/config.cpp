#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "zeta/harness.hpp"

namespace zeta::harness {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

using KeyHandler = std::function<void(std::string_view value)>;

// Applies key = value lines to the handlers; unknown keys fail closed.
void parse_key_values(std::string_view text, const std::map<std::string, KeyHandler>& handlers) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(view.substr(0, eq)));
    const auto it = handlers.find(key);
    if (it == handlers.end()) {
      throw UsageError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    try {
      it->second(trim(view.substr(eq + 1)));
    } catch (const UsageError& e) {
      throw UsageError("line " + std::to_string(line_no) + " (" + key + "): " + e.what());
    }
  }
}

std::vector<double> parse_doubles(std::string_view v) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) out.push_back(parse_double(item));
  return out;
}

std::vector<Complex> parse_complexes(std::string_view v) {
  std::vector<Complex> out;
  for (const auto& item : split_list(v)) out.push_back(parse_complex(item));
  return out;
}

std::int64_t parse_int(std::string_view v) {
  const double d = parse_double(v);
  if (d != std::floor(d) || std::abs(d) > 9e15) throw UsageError("expected an integer: " + std::string(v));
  return static_cast<std::int64_t>(d);
}

void add_quad_keys(std::map<std::string, KeyHandler>& h, quad::QuadConfig& q) {
  h["quad.abs_tol"] = [&](std::string_view v) { q.abs_tol = parse_double(v); };
  h["quad.rel_tol"] = [&](std::string_view v) { q.rel_tol = parse_double(v); };
  h["quad.max_refinements"] = [&](std::string_view v) {
    q.max_refinements = static_cast<int>(parse_int(v));
  };
  h["quad.split_point"] = [&](std::string_view v) { q.split_point = parse_double(v); };
  h["quad.tail_cutoff_guard"] = [&](std::string_view v) { q.tail_cutoff_guard = parse_double(v); };
}

void add_series_keys(std::map<std::string, KeyHandler>& h, SeriesConfig& s) {
  h["series.max_terms"] = [&](std::string_view v) { s.max_terms = parse_int(v); };
  h["series.tol"] = [&](std::string_view v) { s.tol = parse_double(v); };
  h["series.acceleration"] = [&](std::string_view v) {
    s.acceleration = acceleration_from_string(v);
  };
}

std::vector<std::string> parse_variants(std::string_view v,
                                        std::initializer_list<std::string_view> allowed) {
  std::vector<std::string> out = split_list(v);
  for (const auto& name : out) {
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      throw UsageError("unknown variant '" + name + "'");
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

double parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw UsageError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

Complex parse_complex(std::string_view text) {
  text = trim(text);
  if (const auto comma = text.find(','); comma != std::string_view::npos) {
    return {parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1))};
  }
  if (text.empty() || (text.back() != 'i' && text.back() != 'j')) return {parse_double(text), 0.0};
  std::string_view body = text.substr(0, text.size() - 1);
  // The imaginary part starts at the last sign that is not an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const auto coefficient = [](std::string_view c) {
    c = trim(c);
    if (c.empty() || c == "+") return 1.0;
    if (c == "-") return -1.0;
    return parse_double(c);
  };
  if (split == std::string_view::npos) return {0.0, coefficient(body)};
  return {parse_double(body.substr(0, split)), coefficient(body.substr(split))};
}

std::vector<std::string> split_list(std::string_view text, char sep) {
  std::vector<std::string> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    const auto item = trim(text.substr(start, pos == std::string_view::npos ? text.npos : pos - start));
    if (item.empty()) throw UsageError("empty list item in '" + std::string(text) + "'");
    out.emplace_back(item);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------

quad::QuadConfig GridSpec::default_quad() {
  quad::QuadConfig q;
  q.abs_tol = 1e-10;
  q.rel_tol = 1e-12;
  return q;
}

SeriesConfig GridSpec::default_series() {
  SeriesConfig s;
  s.tol = 1e-10;
  return s;
}

void GridSpec::normalize() {
  quad.validate();
  series.validate();
  std::sort(sigma_values.begin(), sigma_values.end());
  sigma_values.erase(std::unique(sigma_values.begin(), sigma_values.end()), sigma_values.end());
  std::sort(t_values.begin(), t_values.end());
  t_values.erase(std::unique(t_values.begin(), t_values.end()), t_values.end());
  for (double sigma : sigma_values) {
    if (!(sigma > 0.0 && sigma < 2.0)) {
      throw UsageError("grid sigma values must lie in (0, 2)");
    }
    if (sigma == 1.0 && std::find(t_values.begin(), t_values.end(), 0.0) != t_values.end()) {
      throw UsageError("grid contains the pole s = 1");
    }
  }
  for (double t : t_values) {
    if (!std::isfinite(t)) throw UsageError("grid t values must be finite");
  }
  std::vector<MethodTag> unique;
  for (MethodTag m : methods) {
    if (std::find(zeta_methods().begin(), zeta_methods().end(), m) == zeta_methods().end()) {
      throw UsageError("method " + std::string(to_string(m)) + " does not evaluate zeta");
    }
    if (std::find(unique.begin(), unique.end(), m) == unique.end()) unique.push_back(m);
  }
  methods = unique;
}

bool is_preset(std::string_view name) {
  return name == "strip" || name == "critical" || name == "small";
}

GridSpec preset(std::string_view name) {
  GridSpec g;
  if (name == "strip") {
    g.sigma_values = {0.25, 0.5, 0.75, 1.25, 1.75};
    g.t_values = {0.0, 1.0, 5.0, 14.1};
    g.methods = {MethodTag::integral_new_y, MethodTag::integral_new_x, MethodTag::integral_exp,
                 MethodTag::integral_fermi, MethodTag::ramanujan,
                 MethodTag::functional_series, MethodTag::functional_series_accel};
    g.series.tol = 1e-8;
  } else if (name == "critical") {
    g.sigma_values = {0.5};
    g.t_values = {14.134725141734694, 21.022039638771555, 25.010857580145689};
    g.methods = {MethodTag::integral_new_y, MethodTag::integral_new_x, MethodTag::integral_exp,
                 MethodTag::integral_fermi, MethodTag::functional_series_accel};
  } else if (name == "small") {
    g.sigma_values = {0.5, 1.5};
    g.t_values = {0.0, 1.0};
    g.methods = {MethodTag::integral_new_y, MethodTag::integral_exp,
                 MethodTag::functional_series_accel};
  } else {
    throw UsageError("unknown grid preset '" + std::string(name) + "'");
  }
  g.normalize();
  return g;
}

GridSpec parse_grid_config(std::string_view text) {
  GridSpec g;
  bool have_sigma = false;
  bool have_t = false;
  std::map<std::string, KeyHandler> h;
  h["sigma"] = [&](std::string_view v) {
    g.sigma_values = parse_doubles(v);
    have_sigma = true;
  };
  h["t"] = [&](std::string_view v) {
    g.t_values = parse_doubles(v);
    have_t = true;
  };
  h["methods"] = [&](std::string_view v) {
    g.methods.clear();
    if (trim(v) == "all") {
      for (MethodTag m : zeta_methods()) {
        if (m != MethodTag::eta_reference) g.methods.push_back(m);
      }
      return;
    }
    for (const auto& name : split_list(v)) g.methods.push_back(method_from_string(name));
  };
  add_quad_keys(h, g.quad);
  add_series_keys(h, g.series);
  parse_key_values(text, h);
  if (!have_sigma || !have_t) throw UsageError("grid config needs both 'sigma' and 't'");
  g.normalize();
  return g;
}

GridSpec load_grid(const std::string& spec) {
  if (is_preset(spec)) return preset(spec);
  std::ifstream in(spec);
  if (!in) throw UsageError("cannot open grid config '" + spec + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_grid_config(buf.str());
}

SuiteParams parse_suite_params(std::string_view text) {
  SuiteParams p;
  std::map<std::string, KeyHandler> h;
  h["residue_integral.n"] = [&](std::string_view v) {
    p.residue_n.clear();
    for (const auto& item : split_list(v)) p.residue_n.push_back(static_cast<int>(parse_int(item)));
  };
  h["residue_integral.b"] = [&](std::string_view v) { p.residue_b = parse_complexes(v); };
  h["alternating_sum.x"] = [&](std::string_view v) { p.alternating_x = parse_doubles(v); };
  h["sinh_moment.k"] = [&](std::string_view v) { p.sinh_moment_k = parse_doubles(v); };
  h["classical_fe.s"] = [&](std::string_view v) { p.classical_fe_s = parse_complexes(v); };
  h["classical_fe.variants"] = [&](std::string_view v) {
    p.classical_fe_variants = parse_variants(v, {"standard", "as_printed"});
  };
  h["gamma_sum.s"] = [&](std::string_view v) { p.gamma_sum_s = parse_complexes(v); };
  h["gamma_sum.variants"] = [&](std::string_view v) {
    p.gamma_sum_variants = parse_variants(v, {"corrected", "as_printed"});
  };
  h["gamma_sum.terms"] = [&](std::string_view v) {
    p.gamma_sum_terms = parse_int(v);
    if (p.gamma_sum_terms < 128) throw UsageError("gamma_sum.terms must be >= 128");
  };
  h["sinh_series.y"] = [&](std::string_view v) { p.sinh_series_y = parse_doubles(v); };
  h["fermi_ratio.s"] = [&](std::string_view v) { p.fermi_s = parse_complexes(v); };
  h["fermi_ratio.variants"] = [&](std::string_view v) {
    p.fermi_variants = parse_variants(v, {"corrected", "as_printed"});
  };
  h["ramanujan.s"] = [&](std::string_view v) { p.ramanujan_s = parse_complexes(v); };
  h["ramanujan.variants"] = [&](std::string_view v) {
    p.ramanujan_variants = parse_variants(v, {"shifted_digamma", "as_printed"});
  };
  for (IdentityId id : all_identities()) {
    const std::string name(to_string(id));
    h[name + ".tol_abs"] = [&p, id](std::string_view v) {
      const double tol = parse_double(v);
      if (tol < 0.0) throw UsageError("tolerances must be >= 0");
      p.tol_abs_override[id] = tol;
    };
    h[name + ".tol_rel"] = [&p, id](std::string_view v) {
      const double tol = parse_double(v);
      if (tol < 0.0) throw UsageError("tolerances must be >= 0");
      p.tol_rel_override[id] = tol;
    };
  }
  parse_key_values(text, h);
  return p;
}

SuiteParams load_suite_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open params file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_suite_params(buf.str());
}

}  // namespace zeta::harness
