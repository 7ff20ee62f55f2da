#include "zeta/core.hpp"

#include <array>
#include <string>
#include <utility>

namespace zeta {
namespace {

constexpr std::array<std::pair<MethodTag, std::string_view>, 10> kMethodNames = {{
    {MethodTag::eta_reference, "eta_reference"},
    {MethodTag::integral_new_y, "integral_new_y"},
    {MethodTag::integral_new_x, "integral_new_x"},
    {MethodTag::integral_exp, "integral_exp"},
    {MethodTag::integral_fermi, "integral_fermi"},
    {MethodTag::ramanujan, "ramanujan"},
    {MethodTag::functional_series, "functional_series"},
    {MethodTag::functional_series_accel, "functional_series_accel"},
    {MethodTag::quadrature, "quadrature"},
    {MethodTag::series, "series"},
}};

}  // namespace

std::string_view to_string(MethodTag tag) {
  for (const auto& [t, name] : kMethodNames) {
    if (t == tag) return name;
  }
  return "unknown";
}

MethodTag method_from_string(std::string_view name) {
  for (const auto& [t, n] : kMethodNames) {
    if (n == name) return t;
  }
  throw UsageError("unknown method tag: " + std::string(name));
}

std::string_view to_string(Acceleration a) {
  switch (a) {
    case Acceleration::none:
      return "none";
    case Acceleration::alternating:
      return "alternating";
    case Acceleration::extrapolation:
      return "extrapolation";
  }
  return "none";
}

Acceleration acceleration_from_string(std::string_view name) {
  if (name == "none") return Acceleration::none;
  if (name == "alternating" || name == "alternating_acceleration") return Acceleration::alternating;
  if (name == "extrapolation") return Acceleration::extrapolation;
  throw UsageError("unknown acceleration: " + std::string(name));
}

void SeriesConfig::validate() const {
  if (max_terms < 1) throw UsageError("SeriesConfig.max_terms must be >= 1");
  if (!(tol > 0.0)) throw UsageError("SeriesConfig.tol must be > 0");
}

}  // namespace zeta
