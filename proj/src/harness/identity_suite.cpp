#include <functional>

#include "parallel.hpp"
#include "zeta/harness.hpp"

namespace zeta::harness {
namespace {

// Re-evaluates pass under new tolerances, keeping failures that came from
// conditions other than the tolerance (e.g. a detected divergence).
void apply_tolerance(IdentityReport& r, const SuiteParams& params) {
  const auto abs_it = params.tol_abs_override.find(r.id);
  const auto rel_it = params.tol_rel_override.find(r.id);
  if (abs_it == params.tol_abs_override.end() && rel_it == params.tol_rel_override.end()) return;
  const bool within_old = r.abs_diff <= r.tol_abs || r.rel_diff <= r.tol_rel;
  const bool other_failure = !r.pass && within_old;
  if (abs_it != params.tol_abs_override.end()) r.tol_abs = abs_it->second;
  if (rel_it != params.tol_rel_override.end()) r.tol_rel = rel_it->second;
  finalize(r);
  if (other_failure) r.pass = false;
  r.notes += std::string(r.notes.empty() ? "" : "; ") + "tolerance overridden by params";
}

}  // namespace

const std::vector<IdentityId>& all_identities() {
  static const std::vector<IdentityId> ids = {
      IdentityId::residue_integral, IdentityId::alternating_sum, IdentityId::sinh_moment,
      IdentityId::classical_fe,     IdentityId::gamma_sum,       IdentityId::sinh_series,
      IdentityId::fermi_ratio,      IdentityId::ramanujan};
  return ids;
}

std::vector<IdentityReport> run_identity_suite(const std::vector<IdentityId>& selection,
                                               const SuiteParams& params) {
  if (selection.empty()) throw UsageError("identity selection is empty");
  namespace id = identities;
  std::vector<std::function<IdentityReport()>> tasks;
  for (IdentityId which : selection) {
    switch (which) {
      case IdentityId::residue_integral:
        for (int n : params.residue_n) {
          for (Complex b : params.residue_b) {
            tasks.emplace_back([=] { return id::check_residue_integral(n, b); });
          }
        }
        break;
      case IdentityId::alternating_sum:
        for (double x : params.alternating_x) {
          tasks.emplace_back([=] { return id::check_alternating_sum(x); });
        }
        break;
      case IdentityId::sinh_moment:
        for (double k : params.sinh_moment_k) {
          tasks.emplace_back([=] { return id::check_sinh_moment(k); });
        }
        break;
      case IdentityId::classical_fe:
        for (Complex s : params.classical_fe_s) {
          for (const auto& v : params.classical_fe_variants) {
            const auto variant = v == "as_printed" ? id::FeVariant::as_printed : id::FeVariant::standard;
            tasks.emplace_back([=] { return id::check_classical_functional_equation(s, variant); });
          }
        }
        break;
      case IdentityId::gamma_sum:
        for (Complex s : params.gamma_sum_s) {
          for (const auto& v : params.gamma_sum_variants) {
            const auto variant = v == "as_printed" ? repr::ClosedFormVariant::as_printed
                                                   : repr::ClosedFormVariant::corrected;
            const std::int64_t terms = params.gamma_sum_terms;
            tasks.emplace_back([=] { return id::check_gamma_sum(s, variant, terms); });
          }
        }
        break;
      case IdentityId::sinh_series:
        for (double y : params.sinh_series_y) {
          tasks.emplace_back([=] { return id::sinh_series_expansion_check(y); });
        }
        break;
      case IdentityId::fermi_ratio:
        for (Complex s : params.fermi_s) {
          for (const auto& v : params.fermi_variants) {
            const auto variant =
                v == "as_printed" ? repr::FermiVariant::as_printed : repr::FermiVariant::corrected;
            tasks.emplace_back([=] { return id::check_fermi(s, variant); });
          }
        }
        break;
      case IdentityId::ramanujan:
        for (Complex s : params.ramanujan_s) {
          for (const auto& v : params.ramanujan_variants) {
            const auto variant = v == "as_printed" ? repr::RamanujanVariant::as_printed
                                                   : repr::RamanujanVariant::shifted_digamma;
            tasks.emplace_back([=] { return id::check_ramanujan(s, variant); });
          }
        }
        break;
    }
  }

  std::vector<IdentityReport> reports(tasks.size());
  try {
    detail::parallel_for(tasks.size(), [&](std::size_t i) { reports[i] = tasks[i](); });
  } catch (const DomainError& e) {
    throw UsageError(std::string("identity parameters: ") + e.what());
  } catch (const PoleError& e) {
    throw UsageError(std::string("identity parameters: ") + e.what());
  }
  for (IdentityReport& r : reports) apply_tolerance(r, params);
  return reports;
}

bool has_hard_failure(const std::vector<IdentityReport>& reports) {
  for (const IdentityReport& r : reports) {
    if (r.expected_to_hold && !r.pass) return true;
  }
  return false;
}

}  // namespace zeta::harness
