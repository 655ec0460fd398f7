#pragma once

#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "netinf/diagnostics.hpp"
#include "netinf/experiments.hpp"
#include "netinf/io_util.hpp"
#include "netinf/recovery.hpp"

namespace netinf {

inline nlohmann::json matrix_to_json_rows(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline void write_matrix_csv(const Matrix& m, std::ostream& out) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

/// Solution JSON with the effective program configuration echoed alongside
/// the outputs.
inline nlohmann::json solution_to_json(const RecoverySolution& sol, const RecoveryConfig& cfg) {
  std::vector<double> beta(sol.lambda_star.data(), sol.lambda_star.data() + sol.lambda_star.size());
  std::vector<double> l_row_major;
  l_row_major.reserve(static_cast<std::size_t>(sol.l_star.size()));
  for (Index i = 0; i < sol.l_star.rows(); ++i)
    for (Index j = 0; j < sol.l_star.cols(); ++j) l_row_major.push_back(sol.l_star(i, j));

  return nlohmann::json{
      {"n", sol.l_star.rows()},
      {"epsilon1", sol.diagnostics.epsilon1_used},
      {"epsilon2", cfg.epsilon2},
      {"eta", cfg.eta},
      {"norm_variant", to_string(cfg.norm_variant)},
      {"anchor_zero_eigenvalue", cfg.anchor_zero_eigenvalue},
      {"reweight_iters", cfg.reweight_iters},
      {"objective", sol.objective},
      {"beta", beta},
      {"L_star", l_row_major},
      {"residuals",
       {{"primal", sol.diagnostics.primal_residual},
        {"dual", sol.diagnostics.dual_residual},
        {"constraint_violation", sol.diagnostics.constraint_violation},
        {"feasible", sol.diagnostics.feasible}}},
      {"iterations", sol.diagnostics.iterations},
      {"reweight_objectives", sol.diagnostics.reweight_objectives},
  };
}

namespace detail {

inline std::string csv_safe(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

inline std::string trial_m_field(const TrialResult& t) {
  return t.exact_basis ? std::string("exact-basis") : std::to_string(t.snapshot_count);
}

}  // namespace detail

inline constexpr const char* kTrialCsvHeader =
    "n,p,dataset,M,seed,rel_error_raw,rel_error_rescaled,success,support_overlap,"
    "true_edge_count,epsilon1,error";

/// Deterministic per-trial stream: same config and seed give a byte-identical
/// file (wall-clock runtimes live in the JSON-lines stream instead).
inline void write_trials_csv(const std::vector<TrialResult>& trials, std::ostream& out) {
  out << kTrialCsvHeader << '\n';
  for (const TrialResult& t : trials) {
    out << t.n << ',' << (std::isnan(t.p) ? "" : format_double(t.p)) << ','
        << detail::csv_safe(t.dataset) << ',' << detail::trial_m_field(t) << ',' << t.seed << ','
        << (std::isnan(t.rel_error_raw) ? "" : format_double(t.rel_error_raw)) << ','
        << (std::isnan(t.rel_error_rescaled) ? "" : format_double(t.rel_error_rescaled)) << ','
        << (t.success ? "true" : "false") << ',' << t.support_overlap << ',' << t.true_edge_count
        << ',' << format_double(t.epsilon1_used) << ',' << detail::csv_safe(t.error) << '\n';
  }
}

inline nlohmann::json trial_to_json(const TrialResult& t) {
  nlohmann::json j{{"n", t.n},
                   {"dataset", t.dataset},
                   {"M", detail::trial_m_field(t)},
                   {"exact_basis", t.exact_basis},
                   {"seed", t.seed},
                   {"success", t.success},
                   {"support_overlap", t.support_overlap},
                   {"true_edge_count", t.true_edge_count},
                   {"epsilon1", t.epsilon1_used},
                   {"runtime_seconds", t.runtime_seconds},
                   {"error", t.error}};
  if (!std::isnan(t.p)) j["p"] = t.p;
  if (!std::isnan(t.rel_error_raw)) j["rel_error_raw"] = t.rel_error_raw;
  if (!std::isnan(t.rel_error_rescaled)) j["rel_error_rescaled"] = t.rel_error_rescaled;
  return j;
}

inline void write_trials_jsonl(const std::vector<TrialResult>& trials, std::ostream& out) {
  for (const TrialResult& t : trials) out << trial_to_json(t).dump() << '\n';
}

inline nlohmann::json grid_report_to_json(const GridReport& r, const nlohmann::json& config_echo) {
  return nlohmann::json{{"n_list", r.n_list},
                        {"p_list", r.p_list},
                        {"success_rate", r.success_rate},
                        {"trials_per_cell", r.trials_per_cell},
                        {"threshold", r.threshold},
                        {"config", config_echo}};
}

inline void write_diagnostics_jsonl(const std::vector<DiagnosticsRecord>& records,
                                    std::ostream& out) {
  for (const DiagnosticsRecord& r : records) {
    out << nlohmann::json{{"M", r.snapshot_count},
                          {"seed", r.seed},
                          {"offdiag_ratio", r.offdiag_ratio},
                          {"ordering_violations", r.ordering_violations}}
               .dump()
        << '\n';
  }
}

}  // namespace netinf
