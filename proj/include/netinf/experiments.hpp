#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "netinf/covariance.hpp"
#include "netinf/dynamics.hpp"
#include "netinf/errors.hpp"
#include "netinf/graph.hpp"
#include "netinf/laplacian.hpp"
#include "netinf/metrics.hpp"
#include "netinf/parallel.hpp"
#include "netinf/random.hpp"
#include "netinf/recovery.hpp"

namespace netinf {

/// One recovery attempt with its scores. Everything except runtime_seconds is
/// a pure function of the experiment config and the recorded seed.
struct TrialResult {
  int n = 0;
  double p = 0.0;
  std::string dataset = "er";
  Index snapshot_count = 0;  // 0 when the trial used the exact basis
  bool exact_basis = false;
  std::uint64_t seed = 0;
  double rel_error_raw = std::numeric_limits<double>::quiet_NaN();
  double rel_error_rescaled = std::numeric_limits<double>::quiet_NaN();
  bool success = false;
  int support_overlap = 0;
  int true_edge_count = 0;
  double epsilon1_used = 0.0;
  double runtime_seconds = 0.0;
  std::string error;  // nonempty when the trial failed
};

struct GridReport {
  std::vector<int> n_list;
  std::vector<double> p_list;
  std::vector<std::vector<double>> success_rate;  // [n index][p index]
  int trials_per_cell = 0;
  double threshold = 0.0;
};

/// Shared experiment knobs. Per-trial randomness derives from master_seed, so
/// a report is reproducible from its config alone.
struct ExperimentConfig {
  std::uint64_t master_seed = 0;
  int threads = 0;  // 0 = hardware concurrency
  double success_threshold = 2e-2;
  Index snapshot_count = 10000;  // M for sampled-basis grid trials
  DynamicsConfig dynamics;       // seed field is overridden per trial
  RecoveryConfig recovery;       // epsilon1 unset => auto per trial (sampled basis)
};

struct ErGridOutcome {
  GridReport report;
  std::vector<TrialResult> trials;
};

namespace detail {

inline void score_trial(TrialResult& t, const RecoverySolution& sol, const Laplacian& l_true,
                        double threshold) {
  const RelativeError e = relative_error(sol.l_star, l_true.matrix());
  t.rel_error_raw = e.raw;
  t.rel_error_rescaled = e.rescaled;
  t.support_overlap = netinf::support_overlap(sol.l_star, l_true.matrix());
  t.epsilon1_used = sol.diagnostics.epsilon1_used;
  t.success = e.rescaled < threshold;
}

inline RecoverySolution solve_maybe_reweighted(const RecoveryProblem& problem) {
  if (problem.config.reweight_iters > 0)
    return solve_reweighted(problem, problem.config.reweight_iters);
  return solve(problem);
}

/// Recovery from simulated snapshots; epsilon1 resolved by auto search when
/// the config leaves it open.
inline void run_sampled_trial(TrialResult& t, const Laplacian& l, Index m,
                              const ExperimentConfig& cfg, std::uint64_t trial_seed) {
  DynamicsConfig dyn = cfg.dynamics;
  dyn.seed = derive_seed(trial_seed, {1});
  const SnapshotSet snaps = generate_snapshots(l, m, dyn);
  const SpectralTemplate tmpl = extract_template(snaps);

  RecoveryConfig rc = cfg.recovery;
  if (!rc.epsilon1) rc.epsilon1 = auto_epsilon1(tmpl, rc);
  const RecoverySolution sol = solve_maybe_reweighted({tmpl, rc});
  score_trial(t, sol, l, cfg.success_threshold);
}

}  // namespace detail

/// Recovery-rate grid over Erdos-Renyi graphs. With exact_basis the template
/// is the true eigenbasis and the program runs at epsilon1 = 0, eta = 1 (the
/// unbounded-M regime); otherwise each trial simulates cfg.snapshot_count
/// snapshots and resolves epsilon1 per config. A trial succeeds when the
/// rescaled relative error stays below cfg.success_threshold.
inline ErGridOutcome run_er_grid(const std::vector<int>& n_list, const std::vector<double>& p_list,
                                 int trials, bool exact_basis, const ExperimentConfig& cfg) {
  if (trials < 1) throw DomainError("run_er_grid: trials must be >= 1");
  if (n_list.empty() || p_list.empty()) throw DomainError("run_er_grid: empty grid axis");

  const std::size_t cells = n_list.size() * p_list.size();
  std::vector<TrialResult> results(cells * static_cast<std::size_t>(trials));

  parallel_for(results.size(), cfg.threads, [&](std::size_t idx) {
    const std::size_t cell = idx / static_cast<std::size_t>(trials);
    const int trial = static_cast<int>(idx % static_cast<std::size_t>(trials));
    const int n = n_list[cell / p_list.size()];
    const double p = p_list[cell % p_list.size()];

    TrialResult& t = results[idx];
    t.n = n;
    t.p = p;
    t.dataset = "er";
    t.exact_basis = exact_basis;
    t.snapshot_count = exact_basis ? 0 : cfg.snapshot_count;
    t.seed = derive_seed(cfg.master_seed,
                         {stream::kGridTrial, static_cast<std::uint64_t>(cell),
                          static_cast<std::uint64_t>(trial)});
    const auto start = std::chrono::steady_clock::now();
    try {
      const Graph g = erdos_renyi(n, p, WeightDist::unit(), derive_seed(t.seed, {0}));
      const Laplacian l = build_laplacian(g);
      t.true_edge_count = static_cast<int>(g.edge_count());
      if (exact_basis) {
        RecoveryConfig rc = cfg.recovery;
        rc.epsilon1 = 0.0;
        rc.eta = 1;
        const RecoverySolution sol =
            detail::solve_maybe_reweighted({template_from_exact_basis(l), rc});
        detail::score_trial(t, sol, l, cfg.success_threshold);
      } else {
        detail::run_sampled_trial(t, l, cfg.snapshot_count, cfg, t.seed);
      }
    } catch (const Error& e) {
      t.success = false;
      t.error = e.what();
    }
    t.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });

  GridReport report;
  report.n_list = n_list;
  report.p_list = p_list;
  report.trials_per_cell = trials;
  report.threshold = cfg.success_threshold;
  report.success_rate.assign(n_list.size(), std::vector<double>(p_list.size(), 0.0));
  for (std::size_t idx = 0; idx < results.size(); ++idx) {
    if (!results[idx].success) continue;
    const std::size_t cell = idx / static_cast<std::size_t>(trials);
    report.success_rate[cell / p_list.size()][cell % p_list.size()] += 1.0 / trials;
  }
  return {std::move(report), std::move(results)};
}

/// Error versus snapshot count on one fixed graph: for each M in m_list and
/// each trial, simulate M snapshots, extract the template, resolve epsilon1
/// and solve. Emits one TrialResult per (M, trial).
inline std::vector<TrialResult> run_error_vs_m(const Graph& graph, const std::vector<Index>& m_list,
                                               int trials, const ExperimentConfig& cfg,
                                               const std::string& dataset_id = "graph") {
  if (trials < 1) throw DomainError("run_error_vs_m: trials must be >= 1");
  if (m_list.empty()) throw DomainError("run_error_vs_m: empty M list");
  if (!std::is_sorted(m_list.begin(), m_list.end()))
    throw DomainError("run_error_vs_m: M list must be ascending");
  for (Index m : m_list)
    if (m < 1) throw DomainError("run_error_vs_m: M must be >= 1");

  const Laplacian l = build_laplacian(graph);
  std::vector<TrialResult> results(m_list.size() * static_cast<std::size_t>(trials));

  parallel_for(results.size(), cfg.threads, [&](std::size_t idx) {
    const std::size_t m_idx = idx / static_cast<std::size_t>(trials);
    const int trial = static_cast<int>(idx % static_cast<std::size_t>(trials));

    TrialResult& t = results[idx];
    t.n = graph.node_count();
    t.p = std::numeric_limits<double>::quiet_NaN();
    t.dataset = dataset_id;
    t.snapshot_count = m_list[m_idx];
    t.exact_basis = false;
    t.true_edge_count = static_cast<int>(graph.edge_count());
    t.seed = derive_seed(cfg.master_seed,
                         {stream::kErrorVsM, static_cast<std::uint64_t>(m_idx),
                          static_cast<std::uint64_t>(trial)});
    const auto start = std::chrono::steady_clock::now();
    try {
      detail::run_sampled_trial(t, l, m_list[m_idx], cfg, t.seed);
    } catch (const Error& e) {
      t.success = false;
      t.error = e.what();
    }
    t.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });
  return results;
}

}  // namespace netinf
