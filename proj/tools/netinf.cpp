// netinf: simulate consensus snapshots on a hidden graph and recover its
// Laplacian from their spectral signature.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netinf/netinf.hpp"

namespace fs = std::filesystem;
using namespace netinf;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitInfeasible = 4;
constexpr int kExitNonConvergence = 5;

/// Relative output paths land in $NETINF_OUTPUT_DIR when it is set.
fs::path resolve_output(const std::string& path) {
  fs::path p(path);
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv("NETINF_OUTPUT_DIR"); dir && *dir) return fs::path(dir) / p;
  return p;
}

GraphFormat parse_format(const std::string& name) {
  if (name == "edge-list") return GraphFormat::EdgeList;
  if (name == "pajek") return GraphFormat::PajekNet;
  throw DomainError("unknown graph format '" + name + "' (edge-list|pajek)");
}

NormVariant parse_norm(const std::string& name) {
  if (name == "frobenius") return NormVariant::Frobenius;
  if (name == "max") return NormVariant::Max;
  throw DomainError("unknown norm '" + name + "' (frobenius|max)");
}

Graph load_graph(const std::string& path, const std::string& format) {
  if (!fs::exists(path)) throw IoError("graph file not found: " + path);
  return read_graph(fs::path(path), parse_format(format));
}

struct RecoverFlags {
  std::string epsilon1 = "auto";
  double epsilon2 = 1.0;
  int eta = 1;
  std::string norm = "frobenius";
  int reweight = 0;
  bool no_anchor = false;
  double residual_tol = 1e-7;
  std::int64_t max_iters = 200000;

  void attach(CLI::App* cmd) {
    cmd->add_option("--epsilon1", epsilon1, "ball radius, or 'auto' for the feasibility search");
    cmd->add_option("--epsilon2", epsilon2, "eigenvalue gap enforced by the ordering");
    cmd->add_option("--eta", eta, "ordering stride");
    cmd->add_option("--norm", norm, "ball norm: frobenius|max");
    cmd->add_option("--reweight", reweight, "reweighted-l1 passes (0 = plain l1)");
    cmd->add_flag("--no-anchor", no_anchor, "do not pin the constant-mode eigenvalue to zero");
    cmd->add_option("--solver-tol", residual_tol, "relative residual tolerance");
    cmd->add_option("--max-iters", max_iters, "iteration budget per solve");
  }

  RecoveryConfig to_config() const {
    RecoveryConfig rc;
    if (epsilon1 != "auto") {
      try {
        std::size_t pos = 0;
        rc.epsilon1 = std::stod(epsilon1, &pos);
        if (pos != epsilon1.size()) throw std::invalid_argument(epsilon1);
      } catch (const std::exception&) {
        throw DomainError("--epsilon1 expects a number or 'auto'");
      }
    }
    rc.epsilon2 = epsilon2;
    rc.eta = eta;
    rc.norm_variant = parse_norm(norm);
    rc.reweight_iters = reweight;
    rc.anchor_zero_eigenvalue = !no_anchor;
    rc.residual_tol = residual_tol;
    rc.max_iters = max_iters;
    return rc;
  }
};

int cmd_gen_graph(int n, double p, std::uint64_t seed, const std::string& weights, double w_lo,
                  double w_hi, const std::string& out, const std::string& format) {
  WeightDist dist = weights == "unit" ? WeightDist::unit() : WeightDist::uniform(w_lo, w_hi);
  Graph g = erdos_renyi(n, p, dist, seed);
  const fs::path path = resolve_output(out);
  const GraphFormat fmt = parse_format(format);
  atomic_write_file(path, [&](std::ostream& os) {
    if (fmt == GraphFormat::EdgeList)
      os << "# netinf gen-graph n=" << n << " p=" << format_double(p) << " seed=" << seed
         << " weights=" << weights << "\n";
    write_graph(g, os, fmt);
  });
  std::cout << "n=" << g.node_count() << " |E|=" << g.edge_count()
            << " connected=true -> " << path.string() << "\n";
  return 0;
}

int cmd_simulate(const std::string& graph_path, const std::string& format, Index m,
                 std::uint64_t seed, double sigma, const std::vector<int>& durations,
                 const std::string& out, bool provenance) {
  const Graph g = load_graph(graph_path, format);
  const Laplacian l = build_laplacian(g);
  DynamicsConfig cfg;
  cfg.sigma = sigma;
  cfg.duration_set = durations;
  cfg.seed = seed;
  const SnapshotSet snaps = generate_snapshots(l, m, cfg, provenance);

  const fs::path path = resolve_output(out);
  if (path.extension() == ".json") {
    atomic_write_file(path, [&](std::ostream& os) {
      SnapshotEnvelope env{snaps, sigma, seed};
      env.snapshots.provenance.reset();
      write_snapshots_json(env, os);
    });
  } else {
    atomic_write_file(path, [&](std::ostream& os) { write_snapshots_csv(snaps, os); });
  }
  if (provenance) {
    fs::path sidecar = path;
    sidecar += ".provenance.json";
    atomic_write_file(sidecar, [&](std::ostream& os) { write_provenance_json(*snaps.provenance, os); });
  }
  std::cout << "wrote " << snaps.dimension() << "x" << snaps.count() << " snapshots -> "
            << path.string() << "\n";
  return 0;
}

int cmd_recover(const std::string& snapshots_path, const std::string& out, RecoverFlags& flags) {
  if (!fs::exists(snapshots_path)) throw IoError("snapshot file not found: " + snapshots_path);
  const SnapshotSet snaps = read_snapshots(snapshots_path);
  const SpectralTemplate tmpl = extract_template(snaps);
  RecoveryConfig rc = flags.to_config();
  if (!rc.epsilon1) rc.epsilon1 = auto_epsilon1(tmpl, rc);

  const RecoveryProblem problem{tmpl, rc};
  const RecoverySolution sol =
      rc.reweight_iters > 0 ? solve_reweighted(problem, rc.reweight_iters) : solve(problem);

  const fs::path path = resolve_output(out);
  atomic_write_file(path, [&](std::ostream& os) { os << solution_to_json(sol, rc).dump(2) << "\n"; });
  std::cout << "objective=" << format_double(sol.objective)
            << " epsilon1=" << format_double(sol.diagnostics.epsilon1_used)
            << " residuals=(" << format_double(sol.diagnostics.primal_residual) << ", "
            << format_double(sol.diagnostics.dual_residual) << ")"
            << " iterations=" << sol.diagnostics.iterations << " -> " << path.string() << "\n";
  return 0;
}

nlohmann::json experiment_config_echo(const ExperimentConfig& cfg, const RecoverFlags& flags) {
  return nlohmann::json{{"master_seed", cfg.master_seed},
                        {"threads", cfg.threads},
                        {"success_threshold", cfg.success_threshold},
                        {"M", cfg.snapshot_count},
                        {"sigma", cfg.dynamics.sigma},
                        {"durations", cfg.dynamics.duration_set},
                        {"epsilon1", flags.epsilon1},
                        {"epsilon2", flags.epsilon2},
                        {"eta", flags.eta},
                        {"norm", flags.norm},
                        {"reweight", flags.reweight},
                        {"anchor", !flags.no_anchor}};
}

void write_trial_outputs(const std::vector<TrialResult>& trials, const std::string& out,
                         const std::string& jsonl) {
  const fs::path csv_path = resolve_output(out);
  atomic_write_file(csv_path, [&](std::ostream& os) { write_trials_csv(trials, os); });
  std::cout << trials.size() << " trials -> " << csv_path.string() << "\n";
  if (!jsonl.empty()) {
    const fs::path jl = resolve_output(jsonl);
    atomic_write_file(jl, [&](std::ostream& os) { write_trials_jsonl(trials, os); });
  }
}

int cmd_er_grid(const std::vector<int>& n_list, const std::vector<double>& p_list, int trials,
                bool exact_basis, Index m, std::uint64_t seed, double threshold, int threads,
                double sigma, const std::vector<int>& durations, RecoverFlags& flags,
                const std::string& out, const std::string& jsonl, const std::string& report) {
  ExperimentConfig cfg;
  cfg.master_seed = seed;
  cfg.threads = threads;
  cfg.success_threshold = threshold;
  cfg.snapshot_count = m;
  cfg.dynamics.sigma = sigma;
  cfg.dynamics.duration_set = durations;
  cfg.recovery = flags.to_config();

  const ErGridOutcome outcome = run_er_grid(n_list, p_list, trials, exact_basis, cfg);
  write_trial_outputs(outcome.trials, out, jsonl);
  if (!report.empty()) {
    const fs::path rp = resolve_output(report);
    atomic_write_file(rp, [&](std::ostream& os) {
      os << grid_report_to_json(outcome.report, experiment_config_echo(cfg, flags)).dump(2) << "\n";
    });
  }
  double total = 0.0;
  for (const auto& row : outcome.report.success_rate)
    for (double r : row) total += r;
  total /= static_cast<double>(n_list.size() * p_list.size());
  std::cout << "overall success rate @" << format_double(threshold) << ": " << format_double(total)
            << "\n";
  return 0;
}

int cmd_error_vs_m(const std::string& graph_path, const std::string& format,
                   const std::vector<Index>& m_list, int trials, std::uint64_t seed,
                   double threshold, int threads, double sigma, const std::vector<int>& durations,
                   RecoverFlags& flags, const std::string& out, const std::string& jsonl,
                   const std::string& report) {
  const Graph g = load_graph(graph_path, format);
  ExperimentConfig cfg;
  cfg.master_seed = seed;
  cfg.threads = threads;
  cfg.success_threshold = threshold;
  cfg.dynamics.sigma = sigma;
  cfg.dynamics.duration_set = durations;
  cfg.recovery = flags.to_config();

  const std::vector<TrialResult> trials_out =
      run_error_vs_m(g, m_list, trials, cfg, fs::path(graph_path).stem().string());
  write_trial_outputs(trials_out, out, jsonl);
  if (!report.empty()) {
    nlohmann::json j{{"m_list", m_list},
                     {"trials", trials},
                     {"config", experiment_config_echo(cfg, flags)}};
    const fs::path rp = resolve_output(report);
    atomic_write_file(rp, [&](std::ostream& os) { os << j.dump(2) << "\n"; });
  }
  return 0;
}

int cmd_diagnostics(const std::string& graph_path, const std::string& format,
                    const std::vector<Index>& m_list, int seeds, std::uint64_t seed, double sigma,
                    const std::vector<int>& durations, const std::string& out) {
  const Graph g = load_graph(graph_path, format);
  const Laplacian l = build_laplacian(g);
  DynamicsConfig cfg;
  cfg.sigma = sigma;
  cfg.duration_set = durations;
  cfg.seed = seed;
  const auto records = run_diagnostics_ladder(l, m_list, seeds, cfg);
  const fs::path path = resolve_output(out);
  atomic_write_file(path, [&](std::ostream& os) { write_diagnostics_jsonl(records, os); });
  std::cout << records.size() << " diagnostics records -> " << path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"network topology inference from consensus snapshots"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read defaults from a TOML-style key=value file");

  // gen-graph
  auto* gen = app.add_subcommand("gen-graph", "sample a connected Erdos-Renyi graph");
  int gg_n = 10;
  double gg_p = 0.3;
  std::uint64_t gg_seed = 0;
  std::string gg_weights = "unit", gg_out, gg_format = "edge-list";
  double gg_wlo = 0.5, gg_whi = 1.5;
  gen->add_option("--n", gg_n, "node count")->required();
  gen->add_option("--p", gg_p, "edge probability")->required();
  gen->add_option("--seed", gg_seed, "random seed");
  gen->add_option("--weights", gg_weights, "unit|uniform");
  gen->add_option("--w-lo", gg_wlo, "uniform weight lower bound");
  gen->add_option("--w-hi", gg_whi, "uniform weight upper bound");
  gen->add_option("-o,--output", gg_out, "output path")->required();
  gen->add_option("--format", gg_format, "edge-list|pajek");

  // simulate
  auto* sim = app.add_subcommand("simulate", "draw consensus snapshot observations");
  std::string sim_graph, sim_format = "edge-list", sim_out;
  Index sim_m = 1000;
  std::uint64_t sim_seed = 0;
  double sim_sigma = 1.0;
  std::vector<int> sim_durations{3, 4, 5};
  bool sim_prov = false;
  sim->add_option("-g,--graph", sim_graph, "graph file")->required();
  sim->add_option("--format", sim_format, "edge-list|pajek");
  sim->add_option("-M,--snapshots", sim_m, "number of snapshots")->required();
  sim->add_option("--seed", sim_seed, "random seed");
  sim->add_option("--sigma", sim_sigma, "input standard deviation");
  sim->add_option("--durations", sim_durations, "duration set")->delimiter(',');
  sim->add_option("-o,--output", sim_out, "output path (.csv or .json)")->required();
  sim->add_flag("--provenance", sim_prov, "write a ground-truth sidecar JSON");

  // recover
  auto* rec = app.add_subcommand("recover", "recover a Laplacian from snapshots");
  std::string rec_snaps, rec_out;
  RecoverFlags rec_flags;
  rec->add_option("-s,--snapshots", rec_snaps, "snapshot file (.csv or .json)")->required();
  rec->add_option("-o,--output", rec_out, "solution JSON path")->required();
  rec_flags.attach(rec);

  // experiment
  auto* exp = app.add_subcommand("experiment", "batch experiments");
  exp->require_subcommand(1);

  auto* grid = exp->add_subcommand("er-grid", "recovery rate over an Erdos-Renyi grid");
  std::vector<int> grid_n{10, 20, 30};
  std::vector<double> grid_p{0.1, 0.3, 0.5};
  int grid_trials = 10, grid_threads = 0;
  bool grid_exact = false;
  Index grid_m = 10000;
  std::uint64_t grid_seed = 0;
  double grid_threshold = 2e-2, grid_sigma = 1.0;
  std::vector<int> grid_durations{3, 4, 5};
  std::string grid_out, grid_jsonl, grid_report;
  RecoverFlags grid_flags;
  grid_flags.reweight = 4;
  grid->add_option("--n-list", grid_n, "node counts")->delimiter(',');
  grid->add_option("--p-list", grid_p, "edge probabilities")->delimiter(',');
  grid->add_option("--trials", grid_trials, "trials per cell");
  grid->add_flag("--exact-basis", grid_exact, "use the true eigenbasis (epsilon1=0, eta=1)");
  grid->add_option("-M,--snapshots", grid_m, "snapshots per trial (sampled-basis mode)");
  grid->add_option("--seed", grid_seed, "master seed");
  grid->add_option("--threshold", grid_threshold, "success threshold on the rescaled error");
  grid->add_option("--threads", grid_threads, "worker threads (0 = all)");
  grid->add_option("--sigma", grid_sigma, "input standard deviation");
  grid->add_option("--durations", grid_durations, "duration set")->delimiter(',');
  grid->add_option("-o,--output", grid_out, "trial CSV path")->required();
  grid->add_option("--jsonl", grid_jsonl, "trial JSON-lines path");
  grid->add_option("--report", grid_report, "grid report JSON path");
  grid_flags.attach(grid);

  auto* evm = exp->add_subcommand("error-vs-m", "recovery error versus snapshot count");
  std::string evm_graph, evm_format = "edge-list", evm_out, evm_jsonl, evm_report;
  std::vector<Index> evm_m{10, 100, 1000, 10000};
  int evm_trials = 10, evm_threads = 0;
  std::uint64_t evm_seed = 0;
  double evm_threshold = 2e-2, evm_sigma = 1.0;
  std::vector<int> evm_durations{3, 4, 5};
  RecoverFlags evm_flags;
  evm_flags.eta = 5;
  evm_flags.reweight = 4;
  evm->add_option("-g,--graph", evm_graph, "graph file")->required();
  evm->add_option("--format", evm_format, "edge-list|pajek");
  evm->add_option("-M,--M-list", evm_m, "snapshot counts")->delimiter(',');
  evm->add_option("--trials", evm_trials, "trials per M");
  evm->add_option("--seed", evm_seed, "master seed");
  evm->add_option("--threshold", evm_threshold, "success threshold on the rescaled error");
  evm->add_option("--threads", evm_threads, "worker threads (0 = all)");
  evm->add_option("--sigma", evm_sigma, "input standard deviation");
  evm->add_option("--durations", evm_durations, "duration set")->delimiter(',');
  evm->add_option("-o,--output", evm_out, "trial CSV path")->required();
  evm->add_option("--jsonl", evm_jsonl, "trial JSON-lines path");
  evm->add_option("--report", evm_report, "report JSON path");
  evm_flags.attach(evm);

  // diagnostics
  auto* dia = app.add_subcommand("diagnostics", "covariance diagonalization diagnostics ladder");
  std::string dia_graph, dia_format = "edge-list", dia_out;
  std::vector<Index> dia_m{100, 1000, 10000};
  int dia_seeds = 20;
  std::uint64_t dia_seed = 0;
  double dia_sigma = 1.0;
  std::vector<int> dia_durations{3, 4, 5};
  dia->add_option("-g,--graph", dia_graph, "graph file")->required();
  dia->add_option("--format", dia_format, "edge-list|pajek");
  dia->add_option("--M-list", dia_m, "snapshot counts")->delimiter(',');
  dia->add_option("--seeds", dia_seeds, "seeds per M");
  dia->add_option("--seed", dia_seed, "master seed");
  dia->add_option("--sigma", dia_sigma, "input standard deviation");
  dia->add_option("--durations", dia_durations, "duration set")->delimiter(',');
  dia->add_option("-o,--output", dia_out, "records JSON-lines path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (gen->parsed())
      return cmd_gen_graph(gg_n, gg_p, gg_seed, gg_weights, gg_wlo, gg_whi, gg_out, gg_format);
    if (sim->parsed())
      return cmd_simulate(sim_graph, sim_format, sim_m, sim_seed, sim_sigma, sim_durations,
                          sim_out, sim_prov);
    if (rec->parsed()) return cmd_recover(rec_snaps, rec_out, rec_flags);
    if (grid->parsed())
      return cmd_er_grid(grid_n, grid_p, grid_trials, grid_exact, grid_m, grid_seed,
                         grid_threshold, grid_threads, grid_sigma, grid_durations, grid_flags,
                         grid_out, grid_jsonl, grid_report);
    if (evm->parsed())
      return cmd_error_vs_m(evm_graph, evm_format, evm_m, evm_trials, evm_seed, evm_threshold,
                            evm_threads, evm_sigma, evm_durations, evm_flags, evm_out, evm_jsonl,
                            evm_report);
    if (dia->parsed())
      return cmd_diagnostics(dia_graph, dia_format, dia_m, dia_seeds, dia_seed, dia_sigma,
                             dia_durations, dia_out);
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const IndexError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
