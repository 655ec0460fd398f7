#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netinf/covariance.hpp"
#include "netinf/errors.hpp"
#include "netinf/isotonic.hpp"
#include "netinf/lp.hpp"
#include "netinf/random.hpp"
#include "netinf/types.hpp"

namespace netinf {

/// Norm measuring how far the recovered Laplacian may sit from the template's
/// eigenspace: Frobenius gives a cone program, Max an LP.
enum class NormVariant { Frobenius, Max };

inline std::string to_string(NormVariant v) {
  return v == NormVariant::Frobenius ? "frobenius" : "max";
}

struct RecoveryConfig {
  /// Radius of the ball tying L* to the template-diagonalized surrogate;
  /// unset means "resolve with auto_epsilon1 before solving".
  std::optional<double> epsilon1;
  double epsilon2 = 1.0;
  int eta = 1;
  NormVariant norm_variant = NormVariant::Frobenius;
  int reweight_iters = 0;
  double reweight_delta = 1e-4;  // relative to max(u) of the previous iterate

  /// Pin the eigenvalue paired with the heaviest covariance direction to zero.
  /// That direction estimates the Laplacian's constant eigenvector, whose
  /// eigenvalue is zero; pinning it removes the free offset along
  /// V diag(1) V^T = I that the edge-weight parameterization cannot absorb.
  /// Disable to run the ordering constraints alone.
  bool anchor_zero_eigenvalue = true;

  // solver tolerances
  double feas_tol = 1e-6;
  double opt_tol = 1e-4;
  double residual_tol = 1e-7;
  std::int64_t max_iters = 200000;

  void validate(Index n) const {
    if (eta < 1 || eta > n - 1) throw DomainError("RecoveryConfig: need 1 <= eta <= n-1");
    if (!(epsilon2 > 0.0)) throw DomainError("RecoveryConfig: epsilon2 must be positive");
    if (epsilon1 && !(*epsilon1 >= 0.0))
      throw DomainError("RecoveryConfig: epsilon1 must be nonnegative");
    if (reweight_iters < 0) throw DomainError("RecoveryConfig: reweight_iters must be >= 0");
    if (!(reweight_delta > 0.0)) throw DomainError("RecoveryConfig: reweight_delta must be positive");
    if (max_iters < 1) throw DomainError("RecoveryConfig: max_iters must be >= 1");
  }
};

struct RecoveryProblem {
  SpectralTemplate tmpl;
  RecoveryConfig config;
};

struct SolverDiagnostics {
  std::int64_t iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double epsilon1_used = 0.0;
  double constraint_violation = 0.0;  // max(0, ||L* - K|| - epsilon1)
  bool feasible = false;
  std::vector<double> reweight_objectives;  // unweighted ||J||_1 per reweight pass
};

struct RecoverySolution {
  Matrix l_star;        // the recovered Laplacian candidate (optimal J)
  Matrix l_tilde_star;  // template-diagonalized surrogate (optimal K)
  Vector lambda_star;   // beta*, descending along template columns
  double objective = 0.0;  // ||l_star||_1
  SolverDiagnostics diagnostics;
};

namespace detail {

/// Linear map (u, beta) -> J(u) - V diag(beta) V^T over symmetric matrices.
/// J is parameterized by the n(n-1)/2 nonnegative edge weights u: off-diagonal
/// J_ij = -u_ij and diagonal J_ii = sum_j u_ij, so J is structurally a valid
/// Laplacian whenever u >= 0 and ||J||_1 = 4 sum(u).
class RecoveryOperator {
 public:
  explicit RecoveryOperator(const Matrix& basis) : v_(basis), n_(basis.rows()) {
    pairs_.reserve(static_cast<std::size_t>(n_ * (n_ - 1) / 2));
    for (Index i = 0; i < n_; ++i)
      for (Index j = i + 1; j < n_; ++j) pairs_.push_back({i, j});
  }

  Index n() const { return n_; }
  Index pair_count() const { return static_cast<Index>(pairs_.size()); }
  const std::vector<std::pair<Index, Index>>& pairs() const { return pairs_; }

  Matrix build_j(const Vector& u) const {
    Matrix j = Matrix::Zero(n_, n_);
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
      const auto [a, b] = pairs_[k];
      const double w = u[static_cast<Index>(k)];
      j(a, b) = -w;
      j(b, a) = -w;
      j(a, a) += w;
      j(b, b) += w;
    }
    return j;
  }

  Matrix surrogate(const Vector& beta) const {
    return v_ * beta.asDiagonal() * v_.transpose();
  }

  Matrix apply(const Vector& u, const Vector& beta) const {
    return build_j(u) - surrogate(beta);
  }

  void adjoint(const Matrix& z, Vector& gu, Vector& gbeta) const {
    gu.resize(pair_count());
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
      const auto [a, b] = pairs_[k];
      gu[static_cast<Index>(k)] = z(a, a) + z(b, b) - z(a, b) - z(b, a);
    }
    gbeta = -(v_.transpose() * z * v_).diagonal();
  }

  /// ||A|| estimated by power iteration on A^T A from a fixed pseudo-random
  /// start, inflated slightly so step sizes stay on the safe side.
  double operator_norm() const {
    auto rng = make_rng(0x6f706e6fu);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Vector u(pair_count()), beta(n_);
    for (Index k = 0; k < u.size(); ++k) u[k] = unif(rng);
    for (Index k = 0; k < n_; ++k) beta[k] = unif(rng);
    double lambda = 1.0;
    Vector gu, gbeta;
    for (int it = 0; it < 50; ++it) {
      const double norm = std::sqrt(u.squaredNorm() + beta.squaredNorm());
      if (norm == 0.0) break;
      u /= norm;
      beta /= norm;
      adjoint(apply(u, beta), gu, gbeta);
      lambda = std::sqrt(gu.squaredNorm() + gbeta.squaredNorm());
      u = gu;
      beta = gbeta;
    }
    return 1.02 * std::sqrt(lambda);
  }

 private:
  Matrix v_;
  Index n_;
  std::vector<std::pair<Index, Index>> pairs_;
};

inline double matrix_norm(const Matrix& m, NormVariant v) {
  return v == NormVariant::Frobenius ? m.norm() : m.cwiseAbs().maxCoeff();
}

/// Projection onto { ||Z|| <= radius } in the configured norm.
inline Matrix ball_project(const Matrix& z, double radius, NormVariant v) {
  if (radius <= 0.0) return Matrix::Zero(z.rows(), z.cols());
  if (v == NormVariant::Frobenius) {
    const double norm = z.norm();
    return norm <= radius ? z : Matrix(z * (radius / norm));
  }
  return z.cwiseMax(-radius).cwiseMin(radius);
}

/// Projection onto the entrywise l1 ball of the given radius (dual ball of
/// the max norm).
inline Matrix l1_ball_project(const Matrix& z, double radius) {
  double total = z.cwiseAbs().sum();
  if (total <= radius) return z;
  std::vector<double> mags(static_cast<std::size_t>(z.size()));
  for (Index k = 0; k < z.size(); ++k) mags[static_cast<std::size_t>(k)] = std::abs(z(k));
  std::sort(mags.begin(), mags.end(), std::greater<>());
  double cumsum = 0.0, theta = 0.0;
  for (std::size_t k = 0; k < mags.size(); ++k) {
    cumsum += mags[k];
    const double candidate = (cumsum - radius) / static_cast<double>(k + 1);
    if (mags[k] - candidate <= 0.0) break;
    theta = candidate;
  }
  Matrix out = z;
  for (Index k = 0; k < out.size(); ++k) {
    const double mag = std::abs(z(k)) - theta;
    out(k) = mag > 0.0 ? std::copysign(mag, z(k)) : 0.0;
  }
  return out;
}

/// The cheapest beta satisfying the gap constraints with last entry zero:
/// within each stride-eta chain the values step down by eps2 to zero.
inline Vector minimal_ordered_beta(Index n, double eps2, int eta) {
  Vector beta(n);
  for (Index start = 0; start < eta; ++start) {
    std::vector<Index> chain;
    for (Index i = start; i < n; i += eta) chain.push_back(i);
    for (std::size_t j = 0; j < chain.size(); ++j)
      beta[chain[j]] = static_cast<double>(chain.size() - 1 - j) * eps2;
  }
  return beta;
}

struct PdhgOptions {
  double residual_tol = 1e-7;
  std::int64_t max_iters = 200000;
  int check_interval = 32;
  bool feasibility_mode = false;  // minimize ||A x|| instead of the weighted cost
  double epsilon1 = 0.0;          // ball radius (objective mode)
  double feas_headroom = 5e-7;    // objective mode: required ball margin at stop
  double early_exit_value = -1.0;  // feasibility mode: stop once value <= this
};

struct PdhgState {
  Vector u, beta;
  Matrix z;
};

struct PdhgResult {
  Vector u, beta;
  Matrix z;
  std::int64_t iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  bool converged = false;
  double norm_value = 0.0;  // ||A x|| in the configured norm (best seen in feasibility mode)
};

/// Primal-dual (Chambolle-Pock) iteration on
///   min_{u >= 0, beta ordered}  c^T u + g(J(u) - V diag(beta) V^T)
/// with g either the indicator of the epsilon1 ball (objective mode) or the
/// norm itself (feasibility mode). Projections keep every iterate structurally
/// feasible, so in feasibility mode ||A x_k|| is always a valid upper bound on
/// the minimal achievable distance.
///
/// Iterates are periodically restarted from their running average (doubling
/// period), which lifts plain PDHG out of its sublinear tail on these
/// LP-like programs. Stopping requires small fixed-point residuals relative to
/// the gradient/image scale, plus (objective mode) a ball violation below
/// feas_headroom, so "converged" implies a usable feasibility margin.
inline PdhgResult pdhg_solve(const RecoveryOperator& op, const Vector& cost, double eps2, int eta,
                             bool anchor, NormVariant norm, const PdhgOptions& opt,
                             const PdhgState* warm = nullptr) {
  const Index n = op.n();
  const Index e = op.pair_count();

  Vector u = warm ? warm->u : Vector::Zero(e);
  Vector beta = warm ? warm->beta : minimal_ordered_beta(n, eps2, eta);
  Matrix z = warm ? warm->z : Matrix::Zero(n, n);
  u = u.cwiseMax(0.0);
  beta = project_ordered(beta, eps2, eta, anchor);

  const double opnorm = std::max(op.operator_norm(), 1e-12);
  // primal weight: tau = 0.95/(omega L), sigma = 0.95 omega / L; adapted at
  // restarts toward the observed dual/primal movement ratio so ill-matched
  // primal and dual scales (thin feasible balls have huge duals) still converge
  double omega = 1.0;
  double tau = 0.95 / opnorm;
  double sigma = 0.95 / opnorm;

  Vector u_bar = u, beta_bar = beta;
  Vector gu(e), gbeta(n);

  Vector u_sum = Vector::Zero(e), beta_sum = Vector::Zero(n);
  Matrix z_sum = Matrix::Zero(n, n);
  Vector u_mark = u, beta_mark = beta;
  Matrix z_mark = z;
  std::int64_t avg_count = 0;
  std::int64_t restart_period = 256;
  std::int64_t since_restart = 0;

  PdhgResult best;
  best.norm_value = std::numeric_limits<double>::infinity();

  PdhgResult res;
  for (std::int64_t iter = 1; iter <= opt.max_iters; ++iter) {
    // dual ascent on the extrapolated point
    Matrix ax_bar = op.apply(u_bar, beta_bar);
    Matrix zarg = z + sigma * ax_bar;
    Matrix z_new;
    if (opt.feasibility_mode) {
      z_new = norm == NormVariant::Frobenius ? ball_project(zarg, 1.0, NormVariant::Frobenius)
                                             : l1_ball_project(zarg, 1.0);
    } else {
      z_new = zarg - ball_project(zarg, sigma * opt.epsilon1, norm);
    }

    // primal descent
    op.adjoint(z_new, gu, gbeta);
    Vector u_new = (u - tau * (gu + cost)).cwiseMax(0.0);
    Vector beta_new = project_ordered(beta - tau * gbeta, eps2, eta, anchor);

    u_bar = 2.0 * u_new - u;
    beta_bar = 2.0 * beta_new - beta;

    u_sum += u_new;
    beta_sum += beta_new;
    z_sum += z_new;
    ++avg_count;
    ++since_restart;

    const bool check = iter % opt.check_interval == 0 || iter == opt.max_iters;
    if (check) {
      Matrix ax_new = op.apply(u_new, beta_new);
      const double value = matrix_norm(ax_new, norm);

      // fixed-point residuals of the two prox inclusions
      const double dx = std::sqrt((u - u_new).squaredNorm() + (beta - beta_new).squaredNorm());
      const double gscale = std::sqrt(gu.squaredNorm() + gbeta.squaredNorm()) + cost.norm();
      const double p_res = (dx / tau) / (1.0 + gscale);
      const double d_res_abs = ((z - z_new) / sigma + ax_bar - ax_new).norm();
      const double d_res = d_res_abs / (1.0 + ax_new.norm());

      res.iterations = iter;
      res.primal_residual = p_res;
      res.dual_residual = d_res;
      res.norm_value = value;

      if (opt.feasibility_mode && value < best.norm_value) {
        best.u = u_new;
        best.beta = beta_new;
        best.z = z_new;
        best.norm_value = value;
      }
      if (opt.feasibility_mode && opt.early_exit_value >= 0.0 && value <= opt.early_exit_value) {
        res.converged = true;
        break;
      }
      const bool violation_ok =
          opt.feasibility_mode || value <= opt.epsilon1 + opt.feas_headroom;
      if (p_res <= opt.residual_tol && d_res <= opt.residual_tol && violation_ok) {
        res.converged = true;
        u = std::move(u_new);
        beta = std::move(beta_new);
        z = std::move(z_new);
        break;
      }

      if (since_restart >= restart_period) {
        // restart from the running average (a convex combination, so all
        // structural constraints still hold) and reset the extrapolation
        u_new = u_sum / static_cast<double>(avg_count);
        beta_new = beta_sum / static_cast<double>(avg_count);
        z_new = z_sum / static_cast<double>(avg_count);

        const double dxm = std::sqrt((u_new - u_mark).squaredNorm() +
                                     (beta_new - beta_mark).squaredNorm());
        const double dzm = (z_new - z_mark).norm();
        if (dxm > 1e-30 && dzm > 1e-30) {
          omega = std::clamp(std::exp(0.5 * std::log(dzm / dxm) + 0.5 * std::log(omega)),
                             1e-5, 1e5);
          tau = 0.95 / (opnorm * omega);
          sigma = 0.95 * omega / opnorm;
        }
        u_mark = u_new;
        beta_mark = beta_new;
        z_mark = z_new;

        u = u_new;
        beta = beta_new;
        u_bar = u_new;
        beta_bar = beta_new;
        u_sum.setZero();
        beta_sum.setZero();
        z_sum.setZero();
        avg_count = 0;
        since_restart = 0;
        // grow the window so averaging can settle, but keep restarting late so
        // the weight adaptation never freezes
        restart_period = std::min<std::int64_t>(restart_period * 2, 8192);
      }
    }

    u = std::move(u_new);
    beta = std::move(beta_new);
    z = std::move(z_new);
  }

  if (opt.feasibility_mode && best.norm_value < std::numeric_limits<double>::infinity()) {
    res.u = std::move(best.u);
    res.beta = std::move(best.beta);
    res.z = std::move(best.z);
    res.norm_value = best.norm_value;
  } else {
    res.u = std::move(u);
    res.beta = std::move(beta);
    res.z = std::move(z);
  }
  if (res.iterations == 0) res.iterations = opt.max_iters;
  return res;
}

/// Minimal achievable ||J(u) - V diag(beta) V^T|| over the structural set,
/// i.e. the smallest epsilon1 with a nonempty feasible region. Computed by a
/// feasibility-mode solve; the result is an upper bound that tightens to the
/// optimum at convergence.
inline double feasibility_distance(const SpectralTemplate& tmpl, const RecoveryConfig& cfg,
                                   double early_exit_value = -1.0,
                                   PdhgState* state_out = nullptr) {
  RecoveryOperator op(tmpl.basis);
  PdhgOptions opt;
  opt.residual_tol = cfg.residual_tol;
  opt.max_iters = cfg.max_iters;
  opt.feasibility_mode = true;
  opt.early_exit_value = early_exit_value;
  Vector cost = Vector::Zero(op.pair_count());
  PdhgResult res = pdhg_solve(op, cost, cfg.epsilon2, cfg.eta, cfg.anchor_zero_eigenvalue,
                              cfg.norm_variant, opt);
  if (state_out) {
    state_out->u = res.u;
    state_out->beta = res.beta;
    state_out->z = Matrix::Zero(op.n(), op.n());
  }
  return res.norm_value;
}

}  // namespace detail

/// Least-squares scale alignment: the c minimizing ||c L_est - L_ref||_F,
/// namely <L_est, L_ref>_F / ||L_est||_F^2. Returns (c * L_est, c).
inline std::pair<Matrix, double> rescale_to_reference(const Matrix& l_est, const Matrix& l_ref) {
  if (l_est.rows() != l_ref.rows() || l_est.cols() != l_ref.cols())
    throw DimensionError("rescale_to_reference: dimension mismatch");
  const double denom = l_est.squaredNorm();
  if (denom == 0.0) throw ZeroMatrixError("rescale_to_reference: zero estimate");
  const double c = l_est.cwiseProduct(l_ref).sum() / denom;
  return {c * l_est, c};
}

/// Smallest epsilon1 (within bisection tolerance 1e-4 * eps_hi) at which the
/// recovery program is feasible. eps_hi is the distance realized by the
/// trivial candidate J = 0 with the minimal ordered beta, so the upper
/// bracket is feasible by construction.
inline double auto_epsilon1(const SpectralTemplate& tmpl, const RecoveryConfig& cfg) {
  const Index n = tmpl.dimension();
  cfg.validate(n);
  detail::RecoveryOperator op(tmpl.basis);
  const Vector beta0 = detail::minimal_ordered_beta(n, cfg.epsilon2, cfg.eta);
  const double eps_hi = detail::matrix_norm(op.surrogate(beta0), cfg.norm_variant);

  const double dist = detail::feasibility_distance(tmpl, cfg);
  if (dist > eps_hi + cfg.feas_tol)
    throw SearchError("auto_epsilon1: upper bracket infeasible (feasibility solve returned " +
                      std::to_string(dist) + " > " + std::to_string(eps_hi) + ")");

  const double tol = 1e-4 * eps_hi;
  auto feasible = [&](double eps) { return dist <= eps + cfg.feas_tol; };
  if (feasible(0.0)) return 0.0;
  double lo = 0.0, hi = eps_hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  // one bisection tolerance of headroom keeps the returned radius strictly
  // achievable; without it the ball can be thinner than the solver's
  // feasibility margin and the follow-up solve grinds against the boundary
  return hi + std::max(tol, cfg.feas_tol);
}

namespace detail {

/// epsilon1 = 0 presolve: the ball collapses to the equality J = K, which is
/// eliminated exactly instead of being handed to the first-order method as a
/// zero-radius ball. (A tolerance ball is useless here: on ill-conditioned
/// spectra there are near-diagonalized Laplacians within ~1e-8 of the
/// eigenspace whose objective undercuts the true optimum by orders of
/// magnitude, so any epsilon-violation stopping rule returns them.)
///
/// Under J = K the edge weights are determined, u_ij = -K_ij, and
/// ||J||_1 = 2 tr(K); zero row sums force beta_l = 0 wherever the basis
/// column has a nonzero mean. What remains is a small LP in beta:
///   min  sum_{i<j} w_ij (-K(beta)_ij)   s.t.  ordering gaps,
///        K(beta)_ij <= 0 for i < j,  beta_l = 0 for columns with mean != 0,
/// solved exactly by simplex. Vertices satisfy the constraints to pivot
/// roundoff, far below the width at which the spurious near-solutions live.
inline RecoverySolution solve_equality_reduced(const RecoveryProblem& problem,
                                               const Vector& pair_cost, PdhgState* state_out) {
  const SpectralTemplate& tmpl = problem.tmpl;
  const RecoveryConfig& cfg = problem.config;
  const Index n = tmpl.dimension();
  const Matrix& v = tmpl.basis;

  const Vector col_mean = v.transpose() * Vector::Ones(n);
  const double mean_tol = 1e-9 * col_mean.norm();
  std::vector<char> forced(static_cast<std::size_t>(n), 0);
  for (Index l = 0; l < n; ++l)
    if (std::abs(col_mean[l]) > mean_tol) forced[static_cast<std::size_t>(l)] = 1;
  if (cfg.anchor_zero_eigenvalue) forced[static_cast<std::size_t>(n - 1)] = 1;

  std::vector<Index> free_vars;
  for (Index l = 0; l < n; ++l)
    if (!forced[static_cast<std::size_t>(l)]) free_vars.push_back(l);
  const Index nf = static_cast<Index>(free_vars.size());
  if (nf == 0)
    throw InfeasibleError("solve: program infeasible at epsilon1 = 0 (all eigenvalues pinned)");

  RecoveryOperator op(v);
  const Index n_rows = op.pair_count() + (n - cfg.eta);
  Matrix a = Matrix::Zero(n_rows, nf);
  Vector b = Vector::Zero(n_rows);
  Vector cost = Vector::Zero(nf);
  for (Index k = 0; k < op.pair_count(); ++k) {
    const auto [i, j] = op.pairs()[static_cast<std::size_t>(k)];
    for (Index f = 0; f < nf; ++f) {
      const Index l = free_vars[static_cast<std::size_t>(f)];
      a(k, f) = -v(i, l) * v(j, l);  // K(beta)_ij <= 0
      cost[f] -= pair_cost[k] * v(i, l) * v(j, l);
    }
  }
  std::vector<Index> var_of(static_cast<std::size_t>(n), -1);
  for (Index f = 0; f < nf; ++f) var_of[static_cast<std::size_t>(free_vars[f])] = f;
  for (Index i = 0; i + cfg.eta < n; ++i) {
    const Index r = op.pair_count() + i;
    const Index lo = var_of[static_cast<std::size_t>(i)];
    const Index hi = var_of[static_cast<std::size_t>(i + cfg.eta)];
    if (lo >= 0) a(r, lo) += 1.0;
    if (hi >= 0) a(r, hi) -= 1.0;
    b[r] = cfg.epsilon2;
  }

  const ReducedLpResult lp = ReducedLpSolver().solve(a, b, cost);
  if (lp.status != LpStatus::Optimal)
    throw InfeasibleError("solve: program infeasible at epsilon1 = 0");

  Vector beta = Vector::Zero(n);
  for (Index f = 0; f < nf; ++f) beta[free_vars[static_cast<std::size_t>(f)]] = lp.x[f];

  const Matrix k_mat = op.surrogate(beta);
  Vector u(op.pair_count());
  for (Index k = 0; k < op.pair_count(); ++k) {
    const auto [i, j] = op.pairs()[static_cast<std::size_t>(k)];
    u[k] = std::max(0.0, -k_mat(i, j));
  }

  RecoverySolution sol;
  sol.l_star = op.build_j(u);
  sol.l_tilde_star = k_mat;
  sol.lambda_star = beta;
  sol.objective = sol.l_star.cwiseAbs().sum();
  sol.diagnostics.iterations = lp.pivots;
  sol.diagnostics.primal_residual = 0.0;
  sol.diagnostics.dual_residual = 0.0;
  sol.diagnostics.epsilon1_used = 0.0;
  const double gap = matrix_norm(sol.l_star - sol.l_tilde_star, cfg.norm_variant);
  sol.diagnostics.constraint_violation = gap;
  sol.diagnostics.feasible = gap <= cfg.feas_tol;

  if (state_out) {
    state_out->u = u;
    state_out->beta = beta;
    state_out->z = Matrix::Zero(n, n);
  }
  return sol;
}

inline RecoverySolution solve_with_cost(const RecoveryProblem& problem, const Vector& cost,
                                        const PdhgState* warm, PdhgState* state_out) {
  const SpectralTemplate& tmpl = problem.tmpl;
  const RecoveryConfig& cfg = problem.config;
  const Index n = tmpl.dimension();
  if (n < 2) throw DimensionError("solve: template dimension must be >= 2");
  if (tmpl.basis.rows() != tmpl.basis.cols())
    throw DimensionError("solve: template basis must be square");
  cfg.validate(n);
  if (!cfg.epsilon1)
    throw DomainError("solve: epsilon1 unset; resolve it with auto_epsilon1 first");
  const double eps1 = *cfg.epsilon1;
  if (eps1 == 0.0) return solve_equality_reduced(problem, cost, state_out);

  RecoveryOperator op(tmpl.basis);

  // Feasibility screen: the J = 0 candidate settles it cheaply, otherwise a
  // feasibility solve (early exit once any point lands inside the ball).
  // Warm-started calls re-solve the same constraint set and skip it. The
  // screen's point is not reused as a starting iterate: it sits on the ball
  // boundary, which throws off the primal-weight adaptation.
  const Vector beta0 = minimal_ordered_beta(n, cfg.epsilon2, cfg.eta);
  const PdhgState* start = warm;
  if (!warm && matrix_norm(op.surrogate(beta0), cfg.norm_variant) > eps1) {
    const double dist = feasibility_distance(tmpl, cfg, eps1, nullptr);
    if (dist > eps1 + cfg.feas_tol)
      throw InfeasibleError("solve: program infeasible at epsilon1 = " + std::to_string(eps1) +
                            " (minimal achievable distance ~ " + std::to_string(dist) + ")");
  }

  PdhgOptions opt;
  opt.residual_tol = cfg.residual_tol;
  opt.max_iters = cfg.max_iters;
  opt.epsilon1 = eps1;
  opt.feas_headroom = 0.5 * cfg.feas_tol;
  PdhgResult res = pdhg_solve(op, cost, cfg.epsilon2, cfg.eta, cfg.anchor_zero_eigenvalue,
                              cfg.norm_variant, opt, start);
  if (!res.converged)
    throw NonConvergenceError("solve: no convergence after " + std::to_string(res.iterations) +
                              " iterations (primal residual " + std::to_string(res.primal_residual) +
                              ", dual residual " + std::to_string(res.dual_residual) + ")");

  RecoverySolution sol;
  sol.l_star = op.build_j(res.u);
  sol.l_tilde_star = op.surrogate(res.beta);
  sol.lambda_star = res.beta;
  sol.objective = sol.l_star.cwiseAbs().sum();
  sol.diagnostics.iterations = res.iterations;
  sol.diagnostics.primal_residual = res.primal_residual;
  sol.diagnostics.dual_residual = res.dual_residual;
  sol.diagnostics.epsilon1_used = eps1;
  const double gap = detail::matrix_norm(sol.l_star - sol.l_tilde_star, cfg.norm_variant);
  sol.diagnostics.constraint_violation = std::max(0.0, gap - eps1);
  sol.diagnostics.feasible = sol.diagnostics.constraint_violation <= cfg.feas_tol;

  if (state_out) {
    state_out->u = res.u;
    state_out->beta = res.beta;
    state_out->z = res.z;
  }
  return sol;
}

}  // namespace detail

/// Solves the sparse Laplacian recovery program
///   min ||J||_1  s.t.  J a valid Laplacian,
///                      ||J - V diag(beta) V^T|| <= epsilon1,
///                      beta_i >= beta_{i+eta} + epsilon2.
/// The Laplacian constraints hold structurally through the edge-weight
/// parameterization, so the solver only handles the ball and the ordering.
inline RecoverySolution solve(const RecoveryProblem& problem) {
  detail::RecoveryOperator op(problem.tmpl.basis);
  const Vector cost = Vector::Constant(op.pair_count(), 4.0);  // ||J||_1 = 4 sum(u)
  return detail::solve_with_cost(problem, cost, nullptr, nullptr);
}

/// Iteratively reweighted l1: each pass re-solves with per-edge weights
/// 1 / (u_prev + delta), which drives small recovered weights toward zero.
/// The first pass uses uniform weights and therefore matches solve().
inline RecoverySolution solve_reweighted(const RecoveryProblem& problem, int iters) {
  if (iters < 1) throw DomainError("solve_reweighted: iters must be >= 1");
  detail::RecoveryOperator op(problem.tmpl.basis);
  const Index e = op.pair_count();

  Vector cost = Vector::Constant(e, 4.0);
  std::vector<double> objectives;
  detail::PdhgState state;
  RecoverySolution sol;
  for (int it = 0; it < iters; ++it) {
    sol = detail::solve_with_cost(problem, cost, it == 0 ? nullptr : &state, &state);
    objectives.push_back(sol.objective);
    if (it + 1 == iters) break;
    const double scale = std::max(state.u.maxCoeff(), 0.0);
    const double delta = problem.config.reweight_delta * (scale > 0.0 ? scale : 1.0);
    // w = 1/(u + delta), normalized by delta so weights stay in (0, 4] and the
    // relative emphasis on small entries is unchanged
    for (Index k = 0; k < e; ++k) cost[k] = 4.0 / ((state.u[k] + delta) / delta);
    // the dual of the previous pass belongs to the previous cost; carrying it
    // over derails the step-balance adaptation, so only the primal survives
    state.z.setZero();
  }
  sol.diagnostics.reweight_objectives = std::move(objectives);
  return sol;
}

}  // namespace netinf
