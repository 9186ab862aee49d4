#include "locstat/kalman.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace locstat {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxIterations = 100000;
constexpr int kPlainIterations = 1000;

StateMatrix riccati_rhs(const StateMatrix& Phi, const StateMatrix& Q, const StateVector& B,
                        const StateMatrix& Omega) {
  StateMatrix next = Phi * Omega * Phi.transpose() + Q;
  const double V = B.dot(Omega * B);
  if (V > 0.0) {
    const StateVector g = Phi * Omega * B;
    next.noalias() -= g * g.transpose() / V;
  }
  return 0.5 * (next + next.transpose());
}

// Solves X = A X A' + Q by Smith doubling; requires rho(A) < 1.
StateMatrix stein_doubling(StateMatrix A, const StateMatrix& Q) {
  StateMatrix X = Q;
  for (int k = 0; k < 64; ++k) {
    const StateMatrix step = A * X * A.transpose();
    X += step;
    A = A * A;
    if (step.norm() <= 1e-17 * (1.0 + X.norm())) break;
  }
  return 0.5 * (X + X.transpose());
}

double spectral_radius_small(const StateMatrix& M) {
  return M.rows() == 0 ? 0.0 : M.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

double riccati_residual(const Eigen::MatrixXd& Phi, const Eigen::MatrixXd& Q,
                        const Eigen::VectorXd& B, const Eigen::MatrixXd& Omega) {
  const Eigen::VectorXd g = Phi * Omega * B;
  const double V = B.dot(Omega * B);
  Eigen::MatrixXd rhs = Phi * Omega * Phi.transpose() + Q;
  if (V > 0.0) rhs -= g * g.transpose() / V;
  return (Omega - rhs).norm();
}

KalmanSteady solve_riccati(const Eigen::MatrixXd& Phi_in, const Eigen::MatrixXd& Q_in,
                           const Eigen::VectorXd& B_in) {
  const Eigen::Index p = Phi_in.rows();
  if (p < 1 || p > kMaxStateDim || Phi_in.cols() != p || Q_in.rows() != p || Q_in.cols() != p ||
      B_in.size() != p)
    throw DomainError("solve_riccati: inconsistent dimensions");
  const StateMatrix Phi = Phi_in, Q = Q_in;
  const StateVector B = B_in;

  StateMatrix Omega = Q;
  int it = 0;
  bool converged = false;
  while (it < kMaxIterations) {
    StateMatrix next;
    if (it >= kPlainIterations) {
      // Newton step: with K from the current iterate, solve Omega = Phi_c Omega Phi_c' + Q.
      const double V = B.dot(Omega * B);
      if (V > 0.0) {
        const StateVector K = Phi * Omega * B / V;
        const StateMatrix Pc = Phi - K * B.transpose();
        if (spectral_radius_small(Pc) < 1.0) next = stein_doubling(Pc, Q);
        else next = riccati_rhs(Phi, Q, B, Omega);
      } else {
        next = riccati_rhs(Phi, Q, B, Omega);
      }
    } else {
      next = riccati_rhs(Phi, Q, B, Omega);
    }
    ++it;
    const double change = (next - Omega).norm();
    const double scale = 1.0 + Omega.norm();
    Omega = next;
    if (!std::isfinite(change)) break;
    if (change <= 1e-13 * scale) {
      converged = true;
      break;
    }
  }

  KalmanSteady ks;
  ks.Omega = Omega;
  ks.iterations = it;
  ks.V = B.dot(Omega * B);
  if (!(ks.V > 0.0)) {
    ks.K = Eigen::VectorXd::Zero(p);
    ks.Phi_closed = Phi_in;
    ks.residual = riccati_residual(Phi_in, Q_in, B_in, ks.Omega);
    throw DegeneracyError("solve_riccati: B' Omega B <= 0 (degenerate innovations)", ks);
  }
  ks.K = Phi * Omega * B / ks.V;
  ks.Phi_closed = Phi_in - ks.K * B_in.transpose();
  ks.residual = riccati_residual(Phi_in, Q_in, B_in, ks.Omega);
  if (!converged)
    throw NumericError("solve_riccati: no convergence after " + std::to_string(it) +
                       " iterations (residual " + std::to_string(ks.residual) + ")");
  return ks;
}

KalmanSteady solve_riccati(const SampledModel& sm) { return solve_riccati(sm.Phi, sm.Qn, sm.B); }

std::vector<double> truncated_innovations(std::span<const double> y, const SampledModel& sm,
                                          const KalmanSteady& ks) {
  const int p = static_cast<int>(sm.B.size());
  double Pc[kMaxStateDim * kMaxStateDim], K[kMaxStateDim], B[kMaxStateDim];
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) Pc[i * p + j] = ks.Phi_closed(i, j);
    K[i] = ks.K(i);
    B[i] = sm.B(i);
  }
  std::vector<double> eps(y.empty() ? 0 : y.size() - 1);
  double x[kMaxStateDim] = {}, next[kMaxStateDim];
  for (std::size_t i = 0; i + 1 < y.size(); ++i) {
    double pred = 0.0;
    for (int r = 0; r < p; ++r) {
      double s = K[r] * y[i];
      for (int c = 0; c < p; ++c) s += Pc[r * p + c] * x[c];
      next[r] = s;
      pred += B[r] * s;
    }
    for (int r = 0; r < p; ++r) x[r] = next[r];
    eps[i] = y[i + 1] - pred;
  }
  return eps;
}

double qmle_objective(std::span<const double> y, std::span<const double> weights,
                      const ModelFamily& family, std::span<const double> theta, double Delta) {
  try {
    if (!check_assumptions_at(family, theta, Delta).all_passed()) return kInf;
    const SampledModel sm = sample_model(family.matrices(theta), Delta);
    const KalmanSteady ks = solve_riccati(sm);
    const std::vector<double> eps = truncated_innovations(y, sm, ks);
    const double c = std::log(2.0 * std::numbers::pi) + std::log(ks.V);
    double s = 0.0;
    for (std::size_t i = 0; i < eps.size(); ++i)
      s += weights[i] * (c + eps[i] * eps[i] / ks.V);
    return std::isfinite(s) ? s : kInf;
  } catch (const Error&) {
    return kInf;
  }
}

double qmle_objective(const Window& window, std::span<const double> weights,
                      const ModelFamily& family, std::span<const double> theta) {
  return qmle_objective(window.values, weights, family, theta, window.grid.Delta);
}

StateSpaceEstimate qmle_estimate(const Window& window, KernelKind kind, const ModelFamily& family,
                                 const Box& box, const DeConfig& config) {
  window.grid.validate();
  if (box.dim() != static_cast<std::size_t>(family.param_dim()))
    throw ConfigError("qmle_estimate: box dimension does not match the family");
  bool all_zero = true;
  for (double v : window.values) all_zero = all_zero && v == 0.0;
  if (all_zero) throw EstimationError("qmle_estimate: degenerate window (all observations zero)");
  const std::vector<double> w = kernel_weights(kind, window.grid);
  DeResult r;
  try {
    r = de_minimize(
        [&](std::span<const double> th) { return qmle_objective(window, w, family, th); }, box,
        config);
  } catch (const OptimizationError& e) {
    throw EstimationError(std::string("qmle_estimate: ") + e.what());
  }
  if (!std::isfinite(r.value)) throw EstimationError("qmle_estimate: no feasible candidate");
  StateSpaceEstimate est;
  est.theta = r.x;
  est.objective = r.value;
  est.generations = r.generations;
  est.evaluations = r.evaluations;
  est.infeasible_evaluations = r.infinite_evaluations;
  est.converged = r.converged;
  est.assumptions = check_assumptions_at(family, est.theta, window.grid.Delta);
  const SampledModel sm = sample_model(family.matrices(est.theta), window.grid.Delta);
  est.riccati_residual = solve_riccati(sm).residual;
  return est;
}

}  // namespace locstat
