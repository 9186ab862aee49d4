#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "locstat/errors.hpp"
#include "locstat/kernels.hpp"
#include "locstat/optimize.hpp"
#include "locstat/simulate.hpp"
#include "locstat/statespace.hpp"

namespace locstat {

/// Steady-state Kalman quantities of a sampled model.
struct KalmanSteady {
  Eigen::MatrixXd Omega;       // Riccati solution
  Eigen::VectorXd K;           // gain Phi Omega B / V
  double V = 0.0;              // innovation variance B' Omega B
  Eigen::MatrixXd Phi_closed;  // Phi - K B'
  int iterations = 0;
  double residual = 0.0;  // Frobenius norm of Omega - RHS(Omega)
};

/// Riccati iteration ended in a state with B' Omega B <= 0 (e.g. Q = 0, where Omega = 0 is
/// the fixed point). The reached state is available through steady().
class DegeneracyError : public NumericError {
 public:
  DegeneracyError(const std::string& what, KalmanSteady steady)
      : NumericError(what), steady_(std::move(steady)) {}
  const KalmanSteady& steady() const { return steady_; }

 private:
  KalmanSteady steady_;
};

/// Solves Omega = Phi Omega Phi' + Q - (Phi Omega B)(B' Omega B)^{-1}(Phi Omega B)' by
/// fixed-point iteration from Omega_0 = Q, stopping once the update is below
/// 1e-13 (1 + |Omega|). After 1000 plain iterations, Newton (Hewer) steps with the Stein
/// equation solved by doubling take over. Throws NumericError on non-convergence within
/// 1e5 iterations and DegeneracyError when B' Omega B <= 0.
KalmanSteady solve_riccati(const Eigen::MatrixXd& Phi, const Eigen::MatrixXd& Q,
                           const Eigen::VectorXd& B);
KalmanSteady solve_riccati(const SampledModel& sm);

/// |Omega - (Phi Omega Phi' + Q - (Phi Omega B)(B' Omega B)^{-1}(Phi Omega B)')|_F.
double riccati_residual(const Eigen::MatrixXd& Phi, const Eigen::MatrixXd& Q,
                        const Eigen::VectorXd& B, const Eigen::MatrixXd& Omega);

/// Innovations eps_i = y_{i+1} - B' X_{i+1}, X_{i+1} = (Phi - K B') X_i + K y_i, X_0 = 0;
/// returns n - 1 values for n observations (observations before the window count as 0).
std::vector<double> truncated_innovations(std::span<const double> y, const SampledModel& sm,
                                          const KalmanSteady& ks);

/// sum_i w_i (log 2 pi + log V + eps_i^2 / V), i over the first n - 1 weights. Returns +inf
/// when theta is inadmissible or the Riccati solve fails.
double qmle_objective(std::span<const double> y, std::span<const double> weights,
                      const ModelFamily& family, std::span<const double> theta, double Delta);
double qmle_objective(const Window& window, std::span<const double> weights,
                      const ModelFamily& family, std::span<const double> theta);

/// Output of the box-constrained state-space estimators.
struct StateSpaceEstimate {
  std::vector<double> theta;
  double objective = 0.0;  // minimized objective value
  int generations = 0;
  long evaluations = 0;
  long infeasible_evaluations = 0;
  bool converged = false;
  double riccati_residual = 0.0;  // at theta
  AssumptionReport assumptions;   // checked at theta
};

/// argmin of qmle_objective over the box by differential evolution. Throws EstimationError
/// for an all-zero window or when every candidate is infeasible.
StateSpaceEstimate qmle_estimate(const Window& window, KernelKind kind, const ModelFamily& family,
                                 const Box& box, const DeConfig& config);

}  // namespace locstat
