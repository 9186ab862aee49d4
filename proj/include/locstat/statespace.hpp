#pragma once

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "locstat/box.hpp"
#include "locstat/linalg.hpp"

namespace locstat {

/// (A, B, C, Sigma) of dX = A X dt + C dL, Y = B' X, Var L(1) = Sigma.
struct StateSpaceMatrices {
  Eigen::MatrixXd A;
  Eigen::VectorXd B;
  Eigen::VectorXd C;
  double sigma = 1.0;

  int dim() const { return static_cast<int>(A.rows()); }
};

/// Parametric family theta -> (A_theta, B_theta, C_theta, Sigma_theta) over a box.
class ModelFamily {
 public:
  virtual ~ModelFamily() = default;

  virtual std::string name() const = 0;
  virtual int state_dim() const = 0;
  virtual int param_dim() const = 0;
  /// Throws ParameterError when theta violates the family's restrictions.
  virtual StateSpaceMatrices matrices(std::span<const double> theta) const = 0;
  virtual Box default_box() const = 0;
};

/// Two-dimensional family with
///   A = diag(theta1, theta2),  B = (1, -1)' / (theta2 - theta1),
///   C = (-theta1 (1 + theta2), -theta2 (1 + theta1))',  Sigma = theta3.
/// The output is a CARMA(2,1) process with AR roots theta1, theta2 and MA root theta1 theta2.
class ExampleFamily final : public ModelFamily {
 public:
  std::string name() const override { return "example2d"; }
  int state_dim() const override { return 2; }
  int param_dim() const override { return 3; }
  StateSpaceMatrices matrices(std::span<const double> theta) const override;
  /// theta1 in [-0.7, -0.3], theta2 in [-3.5, -2.5], theta3 in [0.05, 1]; enforces theta1 > theta2.
  Box default_box() const override;

  /// Same formulas without the admissibility checks (used to exhibit degenerate cases).
  static StateSpaceMatrices raw_matrices(std::span<const double> theta);
};

/// Scalar CAR(1): A = -theta1, B = C = 1, Sigma = theta2.
class Car1Family final : public ModelFamily {
 public:
  std::string name() const override { return "car1"; }
  int state_dim() const override { return 1; }
  int param_dim() const override { return 2; }
  StateSpaceMatrices matrices(std::span<const double> theta) const override;
  Box default_box() const override;
};

/// Accepts "example2d" and "car1".
std::unique_ptr<ModelFamily> make_family(std::string_view name);

/// The family evaluated at theta.
StateSpaceMatrices example_family(std::span<const double> theta);

/// Sigma * int_0^Delta e^{A s} C C' e^{A' s} ds via the block exponential of
/// [[A, Sigma C C'], [0, -A']] Delta; symmetrized.
Eigen::MatrixXd sampled_noise_cov(const Eigen::MatrixXd& A, const Eigen::VectorXd& C, double sigma,
                                  double Delta);

/// Sampled representation X(k) = Phi X(k-1) + N(k), Y(k) = B' X(k), Cov N(k) = Qn.
struct SampledModel {
  Eigen::MatrixXd Phi;
  Eigen::MatrixXd Qn;
  Eigen::VectorXd B;
  double Delta = 1.0;
};

SampledModel sample_model(const StateSpaceMatrices& m, double Delta);

/// Solution Pi of A Pi + Pi A' + Sigma C C' = 0 (stationary state covariance).
Eigen::MatrixXd stationary_state_cov(const StateSpaceMatrices& m);

/// Gamma(Delta h) = B' e^{A Delta h} Pi B, h >= 0.
double autocovariance_sampled(const StateSpaceMatrices& m, double Delta, int h);

/// f(omega) = (1/2pi) B' (e^{i omega} I - Phi)^{-1} Qn (e^{-i omega} I - Phi')^{-1} B.
/// Throws NumericError when e^{i omega} is within 1e-12 of an eigenvalue of Phi.
double spectral_density_sampled(const SampledModel& sm, double omega);
double spectral_density_sampled(const ModelFamily& family, std::span<const double> theta,
                                double omega, double Delta);

/// f(omega) = (1/2pi) |B' (i omega I - A)^{-1} C|^2 Sigma.
double spectral_density_continuous(const StateSpaceMatrices& m, double omega);
double spectral_density_continuous(const ModelFamily& family, std::span<const double> theta,
                                   double omega);

/// Rational form of the sampled spectral density:
///   f(omega) = (1/2pi) [c_0 + 2 sum_{h=1}^{p-1} c_h cos(h omega)] / |chi(e^{i omega})|^2,
/// with chi the characteristic polynomial of Phi and the c_h built from the adjugate
/// coefficients (Faddeev-LeVerrier). Allocation-free evaluation for objective loops.
class SampledSpectrum {
 public:
  explicit SampledSpectrum(const SampledModel& sm);

  /// Evaluate from precomputed cos/sin(k omega), k = 0..p.
  double evaluate(std::span<const double> cos_k, std::span<const double> sin_k) const;
  double operator()(double omega) const;
  int dim() const { return p_; }

 private:
  int p_ = 0;
  double numerator_[kMaxStateDim] = {};      // c_h, h = 0..p-1
  double characteristic_[kMaxStateDim + 1] = {};  // chi(z) = sum_k chi_k z^k
};

/// Per-assumption verdict of check_assumptions.
struct AssumptionResult {
  std::string id;  // "C1" .. "C7"
  bool passed = true;
  std::vector<double> worst_theta;
  double worst_value = 0.0;
  std::string detail;
};

struct AssumptionReport {
  std::vector<AssumptionResult> results;

  bool all_passed() const;
  const AssumptionResult& get(std::string_view id) const;
};

/// Evaluates C1-C7 on a grid of `grid_density` points per box dimension.
/// C6 compares sampled spectral densities pairwise at 32 frequencies.
AssumptionReport check_assumptions(const ModelFamily& family, const Box& box, double Delta,
                                   int grid_density = 5);

/// Cheap per-theta admissibility used inside objective functions: C1, C2, B != 0,
/// C5 and C7 at a single theta.
AssumptionReport check_assumptions_at(const ModelFamily& family, std::span<const double> theta,
                                      double Delta);

}  // namespace locstat
