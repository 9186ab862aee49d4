#pragma once

#include <Eigen/Dense>

namespace locstat {

/// Largest state dimension supported by the fixed-capacity types below.
inline constexpr int kMaxStateDim = 4;

// Dynamic size with a compile-time capacity: no heap allocation in inner loops.
using StateMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                                  kMaxStateDim, kMaxStateDim>;
using StateVector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxStateDim, 1>;

/// e^{M t} by scaling and squaring with a [13/13] Padé approximant.
Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& M, double t = 1.0);

/// Spectral radius (largest eigenvalue modulus).
double spectral_radius(const Eigen::MatrixXd& M);

/// Numerical rank via singular values with tolerance n * eps * sigma_max.
int numerical_rank(const Eigen::MatrixXd& M);

}  // namespace locstat
