#include "locstat/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "locstat/errors.hpp"

namespace locstat {
namespace {

// Padé [13/13] coefficients (Higham 2005).
constexpr double kPade13[] = {64764752532480000.0,
                              32382376266240000.0,
                              7771770303897600.0,
                              1187353796428800.0,
                              129060195264000.0,
                              10559470521600.0,
                              670442572800.0,
                              33522128640.0,
                              1323241920.0,
                              40840800.0,
                              960960.0,
                              16380.0,
                              182.0,
                              1.0};

// Largest 1-norm for which the [13/13] approximant is accurate to unit roundoff.
constexpr double kTheta13 = 5.371920351148152;

}  // namespace

Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& M, double t) {
  if (M.rows() != M.cols()) throw DomainError("matrix_exp: matrix must be square");
  if (!M.allFinite() || !std::isfinite(t)) throw DomainError("matrix_exp: entries must be finite");
  const Eigen::Index n = M.rows();
  if (n == 0) return M;
  Eigen::MatrixXd A = M * t;
  const double norm = A.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > kTheta13) {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta13))));
    A /= std::ldexp(1.0, squarings);
  }
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd A2 = A * A;
  const Eigen::MatrixXd A4 = A2 * A2;
  const Eigen::MatrixXd A6 = A4 * A2;
  const double* b = kPade13;
  const Eigen::MatrixXd U =
      A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I);
  const Eigen::MatrixXd V =
      A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
  Eigen::MatrixXd E = (V - U).partialPivLu().solve(V + U);
  for (int k = 0; k < squarings; ++k) E = E * E;
  return E;
}

double spectral_radius(const Eigen::MatrixXd& M) {
  if (M.size() == 0) return 0.0;
  return M.eigenvalues().cwiseAbs().maxCoeff();
}

int numerical_rank(const Eigen::MatrixXd& M) {
  if (M.size() == 0) return 0;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& s = svd.singularValues();
  const double tol =
      static_cast<double>(std::max(M.rows(), M.cols())) * std::numeric_limits<double>::epsilon() *
      s(0);
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > tol) ++rank;
  return rank;
}

}  // namespace locstat
