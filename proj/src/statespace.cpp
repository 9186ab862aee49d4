#include "locstat/statespace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "locstat/errors.hpp"

namespace locstat {
namespace {

using Complex = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string format_theta(std::span<const double> theta) {
  std::ostringstream os;
  os.precision(6);
  os << "(";
  for (std::size_t k = 0; k < theta.size(); ++k) os << (k ? ", " : "") << theta[k];
  os << ")";
  return os.str();
}

Eigen::MatrixXd controllability_matrix(const StateSpaceMatrices& m) {
  const int p = m.dim();
  Eigen::MatrixXd out(p, p);
  Eigen::VectorXd col = m.C;
  for (int k = 0; k < p; ++k) {
    out.col(k) = col;
    col = m.A * col;
  }
  return out;
}

Eigen::MatrixXd observability_matrix(const StateSpaceMatrices& m) {
  const int p = m.dim();
  Eigen::MatrixXd out(p, p);
  Eigen::VectorXd col = m.B;
  for (int k = 0; k < p; ++k) {
    out.col(k) = col;
    col = m.A.transpose() * col;
  }
  return out;
}

// All grid points of the box with `density` points per dimension.
std::vector<std::vector<double>> box_grid(const Box& box, int density) {
  const std::size_t d = box.dim();
  std::vector<std::vector<double>> points;
  std::vector<int> idx(d, 0);
  while (true) {
    std::vector<double> theta(d);
    for (std::size_t k = 0; k < d; ++k) {
      theta[k] = density == 1 ? 0.5 * (box.lo[k] + box.hi[k])
                              : box.lo[k] + (box.hi[k] - box.lo[k]) * idx[k] / (density - 1);
    }
    points.push_back(std::move(theta));
    std::size_t k = 0;
    while (k < d && ++idx[k] == density) idx[k++] = 0;
    if (k == d) break;
  }
  return points;
}

double matrices_distance(const StateSpaceMatrices& a, const StateSpaceMatrices& b) {
  return (a.A - b.A).norm() + (a.B - b.B).norm() + (a.C - b.C).norm() + std::abs(a.sigma - b.sigma);
}

AssumptionResult& result_for(AssumptionReport& report, const std::string& id) {
  for (auto& r : report.results)
    if (r.id == id) return r;
  report.results.push_back({id, true, {}, 0.0, {}});
  return report.results.back();
}

void fail(AssumptionResult& r, std::span<const double> theta, double value, std::string detail) {
  if (r.passed) {
    r.passed = false;
    r.worst_theta.assign(theta.begin(), theta.end());
    r.worst_value = value;
    r.detail = std::move(detail);
  }
}

// Pointwise checks shared by check_assumptions and check_assumptions_at.
void check_point(const StateSpaceMatrices& m, std::span<const double> theta, double Delta,
                 AssumptionReport& report, double& worst_re, double& worst_im) {
  auto& c1 = result_for(report, "C1");
  auto& c2 = result_for(report, "C2");
  auto& c4 = result_for(report, "C4");
  auto& c5 = result_for(report, "C5");
  auto& c7 = result_for(report, "C7");
  if (!(m.sigma > 0.0)) fail(c1, theta, m.sigma, "Sigma_theta must be > 0");
  const Eigen::VectorXcd eig = m.A.eigenvalues();
  double max_re = -std::numeric_limits<double>::infinity();
  double max_im = 0.0;
  for (Eigen::Index k = 0; k < eig.size(); ++k) {
    max_re = std::max(max_re, eig(k).real());
    max_im = std::max(max_im, std::abs(eig(k).imag()));
  }
  if (max_re > worst_re) {
    worst_re = max_re;
    if (c2.passed) {
      c2.worst_theta.assign(theta.begin(), theta.end());
      c2.worst_value = max_re;
    }
  }
  if (!(max_re < 0.0)) fail(c2, theta, max_re, "eigenvalue of A with nonnegative real part");
  if (max_im > worst_im) {
    worst_im = max_im;
    if (c7.passed) {
      c7.worst_theta.assign(theta.begin(), theta.end());
      c7.worst_value = max_im;
    }
  }
  if (!(max_im < std::numbers::pi / Delta)) fail(c7, theta, max_im, "|Im(lambda)| >= pi/Delta");
  if (m.B.norm() == 0.0 || !m.B.allFinite()) fail(c4, theta, 0.0, "B_theta vanishes");
  const int p = m.dim();
  const int rc = numerical_rank(controllability_matrix(m));
  const int ro = numerical_rank(observability_matrix(m));
  if (rc < p) fail(c5, theta, rc, "controllability matrix rank " + std::to_string(rc) + " < p");
  if (ro < p) fail(c5, theta, ro, "observability matrix rank " + std::to_string(ro) + " < p");
}

}  // namespace

StateSpaceMatrices ExampleFamily::raw_matrices(std::span<const double> theta) {
  const double t1 = theta[0], t2 = theta[1];
  StateSpaceMatrices m;
  m.A = Eigen::MatrixXd::Zero(2, 2);
  m.A(0, 0) = t1;
  m.A(1, 1) = t2;
  m.B = Eigen::VectorXd(2);
  m.B << 1.0 / (t2 - t1), -1.0 / (t2 - t1);
  m.C = Eigen::VectorXd(2);
  m.C << -t1 * (1.0 + t2), -t2 * (1.0 + t1);
  m.sigma = theta[2];
  return m;
}

StateSpaceMatrices ExampleFamily::matrices(std::span<const double> theta) const {
  if (theta.size() != 3) throw ParameterError("example2d: theta must have 3 components");
  const double t1 = theta[0], t2 = theta[1], t3 = theta[2];
  if (!std::isfinite(t1) || !std::isfinite(t2) || !std::isfinite(t3))
    throw ParameterError("example2d: theta must be finite");
  if (!(t1 < 0.0 && t2 < 0.0))
    throw ParameterError("example2d: requires theta1 < 0 and theta2 < 0 at " + format_theta(theta));
  if (t1 == t2) throw ParameterError("example2d: requires theta1 != theta2 at " + format_theta(theta));
  if (t1 == -1.0 || t2 == -1.0)
    throw ParameterError("example2d: theta1, theta2 == -1 makes the realization non-minimal at " +
                         format_theta(theta));
  if (!(t3 > 0.0)) throw ParameterError("example2d: requires theta3 > 0 at " + format_theta(theta));
  return raw_matrices(theta);
}

Box ExampleFamily::default_box() const { return {{-0.7, -3.5, 0.05}, {-0.3, -2.5, 1.0}}; }

StateSpaceMatrices Car1Family::matrices(std::span<const double> theta) const {
  if (theta.size() != 2) throw ParameterError("car1: theta must have 2 components");
  if (!(theta[0] > 0.0)) throw ParameterError("car1: requires theta1 > 0 (mean reversion rate)");
  if (!(theta[1] > 0.0)) throw ParameterError("car1: requires theta2 > 0 (noise variance)");
  StateSpaceMatrices m;
  m.A = Eigen::MatrixXd::Constant(1, 1, -theta[0]);
  m.B = Eigen::VectorXd::Ones(1);
  m.C = Eigen::VectorXd::Ones(1);
  m.sigma = theta[1];
  return m;
}

Box Car1Family::default_box() const { return {{0.05, 0.01}, {5.0, 5.0}}; }

std::unique_ptr<ModelFamily> make_family(std::string_view name) {
  if (name == "example2d") return std::make_unique<ExampleFamily>();
  if (name == "car1") return std::make_unique<Car1Family>();
  throw ConfigError("unknown model family '" + std::string(name) + "'");
}

StateSpaceMatrices example_family(std::span<const double> theta) {
  return ExampleFamily{}.matrices(theta);
}

Eigen::MatrixXd sampled_noise_cov(const Eigen::MatrixXd& A, const Eigen::VectorXd& C, double sigma,
                                  double Delta) {
  if (!(Delta >= 0.0)) throw DomainError("sampled_noise_cov: Delta must be >= 0");
  const Eigen::Index p = A.rows();
  if (Delta == 0.0) return Eigen::MatrixXd::Zero(p, p);
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(2 * p, 2 * p);
  block.topLeftCorner(p, p) = A;
  block.topRightCorner(p, p) = sigma * C * C.transpose();
  block.bottomRightCorner(p, p) = -A.transpose();
  const Eigen::MatrixXd E = matrix_exp(block, Delta);
  // Upper-right block is int_0^Delta e^{A(Delta-s)} G e^{-A's} ds; right-multiplying by
  // e^{A' Delta} = (upper-left)' turns it into int_0^Delta e^{A r} G e^{A' r} dr.
  Eigen::MatrixXd Q = E.topRightCorner(p, p) * E.topLeftCorner(p, p).transpose();
  return 0.5 * (Q + Q.transpose());
}

SampledModel sample_model(const StateSpaceMatrices& m, double Delta) {
  SampledModel sm;
  sm.Phi = matrix_exp(m.A, Delta);
  sm.Qn = sampled_noise_cov(m.A, m.C, m.sigma, Delta);
  sm.B = m.B;
  sm.Delta = Delta;
  return sm;
}

Eigen::MatrixXd stationary_state_cov(const StateSpaceMatrices& m) {
  const int p = m.dim();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(p, p);
  Eigen::MatrixXd kron = Eigen::MatrixXd::Zero(p * p, p * p);
  // vec(A Pi + Pi A') = (I kron A + A kron I) vec(Pi), column-major vec.
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      kron.block(i * p, j * p, p, p) += I(i, j) * m.A;
      kron.block(i * p, j * p, p, p) += m.A(i, j) * I;
    }
  const Eigen::MatrixXd rhs_m = -m.sigma * m.C * m.C.transpose();
  const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(rhs_m.data(), p * p);
  const Eigen::VectorXd vec = kron.partialPivLu().solve(rhs);
  Eigen::MatrixXd Pi = Eigen::Map<const Eigen::MatrixXd>(vec.data(), p, p);
  return 0.5 * (Pi + Pi.transpose());
}

double autocovariance_sampled(const StateSpaceMatrices& m, double Delta, int h) {
  if (h < 0) h = -h;
  const Eigen::MatrixXd Pi = stationary_state_cov(m);
  return m.B.dot(matrix_exp(m.A, Delta * h) * Pi * m.B);
}

double spectral_density_sampled(const SampledModel& sm, double omega) {
  const Eigen::Index p = sm.Phi.rows();
  const Complex z = std::polar(1.0, omega);
  const Eigen::VectorXcd eig = sm.Phi.eigenvalues();
  for (Eigen::Index k = 0; k < eig.size(); ++k)
    if (std::abs(z - eig(k)) < 1e-12)
      throw NumericError("spectral_density_sampled: resolvent is singular at omega");
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(p, p);
  const Eigen::MatrixXcd Phi = sm.Phi.cast<Complex>();
  const Eigen::VectorXcd B = sm.B.cast<Complex>();
  // Left factor B'(zI - Phi)^{-1} as a row vector; right factor (conj(z) I - Phi')^{-1} B.
  const Eigen::RowVectorXcd left =
      (z * I - Phi).transpose().partialPivLu().solve(B).transpose();
  const Eigen::VectorXcd right = (std::conj(z) * I - Phi.transpose()).partialPivLu().solve(B);
  const Complex value = left * sm.Qn.cast<Complex>() * right;
  return std::max(0.0, value.real()) / kTwoPi;
}

double spectral_density_sampled(const ModelFamily& family, std::span<const double> theta,
                                double omega, double Delta) {
  return spectral_density_sampled(sample_model(family.matrices(theta), Delta), omega);
}

double spectral_density_continuous(const StateSpaceMatrices& m, double omega) {
  const Eigen::Index p = m.A.rows();
  const Complex s(0.0, omega);
  const Eigen::VectorXcd eig = m.A.eigenvalues();
  for (Eigen::Index k = 0; k < eig.size(); ++k)
    if (std::abs(s - eig(k)) < 1e-12)
      throw NumericError("spectral_density_continuous: i*omega is an eigenvalue of A");
  const Eigen::MatrixXcd resolvent = s * Eigen::MatrixXcd::Identity(p, p) - m.A.cast<Complex>();
  const Complex H = m.B.cast<Complex>().dot(resolvent.partialPivLu().solve(m.C.cast<Complex>()));
  // Eigen's dot conjugates the first argument; B is real so H = B' (sI - A)^{-1} C.
  return std::norm(H) * m.sigma / kTwoPi;
}

double spectral_density_continuous(const ModelFamily& family, std::span<const double> theta,
                                   double omega) {
  return spectral_density_continuous(family.matrices(theta), omega);
}

SampledSpectrum::SampledSpectrum(const SampledModel& sm) {
  p_ = static_cast<int>(sm.Phi.rows());
  if (p_ < 1 || p_ > kMaxStateDim) throw DomainError("SampledSpectrum: unsupported state dimension");
  const StateMatrix M = sm.Phi.transpose();
  const StateMatrix I = StateMatrix::Identity(p_, p_);
  // Faddeev-LeVerrier: adj(zI - M) = sum_{k=1}^p M_k z^{p-k}, det(zI - M) = sum_k chi_k z^k.
  characteristic_[p_] = 1.0;
  StateMatrix Mk = StateMatrix::Zero(p_, p_);
  StateVector adjB[kMaxStateDim];
  for (int k = 1; k <= p_; ++k) {
    Mk = M * Mk + characteristic_[p_ - k + 1] * I;
    adjB[p_ - k] = Mk * sm.B;
    const StateMatrix MMk = M * Mk;
    characteristic_[p_ - k] = -MMk.trace() / k;
  }
  const StateMatrix Q = sm.Qn;
  for (int h = 0; h < p_; ++h) {
    double c = 0.0;
    for (int l = 0; l + h < p_; ++l) c += adjB[l + h].dot(Q * adjB[l]);
    numerator_[h] = c;
  }
}

double SampledSpectrum::evaluate(std::span<const double> cos_k, std::span<const double> sin_k) const {
  double num = numerator_[0];
  for (int h = 1; h < p_; ++h) num += 2.0 * numerator_[h] * cos_k[h];
  double re = 0.0, im = 0.0;
  for (int k = 0; k <= p_; ++k) {
    re += characteristic_[k] * cos_k[k];
    im += characteristic_[k] * sin_k[k];
  }
  return num / ((re * re + im * im) * kTwoPi);
}

double SampledSpectrum::operator()(double omega) const {
  double c[kMaxStateDim + 1], s[kMaxStateDim + 1];
  for (int k = 0; k <= p_; ++k) {
    c[k] = std::cos(k * omega);
    s[k] = std::sin(k * omega);
  }
  return evaluate({c, static_cast<std::size_t>(p_ + 1)}, {s, static_cast<std::size_t>(p_ + 1)});
}

bool AssumptionReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

const AssumptionResult& AssumptionReport::get(std::string_view id) const {
  for (const auto& r : results)
    if (r.id == id) return r;
  throw ConfigError("assumption report has no entry '" + std::string(id) + "'");
}

AssumptionReport check_assumptions(const ModelFamily& family, const Box& box, double Delta,
                                   int grid_density) {
  AssumptionReport report;
  for (const char* id : {"C1", "C2", "C3", "C4", "C5", "C6", "C7"}) result_for(report, id);
  try {
    box.validate();
  } catch (const ConfigError& e) {
    fail(result_for(report, "C3"), {}, 0.0, e.what());
    return report;
  }
  if (box.dim() != static_cast<std::size_t>(family.param_dim()))
    throw ConfigError("check_assumptions: box dimension does not match the family");
  double worst_re = -std::numeric_limits<double>::infinity(), worst_im = 0.0;
  constexpr int kFrequencies = 32;
  std::vector<std::vector<double>> points = box_grid(box, std::max(1, grid_density));
  std::vector<std::vector<double>> spectra;
  std::vector<const std::vector<double>*> spectra_theta;
  auto& c4 = result_for(report, "C4");
  for (const auto& theta : points) {
    StateSpaceMatrices m;
    try {
      m = family.matrices(theta);
    } catch (const ParameterError& e) {
      fail(c4, theta, 0.0, std::string("coefficient maps undefined: ") + e.what());
      continue;
    }
    check_point(m, theta, Delta, report, worst_re, worst_im);
    // Continuity spot check: difference quotients at eps and eps/2 must agree.
    for (std::size_t k = 0; k < theta.size(); ++k) {
      const double eps = 1e-6 * std::max(1.0, std::abs(theta[k]));
      const double sign = theta[k] + eps <= box.hi[k] ? 1.0 : -1.0;
      auto shifted = theta;
      try {
        shifted[k] = theta[k] + sign * eps;
        const double d1 = matrices_distance(family.matrices(shifted), m) / eps;
        shifted[k] = theta[k] + sign * eps / 2;
        const double d2 = matrices_distance(family.matrices(shifted), m) / (eps / 2);
        if (!std::isfinite(d1) || std::abs(d1 - d2) > 1e-3 * (1.0 + d1))
          fail(c4, theta, d1, "coefficient maps not continuously differentiable");
      } catch (const ParameterError&) {
        fail(c4, theta, 0.0, "coefficient maps undefined next to grid point");
      }
    }
    // Sampled spectral density on a coarse frequency grid for C6.
    try {
      const SampledModel sm = sample_model(m, Delta);
      std::vector<double> f(kFrequencies);
      for (int j = 0; j < kFrequencies; ++j)
        f[j] = spectral_density_sampled(sm, std::numbers::pi * (j + 0.5) / kFrequencies);
      spectra.push_back(std::move(f));
      spectra_theta.push_back(&theta);
    } catch (const NumericError&) {
    }
  }
  auto& c6 = result_for(report, "C6");
  for (std::size_t a = 0; a < spectra.size() && c6.passed; ++a)
    for (std::size_t b = a + 1; b < spectra.size(); ++b) {
      double diff = 0.0;
      for (int j = 0; j < kFrequencies; ++j) {
        const double scale = std::max({spectra[a][j], spectra[b][j], 1e-300});
        diff = std::max(diff, std::abs(spectra[a][j] - spectra[b][j]) / scale);
      }
      if (diff < 1e-8) {
        fail(c6, *spectra_theta[a], diff,
             "coincident spectral densities at " + format_theta(*spectra_theta[a]) + " and " +
                 format_theta(*spectra_theta[b]));
        break;
      }
    }
  return report;
}

AssumptionReport check_assumptions_at(const ModelFamily& family, std::span<const double> theta,
                                      double Delta) {
  AssumptionReport report;
  for (const char* id : {"C1", "C2", "C4", "C5", "C7"}) result_for(report, id);
  StateSpaceMatrices m;
  try {
    m = family.matrices(theta);
  } catch (const ParameterError& e) {
    fail(result_for(report, "C4"), theta, 0.0, e.what());
    return report;
  }
  double worst_re = -std::numeric_limits<double>::infinity(), worst_im = 0.0;
  check_point(m, theta, Delta, report, worst_re, worst_im);
  return report;
}

}  // namespace locstat
