#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace locstat {

/// Evaluable map t -> coefficient value.
///
/// Built-ins (t in rescaled time, paths live on [0, 2000]):
///   a1(t) = 1/10 + |cos(t/500)|/2      a2(t) = 1 + sin(t/150)/10      a3(t) = 1/2 - t/5000
///   theta1(t) = -1/2 + |sin(t/500)|/10   theta2(t) = -3 - |cos(t/500)|/5
///   theta3_gauss(t) = 0.2                theta3_nig(t) = 9 sqrt(2)/16
class CoefficientCurve {
 public:
  using Knots = std::vector<std::pair<double, double>>;

  /// Throws ConfigError for an unknown name.
  static CoefficientCurve builtin(std::string_view name);
  static CoefficientCurve constant(double value);
  /// Linear interpolation between knots, flat beyond the end knots. Knots must be
  /// strictly increasing in t (ParameterError otherwise).
  static CoefficientCurve piecewise_linear(Knots knots);

  double operator()(double t) const;
  const std::string& name() const { return name_; }

  /// Minimum over `samples` equispaced points of [t0, t1].
  double min_over(double t0, double t1, int samples = 2001) const;

 private:
  enum class Builtin { A1, A2, A3, Theta1, Theta2 };
  using Repr = std::variant<Builtin, double, Knots>;

  CoefficientCurve(std::string name, Repr repr) : name_(std::move(name)), repr_(std::move(repr)) {}

  std::string name_;
  Repr repr_;
};

/// Vector-valued parameter curve t -> theta*(t), one scalar curve per component.
struct ParameterCurve {
  std::vector<CoefficientCurve> components;

  std::vector<double> operator()(double t) const;
  std::size_t dim() const { return components.size(); }

  /// (theta1, theta2, theta3) with theta3 = 0.2 (Gaussian) or 9 sqrt(2)/16 (NIG).
  static ParameterCurve example_time_varying(bool nig);
  static ParameterCurve constant(std::vector<double> values);
};

}  // namespace locstat
