#include "locstat/curves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "locstat/errors.hpp"

namespace locstat {

CoefficientCurve CoefficientCurve::builtin(std::string_view name) {
  const std::string n(name);
  if (n == "a1") return {n, Builtin::A1};
  if (n == "a2") return {n, Builtin::A2};
  if (n == "a3") return {n, Builtin::A3};
  if (n == "theta1") return {n, Builtin::Theta1};
  if (n == "theta2") return {n, Builtin::Theta2};
  if (n == "theta3_gauss") return {n, 0.2};
  if (n == "theta3_nig") return {n, 9.0 * std::sqrt(2.0) / 16.0};
  throw ConfigError("unknown coefficient curve '" + n + "'");
}

CoefficientCurve CoefficientCurve::constant(double value) {
  std::ostringstream os;
  os.precision(17);
  os << "const(" << value << ")";
  return {os.str(), value};
}

CoefficientCurve CoefficientCurve::piecewise_linear(Knots knots) {
  if (knots.empty()) throw ParameterError("piecewise-linear curve needs at least one knot");
  for (std::size_t k = 1; k < knots.size(); ++k)
    if (!(knots[k].first > knots[k - 1].first))
      throw ParameterError("piecewise-linear knots must be strictly increasing in t");
  return {"piecewise", std::move(knots)};
}

double CoefficientCurve::operator()(double t) const {
  if (const auto* b = std::get_if<Builtin>(&repr_)) {
    switch (*b) {
      case Builtin::A1:
        return 0.1 + 0.5 * std::abs(std::cos(t / 500.0));
      case Builtin::A2:
        return 1.0 + 0.1 * std::sin(t / 150.0);
      case Builtin::A3:
        return 0.5 - t / 5000.0;
      case Builtin::Theta1:
        return -0.5 + 0.1 * std::abs(std::sin(t / 500.0));
      case Builtin::Theta2:
        return -3.0 - 0.2 * std::abs(std::cos(t / 500.0));
    }
  }
  if (const auto* c = std::get_if<double>(&repr_)) return *c;
  const auto& knots = std::get<Knots>(repr_);
  if (t <= knots.front().first) return knots.front().second;
  if (t >= knots.back().first) return knots.back().second;
  const auto hi = std::upper_bound(knots.begin(), knots.end(), t,
                                   [](double x, const auto& k) { return x < k.first; });
  const auto lo = hi - 1;
  const double w = (t - lo->first) / (hi->first - lo->first);
  return lo->second + w * (hi->second - lo->second);
}

double CoefficientCurve::min_over(double t0, double t1, int samples) const {
  double best = (*this)(t0);
  for (int k = 1; k < samples; ++k) best = std::min(best, (*this)(t0 + (t1 - t0) * k / (samples - 1)));
  return best;
}

std::vector<double> ParameterCurve::operator()(double t) const {
  std::vector<double> out;
  out.reserve(components.size());
  for (const auto& c : components) out.push_back(c(t));
  return out;
}

ParameterCurve ParameterCurve::example_time_varying(bool nig) {
  return {{CoefficientCurve::builtin("theta1"), CoefficientCurve::builtin("theta2"),
           CoefficientCurve::builtin(nig ? "theta3_nig" : "theta3_gauss")}};
}

ParameterCurve ParameterCurve::constant(std::vector<double> values) {
  ParameterCurve c;
  for (double v : values) c.components.push_back(CoefficientCurve::constant(v));
  return c;
}

}  // namespace locstat
