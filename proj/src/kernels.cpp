#include "locstat/kernels.hpp"

#include <cmath>

#include "locstat/errors.hpp"

namespace locstat {

KernelKind parse_kernel(std::string_view text) {
  if (text == "rect" || text == "rectangular") return KernelKind::Rectangular;
  if (text == "epan" || text == "epanechnikov") return KernelKind::Epanechnikov;
  throw ConfigError("unknown kernel '" + std::string(text) + "' (expected rect or epan)");
}

std::string to_string(KernelKind kind) {
  return kind == KernelKind::Rectangular ? "rect" : "epan";
}

double kernel_eval(KernelKind kind, double x) {
  if (!std::isfinite(x)) throw DomainError("kernel_eval: argument must be finite");
  const double ax = std::abs(x);
  if (ax > 1.0) return 0.0;
  switch (kind) {
    case KernelKind::Rectangular:
      return 0.5;
    case KernelKind::Epanechnikov:
      return 0.75 * (1.0 - ax * ax);
  }
  return 0.0;
}

std::vector<double> kernel_weights(KernelKind kind, const SamplingGrid& grid) {
  const int m = grid.m();
  if (m < 1) throw ConfigError("kernel_weights: grid has m_N < 1");
  const double scale = grid.delta / grid.bandwidth;
  std::vector<double> w(2 * static_cast<std::size_t>(m) + 1);
  for (int i = -m; i <= m; ++i) w[i + m] = scale * kernel_eval(kind, i * scale);
  return w;
}

void check_localizing_kernel(const std::function<double(double)>& kernel, double tolerance) {
  constexpr int kProbe = 2000;
  for (int k = 1; k <= kProbe; ++k) {
    const double x = 1.0 + 4.0 * k / kProbe;
    if (kernel(x) != 0.0 || kernel(-x) != 0.0)
      throw KernelError("kernel is nonzero outside [-1, 1]");
  }
  // Composite Simpson on [-1, 1].
  constexpr int kIntervals = 200000;
  const double h = 2.0 / kIntervals;
  double sum = 0.0;
  for (int k = 0; k <= kIntervals; ++k) {
    const double x = -1.0 + k * h;
    const double v = kernel(x);
    if (!std::isfinite(v) || v < 0.0) throw KernelError("kernel is negative or non-finite on [-1, 1]");
    const double coef = (k == 0 || k == kIntervals) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    sum += coef * v;
  }
  const double integral = sum * h / 3.0;
  if (std::abs(integral - 1.0) > tolerance)
    throw KernelError("kernel does not integrate to one over [-1, 1]");
}

}  // namespace locstat
