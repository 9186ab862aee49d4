#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "locstat/grid.hpp"

namespace locstat {

enum class KernelKind { Rectangular, Epanechnikov };

/// Accepts "rect"/"rectangular" and "epan"/"epanechnikov".
KernelKind parse_kernel(std::string_view text);
std::string to_string(KernelKind kind);

/// K(x): 1/2 on [-1,1] (rectangular) or 3/4 (1 - x^2) on [-1,1] (Epanechnikov); 0 outside.
/// Throws DomainError for non-finite x.
double kernel_eval(KernelKind kind, double x);

/// Localization weights w_i = (delta_N / b_N) K(i delta_N / b_N), i = -m..m, stored at index i + m.
std::vector<double> kernel_weights(KernelKind kind, const SamplingGrid& grid);

/// Numerical check that `kernel` is a localizing kernel: zero outside [-1,1],
/// nonnegative, and integrating to one within `tolerance`. Throws KernelError naming
/// the failed property.
void check_localizing_kernel(const std::function<double(double)>& kernel,
                             double tolerance = 1e-6);

}  // namespace locstat
