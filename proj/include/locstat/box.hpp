#pragma once

#include <span>
#include <vector>

namespace locstat {

/// Axis-aligned compact parameter box.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  std::size_t dim() const { return lo.size(); }
  bool contains(std::span<const double> x) const;
  /// Throws ConfigError unless lo <= hi componentwise and all bounds are finite.
  void validate() const;
};

}  // namespace locstat
