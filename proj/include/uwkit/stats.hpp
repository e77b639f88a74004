#pragma once

#include <span>

namespace uwkit {

/// Linear-interpolated percentile (pct in [0,100]) of an unsorted sample.
double percentile(std::span<const double> values, double pct);
double mean(std::span<const double> values);
/// Population variance.
double variance(std::span<const double> values);

}  // namespace uwkit
