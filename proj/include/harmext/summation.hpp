#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace harmext {

// Pairwise (cascade) summation with a fixed split rule, so the result only
// depends on the input order and never on how callers partition the work.

double pairwise_sum(std::span<const double> values);
std::complex<double> pairwise_sum(std::span<const std::complex<double>> values);

} // namespace harmext
