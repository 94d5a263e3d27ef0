#include "harmext/summation.hpp"

namespace harmext {

namespace {

constexpr std::size_t kLeafSize = 32;

template <class T> T pairwise(std::span<const T> values) {
  if (values.size() <= kLeafSize) {
    T acc{};
    for (const T &v : values) {
      acc += v;
    }
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise(values.first(half)) + pairwise(values.subspan(half));
}

} // namespace

double pairwise_sum(std::span<const double> values) {
  return pairwise(values);
}

std::complex<double>
pairwise_sum(std::span<const std::complex<double>> values) {
  return pairwise(values);
}

} // namespace harmext
