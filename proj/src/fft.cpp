#include "harmext/fft.hpp"

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include <fftw3.h>

namespace harmext::fft {

namespace {

struct Buffer {
  fftw_complex *data = nullptr;
  explicit Buffer(std::size_t n)
      : data(static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (data == nullptr) {
      throw std::bad_alloc();
    }
  }
  ~Buffer() { fftw_free(data); }
  Buffer(const Buffer &) = delete;
  Buffer &operator=(const Buffer &) = delete;
};

struct PlanCache {
  std::mutex mutex;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans;

  ~PlanCache() {
    for (auto &[key, plan] : plans) {
      fftw_destroy_plan(plan);
    }
  }

  // The plan is created against scratch buffers and executed later with
  // fftw_execute_dft on fftw_malloc'd arrays, which share its alignment.
  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex);
    auto key = std::make_pair(n, sign);
    if (auto it = plans.find(key); it != plans.end()) {
      return it->second;
    }
    Buffer in(n);
    Buffer out(n);
    fftw_plan plan =
        fftw_plan_dft_1d(static_cast<int>(n), in.data, out.data,
                         sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                         FFTW_ESTIMATE);
    plans.emplace(key, plan);
    return plan;
  }
};

PlanCache &cache() {
  static PlanCache instance;
  return instance;
}

} // namespace

std::vector<std::complex<double>>
transform(std::span<const std::complex<double>> in, int sign) {
  const std::size_t n = in.size();
  if (n == 0) {
    return {};
  }
  fftw_plan plan = cache().get(n, sign);
  Buffer src(n);
  Buffer dst(n);
  std::memcpy(src.data, in.data(), sizeof(fftw_complex) * n);
  fftw_execute_dft(plan, src.data, dst.data);
  std::vector<std::complex<double>> out(n);
  std::memcpy(static_cast<void *>(out.data()), dst.data, sizeof(fftw_complex) * n);
  return out;
}

} // namespace harmext::fft
