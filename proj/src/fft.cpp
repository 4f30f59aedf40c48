#include "ofdmrad/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace ofdmrad::fft {
namespace {

// FFTW planning mutates global state; executing a cached plan on fresh
// arrays does not. One mutex guards the plan cache, execution runs lock-free.
std::mutex g_plan_mutex;
std::map<std::pair<std::size_t, int>, fftw_plan>& plan_cache() {
  static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
  return cache;
}

fftw_plan plan_for(std::size_t n, int sign) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find({n, sign});
  if (it != cache.end()) return it->second;

  std::vector<std::complex<double>> a(n), b(n);
  fftw_plan plan = fftw_plan_dft_1d(
      static_cast<int>(n), reinterpret_cast<fftw_complex*>(a.data()),
      reinterpret_cast<fftw_complex*>(b.data()), sign,
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plan == nullptr) throw std::runtime_error("fftw: plan creation failed");
  cache.emplace(std::make_pair(n, sign), plan);
  return plan;
}

void execute(std::span<const std::complex<double>> in,
             std::span<std::complex<double>> out, int sign) {
  if (in.size() != out.size())
    throw std::invalid_argument("fft: input and output sizes differ");
  if (in.empty()) throw std::invalid_argument("fft: empty input");
  if (in.data() == out.data())
    throw std::invalid_argument("fft: in-place transform not supported");

  fftw_plan plan = plan_for(in.size(), sign);
  // fftw_execute_dft does not modify the input array for out-of-place
  // c2c plans, so the const_cast is sound.
  fftw_execute_dft(
      plan,
      const_cast<fftw_complex*>(reinterpret_cast<const fftw_complex*>(in.data())),
      reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

void forward(std::span<const std::complex<double>> in,
             std::span<std::complex<double>> out) {
  execute(in, out, FFTW_FORWARD);
}

void backward(std::span<const std::complex<double>> in,
              std::span<std::complex<double>> out) {
  execute(in, out, FFTW_BACKWARD);
}

}  // namespace ofdmrad::fft
