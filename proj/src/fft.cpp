#include "fft.hpp"

#include <cassert>
#include <mutex>
#include <vector>

namespace starknls::detail {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::complex<double>* p) {
  return reinterpret_cast<fftw_complex*>(p);
}

}  // namespace

FftPlan::FftPlan(int dim, std::array<int, 2> points) {
  std::size_t total = static_cast<std::size_t>(points[0]);
  if (dim == 2) total *= static_cast<std::size_t>(points[1]);
  std::vector<std::complex<double>> a(total), b(total);

  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (dim == 1) {
    forward_ = fftw_plan_dft_1d(points[0], as_fftw(a.data()), as_fftw(b.data()),
                                FFTW_FORWARD, flags);
    backward_ = fftw_plan_dft_1d(points[0], as_fftw(a.data()), as_fftw(b.data()),
                                 FFTW_BACKWARD, flags);
  } else {
    forward_ = fftw_plan_dft_2d(points[0], points[1], as_fftw(a.data()),
                                as_fftw(b.data()), FFTW_FORWARD, flags);
    backward_ = fftw_plan_dft_2d(points[0], points[1], as_fftw(a.data()),
                                 as_fftw(b.data()), FFTW_BACKWARD, flags);
  }
}

FftPlan::~FftPlan() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (forward_) fftw_destroy_plan(forward_);
  if (backward_) fftw_destroy_plan(backward_);
}

void FftPlan::forward(const std::complex<double>* in, std::complex<double>* out) const {
  assert(in != out);
  fftw_execute_dft(forward_, as_fftw(const_cast<std::complex<double>*>(in)), as_fftw(out));
}

void FftPlan::backward(const std::complex<double>* in, std::complex<double>* out) const {
  assert(in != out);
  fftw_execute_dft(backward_, as_fftw(const_cast<std::complex<double>*>(in)), as_fftw(out));
}

}  // namespace starknls::detail
