#pragma once

#include <array>
#include <complex>
#include <cstddef>

#include <fftw3.h>

namespace starknls::detail {

/// FFTW plans for one grid shape. Plans use FFTW_ESTIMATE | FFTW_UNALIGNED
/// so they execute on any caller buffer; planning is serialized internally
/// (FFTW planning is not thread-safe), execution via fftw_execute_dft is.
/// Transforms are unnormalized; in and out must not alias.
class FftPlan {
 public:
  FftPlan(int dim, std::array<int, 2> points);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  void forward(const std::complex<double>* in, std::complex<double>* out) const;
  void backward(const std::complex<double>* in, std::complex<double>* out) const;

 private:
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

}  // namespace starknls::detail
