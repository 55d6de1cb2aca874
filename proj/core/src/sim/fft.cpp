#include "syncmmse/sim/fft.hpp"

#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace syncmmse {

Fft::Fft(std::size_t n) : n_(n), fwd_(nullptr), inv_(nullptr) {
  if (n == 0) throw std::invalid_argument("Fft: size must be positive");
  // Plan on a scratch buffer with FFTW_UNALIGNED so the plans can execute
  // in place on any caller array.
  std::vector<std::complex<double>> scratch(n);
  auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
  fwd_ = fftw_plan_dft_1d(static_cast<int>(n), ptr, ptr, FFTW_FORWARD,
                          FFTW_ESTIMATE | FFTW_UNALIGNED);
  inv_ = fftw_plan_dft_1d(static_cast<int>(n), ptr, ptr, FFTW_BACKWARD,
                          FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (fwd_ == nullptr || inv_ == nullptr) {
    throw std::runtime_error("Fft: fftw plan creation failed");
  }
}

Fft::~Fft() {
  if (fwd_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  if (inv_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(inv_));
}

void Fft::forward(std::complex<double>* inout) const {
  auto* ptr = reinterpret_cast<fftw_complex*>(inout);
  fftw_execute_dft(static_cast<fftw_plan>(fwd_), ptr, ptr);
}

void Fft::inverse(std::complex<double>* inout) const {
  auto* ptr = reinterpret_cast<fftw_complex*>(inout);
  fftw_execute_dft(static_cast<fftw_plan>(inv_), ptr, ptr);
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) inout[i] *= scale;
}

}  // namespace syncmmse
