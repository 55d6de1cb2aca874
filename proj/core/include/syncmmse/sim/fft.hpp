// Thin RAII wrapper around FFTW double-precision complex transforms.
#pragma once

#include <complex>
#include <cstddef>

namespace syncmmse {

class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();

  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const { return n_; }

  // In-place, unnormalized forward transform.
  void forward(std::complex<double>* inout) const;
  // In-place inverse transform, scaled by 1/n.
  void inverse(std::complex<double>* inout) const;

 private:
  std::size_t n_;
  void* fwd_;
  void* inv_;
};

}  // namespace syncmmse
