// Averaged cyclic periodogram: Hann-windowed segments at 50% overlap,
// correlated at frequency offsets k/P (or arbitrary bin offsets). Estimates
// the cyclic spectrum of a record for closing the loop against the model.
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "syncmmse/sim/realization.hpp"

namespace syncmmse {

// Estimate at one cycle-frequency offset, per FFT bin, with a standard
// error for the averaged value derived from the segment scatter.
struct CrossDensityEstimate {
  std::size_t n_fft = 0;
  std::size_t n_segments = 0;
  long alpha_bin = 0;
  std::vector<std::complex<double>> values;
  std::vector<double> std_error;
};

struct CyclicSpectrumEstimate {
  int period = 0;
  std::size_t n_fft = 0;
  std::size_t n_segments = 0;
  const char* window = "hann";
  double overlap = 0.5;
  // ridges[k], k = 0..P-1, at bin offset k*n_fft/P.
  std::vector<CrossDensityEstimate> ridges;
};

// Average over segments of Y(f) conj(Y(f - alpha)) / sum(w^2), with Y the
// windowed segment spectrum and alpha = alpha_bin/n_fft. Each segment is
// derotated by e^{-j*2*pi*alpha*s} for its start offset s so segment phases
// add coherently at cyclic frequencies. Throws InsufficientData with fewer
// than 8 segments.
CrossDensityEstimate cyclic_cross_density(const std::vector<std::complex<double>>& x,
                                          std::size_t n_fft, long alpha_bin);

// All P ridges at offsets k*n_fft/P; n_fft must be a multiple of period.
CyclicSpectrumEstimate estimate_cyclic_spectrum(const std::vector<std::complex<double>>& x,
                                                int period, std::size_t n_fft);

// Max over sigma nodes of the eigenvalue change under the diagonal phase
// matrix D = diag(e^{j*2*pi*n0*q/P}): verifies that a time shift leaves the
// KL spectrum untouched at matrix level.
double timeshift_spectrum_check(const CyclicSpectrumModel& model, long n0,
                                const FrequencyGrid& grid);

}  // namespace syncmmse
