// Cyclic-spectrum model interface, cyclic PSD matrix assembly and
// validation, and midpoint quadrature over the cyclic sub-band.
#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "syncmmse/errors.hpp"
#include "syncmmse/frequency_grid.hpp"

namespace syncmmse {

// Analytic description of a cyclostationary process with period P: the
// cyclic spectrum value at cycle index k and frequency f (cycles/sample).
//
// The cycle index is signed and is never reduced modulo P. Implementations
// must satisfy the conjugate-pair symmetry
//     cyclic_value(-k, f) == conj(cyclic_value(k, f + k/P))
// and cyclic_value(0, f) must be real and nonnegative (it is the PSD).
class CyclicSpectrumModel {
 public:
  virtual ~CyclicSpectrumModel() = default;

  virtual int period() const = 0;
  virtual std::complex<double> cyclic_value(int cycle_index, double frequency) const = 0;

  // Declared average power of the process.
  virtual double signal_power() const = 0;
};

// P x P cyclic PSD matrix at one sub-band frequency sigma.
// Entry (r,c) = cyclic_value(r - c, sigma + r/P), r,c = 0..P-1.
struct CyclicPsdMatrix {
  double sigma = 0.0;
  Eigen::MatrixXcd entries;
};

struct PsdDiagnostics {
  double hermitian_residual = 0.0;  // max |A - A^H| relative to max |A|
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

// Relative tolerance for the Hermitian symmetry of assembled matrices.
inline constexpr double kHermitianTolerance = 1e-12;
// Relative tolerance for eigenvalue nonnegativity of assembled matrices.
inline constexpr double kPsdTolerance = 1e-10;

// Builds the cyclic PSD matrix at sigma in [0, 1/P). Throws ModelInconsistent
// if the result is not Hermitian within kHermitianTolerance (a bad
// cyclic_value implementation).
CyclicPsdMatrix assemble_cyclic_psd_matrix(const CyclicSpectrumModel& model, double sigma);

// Spectral correlation density S_X(alpha, f): the weight of the delta ridge
// at cycle frequency alpha = k/P. Zero off-ridge.
std::complex<double> spectral_correlation(const CyclicSpectrumModel& model, double alpha,
                                          double frequency);

// Diagnostic only; never throws.
PsdDiagnostics validate_psd(const CyclicPsdMatrix& matrix);

// Midpoint-rule integral of `integrand` over the sub-band [0, 1/P):
// sum_i integrand(sigma_i) / (P*M). Throws NonFiniteIntegrand if the
// integrand is NaN or infinite at a node.
double integrate_subband(const std::function<double(double)>& integrand,
                         const FrequencyGrid& grid);

// Midpoint-rule integral over the full band [0, 1) on the P*M lambda nodes.
double integrate_full_band(const std::function<double(double)>& integrand,
                           const FrequencyGrid& grid);

}  // namespace syncmmse
