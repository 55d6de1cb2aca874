// Per-sigma eigendecomposition of cyclic PSD matrices (the asymptotic KL
// spectrum and basis of a cyclostationary process), full-band density
// construction, rearrangement, partial power, representation entropy and
// spectral flatness.
#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "syncmmse/cyclic_spectrum.hpp"
#include "syncmmse/frequency_grid.hpp"

namespace syncmmse {

// Eigendecomposition of one cyclic PSD matrix.
//
// eigenvalues are in descending order (KL-PSD samples, power/frequency);
// basis column p pairs with eigenvalue p. Eigenvector phases follow a fixed
// convention: the largest-magnitude component of each column is real and
// nonnegative, ties broken by lowest index.
struct KlDecomposition {
  double sigma = 0.0;
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd basis;
};

enum class SpectrumBasis { kCl, kKl, kRearranged };

// A sampled nonnegative density over the full band [0,1) on P*M midpoint
// nodes.
struct SpectrumDensity {
  FrequencyGrid grid;
  std::vector<double> values;
  SpectrumBasis basis = SpectrumBasis::kCl;
};

// Throws EigensolveFailure if the Hermitian solver does not converge and
// std::invalid_argument if the matrix is negative beyond kPsdTolerance.
// Eigenvalues within -kPsdTolerance (relative) of zero are clamped to 0.
KlDecomposition kl_decompose(const CyclicPsdMatrix& matrix);

// KL-PSD over the full band: the value at lambda = sigma_i + p/P is
// eigenvalue p (descending) of the cyclic PSD matrix at sigma_i, so the
// rank-p eigenvalue curve occupies the sub-band [p/P, (p+1)/P).
SpectrumDensity kl_psd_field(const CyclicSpectrumModel& model, const FrequencyGrid& grid);

// Conventional PSD samples S_X(lambda) = cyclic_value(0, lambda).
SpectrumDensity cl_psd_field(const CyclicSpectrumModel& model, const FrequencyGrid& grid);

// Same multiset of values, sorted descending over lambda.
SpectrumDensity decreasing_rearrangement(const SpectrumDensity& density);

// Midpoint-rule integral over [0,1).
double total_power(const SpectrumDensity& density);

// Midpoint-rule integral over [0,rho), 0 < rho < 1. Nodes with
// lambda_j < rho contribute; fractional cells are not split.
double partial_power(const SpectrumDensity& density, double rho);

// Differential entropy (nats) of the normalized density p = density/total.
// The integrand is 0 where p = 0 (x log x limit). Requires total power > 0.
double representation_entropy(const SpectrumDensity& density);

// KL spectral flatness of the composite process (model plus white noise of
// power noise_power): one-step prediction floor over total power, in [0,1].
// Returns 0 for a singular (band-limited/deterministic) spectrum.
double spectral_flatness(const CyclicSpectrumModel& model, const FrequencyGrid& grid,
                         double noise_power);

}  // namespace syncmmse
