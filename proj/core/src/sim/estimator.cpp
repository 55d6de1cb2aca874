#include "syncmmse/sim/estimator.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "syncmmse/cyclic_spectrum.hpp"
#include "syncmmse/errors.hpp"
#include "syncmmse/sim/fft.hpp"

namespace syncmmse {

namespace {

struct Accumulator {
  std::vector<std::complex<double>> sum;
  std::vector<double> sum_sq;  // sum of |v|^2 per bin
};

}  // namespace

static std::vector<CrossDensityEstimate> cross_densities(
    const std::vector<std::complex<double>>& x, std::size_t n_fft,
    const std::vector<long>& alpha_bins) {
  if (n_fft == 0) throw std::invalid_argument("cyclic estimator: n_fft must be positive");
  const std::size_t hop = n_fft / 2;  // 50% overlap
  const std::size_t n_segments = (x.size() >= n_fft) ? (x.size() - n_fft) / hop + 1 : 0;
  if (n_segments < 8) {
    throw InsufficientData("cyclic estimator: fewer than 8 segments");
  }

  // Periodic Hann window; the estimate is normalized by sum(w^2) so the
  // zero-offset slice is an unbiased PSD estimate.
  std::vector<double> window(n_fft);
  double wss = 0.0;
  for (std::size_t i = 0; i < n_fft; ++i) {
    window[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                      static_cast<double>(n_fft)));
    wss += window[i] * window[i];
  }

  std::vector<Accumulator> acc(alpha_bins.size());
  for (Accumulator& a : acc) {
    a.sum.assign(n_fft, {0.0, 0.0});
    a.sum_sq.assign(n_fft, 0.0);
  }

  Fft fft(n_fft);
  std::vector<std::complex<double>> segment(n_fft);
  for (std::size_t s = 0; s < n_segments; ++s) {
    const std::size_t start = s * hop;
    for (std::size_t i = 0; i < n_fft; ++i) segment[i] = window[i] * x[start + i];
    fft.forward(segment.data());

    for (std::size_t a = 0; a < alpha_bins.size(); ++a) {
      const long off = alpha_bins[a];
      // Derotate by the segment start so cyclic phases add coherently.
      const double phase = -2.0 * std::numbers::pi * static_cast<double>(off) *
                           static_cast<double>(start) / static_cast<double>(n_fft);
      const std::complex<double> derot(std::cos(phase), std::sin(phase));
      for (std::size_t m = 0; m < n_fft; ++m) {
        const long lagged =
            ((static_cast<long>(m) - off) % static_cast<long>(n_fft) +
             static_cast<long>(n_fft)) % static_cast<long>(n_fft);
        const std::complex<double> v =
            segment[m] * std::conj(segment[static_cast<std::size_t>(lagged)]) * derot / wss;
        acc[a].sum[m] += v;
        acc[a].sum_sq[m] += std::norm(v);
      }
    }
  }

  std::vector<CrossDensityEstimate> out(alpha_bins.size());
  const double n = static_cast<double>(n_segments);
  for (std::size_t a = 0; a < alpha_bins.size(); ++a) {
    out[a].n_fft = n_fft;
    out[a].n_segments = n_segments;
    out[a].alpha_bin = alpha_bins[a];
    out[a].values.resize(n_fft);
    out[a].std_error.resize(n_fft);
    for (std::size_t m = 0; m < n_fft; ++m) {
      const std::complex<double> mean = acc[a].sum[m] / n;
      out[a].values[m] = mean;
      const double variance =
          std::max(acc[a].sum_sq[m] - n * std::norm(mean), 0.0) / (n - 1.0);
      out[a].std_error[m] = std::sqrt(variance / n);
    }
  }
  return out;
}

CrossDensityEstimate cyclic_cross_density(const std::vector<std::complex<double>>& x,
                                          std::size_t n_fft, long alpha_bin) {
  return cross_densities(x, n_fft, {alpha_bin}).front();
}

CyclicSpectrumEstimate estimate_cyclic_spectrum(const std::vector<std::complex<double>>& x,
                                                int period, std::size_t n_fft) {
  if (period < 1 || n_fft % static_cast<std::size_t>(period) != 0) {
    throw std::invalid_argument("estimate_cyclic_spectrum: n_fft must be a multiple of P");
  }
  std::vector<long> offsets;
  offsets.reserve(static_cast<std::size_t>(period));
  for (int k = 0; k < period; ++k) {
    offsets.push_back(static_cast<long>(n_fft / static_cast<std::size_t>(period)) * k);
  }
  CyclicSpectrumEstimate out;
  out.period = period;
  out.n_fft = n_fft;
  out.ridges = cross_densities(x, n_fft, offsets);
  out.n_segments = out.ridges.front().n_segments;
  return out;
}

double timeshift_spectrum_check(const CyclicSpectrumModel& model, long n0,
                                const FrequencyGrid& grid) {
  const int period = grid.period();
  Eigen::VectorXcd phases(period);
  for (int q = 0; q < period; ++q) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(n0) * q / period;
    phases[q] = std::complex<double>(std::cos(angle), std::sin(angle));
  }
  double worst = 0.0;
  for (int i = 0; i < grid.points_per_subband(); ++i) {
    const CyclicPsdMatrix matrix = assemble_cyclic_psd_matrix(model, grid.sigma_node(i));
    const Eigen::MatrixXcd shifted =
        phases.asDiagonal() * matrix.entries * phases.conjugate().asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> base(matrix.entries,
                                                         Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> moved(shifted, Eigen::EigenvaluesOnly);
    if (base.info() != Eigen::Success || moved.info() != Eigen::Success) {
      throw EigensolveFailure("timeshift_spectrum_check: eigensolver did not converge");
    }
    worst = std::max(worst,
                     (base.eigenvalues() - moved.eigenvalues()).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace syncmmse
