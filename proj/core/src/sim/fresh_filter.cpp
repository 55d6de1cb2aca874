#include "syncmmse/sim/fresh_filter.hpp"

#include <stdexcept>

#include "syncmmse/errors.hpp"
#include "syncmmse/kl_transform.hpp"
#include "syncmmse/sim/fft.hpp"

namespace syncmmse {

FreshFilterBank design_cwf(const AdditiveScenario& scenario, std::size_t n_dft) {
  const int period = scenario.period();
  if (n_dft == 0 || n_dft % static_cast<std::size_t>(period) != 0) {
    throw std::invalid_argument("design_cwf: n_dft must be a positive multiple of P");
  }
  const std::size_t bins_per_subband = n_dft / static_cast<std::size_t>(period);

  FreshFilterBank bank;
  bank.period = period;
  bank.n_dft = n_dft;
  bank.branches.assign(static_cast<std::size_t>(period),
                       std::vector<std::complex<double>>(n_dft, {0.0, 0.0}));

  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(period, period);
  for (std::size_t i = 0; i < bins_per_subband; ++i) {
    const double sigma = static_cast<double>(i) / static_cast<double>(n_dft);
    const CyclicPsdMatrix sd = assemble_cyclic_psd_matrix(scenario.signal(), sigma);
    // G = (S_D + Pz I)^{-1} S_D; column p is the stacked filter for the
    // output sub-band p, and branch q picks up row (q+p) mod P.
    const Eigen::MatrixXcd gains =
        (sd.entries + scenario.noise_power() * identity).ldlt().solve(sd.entries);
    for (int p = 0; p < period; ++p) {
      const std::size_t bin = i + static_cast<std::size_t>(p) * bins_per_subband;
      for (int q = 0; q < period; ++q) {
        bank.branches[static_cast<std::size_t>(q)][bin] = gains((q + p) % period, p);
      }
    }
  }
  return bank;
}

std::vector<std::complex<double>> apply_fresh(const FreshFilterBank& bank,
                                              const std::vector<std::complex<double>>& x) {
  const std::size_t n = bank.n_dft;
  if (x.empty() || x.size() % n != 0) {
    throw LengthMismatch("apply_fresh: input length must be a multiple of n_dft");
  }
  const std::size_t bins_per_subband = n / static_cast<std::size_t>(bank.period);

  Fft fft(n);
  std::vector<std::complex<double>> out(x.size());
  std::vector<std::complex<double>> spectrum(n);
  std::vector<std::complex<double>> filtered(n);
  for (std::size_t block = 0; block < x.size() / n; ++block) {
    std::copy(x.begin() + static_cast<long>(block * n),
              x.begin() + static_cast<long>((block + 1) * n), spectrum.begin());
    fft.forward(spectrum.data());
    for (std::size_t m = 0; m < n; ++m) {
      std::complex<double> acc{0.0, 0.0};
      for (int q = 0; q < bank.period; ++q) {
        const std::size_t shifted =
            (m + static_cast<std::size_t>(q) * bins_per_subband) % n;
        acc += std::conj(bank.branches[static_cast<std::size_t>(q)][m]) * spectrum[shifted];
      }
      filtered[m] = acc;
    }
    fft.inverse(filtered.data());
    std::copy(filtered.begin(), filtered.end(), out.begin() + static_cast<long>(block * n));
  }
  return out;
}

std::vector<std::complex<double>> apply_kl_wiener(const AdditiveScenario& scenario,
                                                  const std::vector<std::complex<double>>& x) {
  const int period = scenario.period();
  const std::size_t n = x.size();
  if (n == 0 || n % static_cast<std::size_t>(period) != 0) {
    throw LengthMismatch("apply_kl_wiener: input length must be a multiple of P");
  }
  const std::size_t bins_per_subband = n / static_cast<std::size_t>(period);

  Fft fft(n);
  std::vector<std::complex<double>> spectrum(x);
  fft.forward(spectrum.data());

  Eigen::VectorXcd stacked(period);
  for (std::size_t i = 0; i < bins_per_subband; ++i) {
    const double sigma = static_cast<double>(i) / static_cast<double>(n);
    const KlDecomposition kl =
        kl_decompose(assemble_cyclic_psd_matrix(scenario.signal(), sigma));
    for (int p = 0; p < period; ++p) {
      stacked[p] = spectrum[i + static_cast<std::size_t>(p) * bins_per_subband];
    }
    Eigen::VectorXcd rotated = kl.basis.adjoint() * stacked;
    for (int p = 0; p < period; ++p) {
      rotated[p] *= kl.eigenvalues[p] / (kl.eigenvalues[p] + scenario.noise_power());
    }
    stacked = kl.basis * rotated;
    for (int p = 0; p < period; ++p) {
      spectrum[i + static_cast<std::size_t>(p) * bins_per_subband] = stacked[p];
    }
  }
  fft.inverse(spectrum.data());
  return spectrum;
}

}  // namespace syncmmse
