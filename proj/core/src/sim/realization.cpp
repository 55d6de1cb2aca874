#include "syncmmse/sim/realization.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>

#include "syncmmse/errors.hpp"
#include "syncmmse/sim/fft.hpp"

namespace syncmmse {

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
  // splitmix64 step keyed by the trial index.
  std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (trial_index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Realization generate_realization(const SrrcPamModel& model, double noise_power,
                                 std::size_t n_samples, std::uint64_t seed,
                                 const Pulse* pulse) {
  const int period = model.period();
  if (n_samples == 0 || n_samples % static_cast<std::size_t>(period) != 0) {
    throw std::invalid_argument("generate_realization: n_samples must be a multiple of P");
  }
  if (noise_power < 0.0) {
    throw std::invalid_argument("generate_realization: noise power must be >= 0");
  }
  Pulse local;
  if (pulse == nullptr) {
    local = pulse_time_taps(period, 24 * period);
    pulse = &local;
  }
  if (n_samples <= 2 * static_cast<std::size_t>(pulse->half_length)) {
    throw std::invalid_argument("generate_realization: record shorter than the pulse");
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform01(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Realization out;
  out.n_samples = n_samples;
  out.seed = seed;
  out.epsilon = model.delta() * uniform01(rng);

  // Upsampled symbol train; circularly symmetric Gaussian symbols of
  // variance P make the cyclic Wiener smoother the exact conditional mean.
  const std::size_t n_symbols = n_samples / static_cast<std::size_t>(period);
  const double symbol_scale = std::sqrt(static_cast<double>(period) / 2.0);
  std::vector<std::complex<double>> spectrum(n_samples, {0.0, 0.0});
  for (std::size_t k = 0; k < n_symbols; ++k) {
    spectrum[k * static_cast<std::size_t>(period)] =
        std::complex<double>(symbol_scale * gauss(rng), symbol_scale * gauss(rng));
  }

  Fft fft(n_samples);
  fft.forward(spectrum.data());

  // Circular pulse spectrum from the truncated taps.
  std::vector<std::complex<double>> pulse_buffer(n_samples, {0.0, 0.0});
  for (long m = -pulse->half_length; m <= pulse->half_length; ++m) {
    const std::size_t idx =
        static_cast<std::size_t>((m + static_cast<long>(n_samples)) %
                                 static_cast<long>(n_samples));
    pulse_buffer[idx] = pulse->tap(m);
  }
  fft.forward(pulse_buffer.data());

  // Shape and delay: phase ramp e^{-j*2*pi*f*eps} on the [0,1) grid.
  const double ramp = -2.0 * std::numbers::pi * out.epsilon / static_cast<double>(n_samples);
  for (std::size_t m = 0; m < n_samples; ++m) {
    const double phase = ramp * static_cast<double>(m);
    spectrum[m] *= pulse_buffer[m] * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  fft.inverse(spectrum.data());
  out.d = std::move(spectrum);

  const double noise_scale = std::sqrt(noise_power / 2.0);
  out.z.resize(n_samples);
  out.x.resize(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    out.z[i] = std::complex<double>(noise_scale * gauss(rng), noise_scale * gauss(rng));
    out.x[i] = out.d[i] + out.z[i];
  }
  return out;
}

double empirical_mse(const std::vector<std::complex<double>>& reference,
                     const std::vector<std::complex<double>>& estimate,
                     std::size_t edge_discard) {
  if (reference.size() != estimate.size()) {
    throw LengthMismatch("empirical_mse: sequence lengths differ");
  }
  if (reference.size() <= 2 * edge_discard) {
    throw LengthMismatch("empirical_mse: nothing left after edge discard");
  }
  double acc = 0.0;
  const std::size_t begin = edge_discard;
  const std::size_t end = reference.size() - edge_discard;
  for (std::size_t i = begin; i < end; ++i) {
    acc += std::norm(reference[i] - estimate[i]);
  }
  return acc / static_cast<double>(end - begin);
}

void dump_realization(const Realization& realization, int period, double delta,
                      double noise_power, const std::string& path) {
  std::ofstream iq(path + ".iq", std::ios::binary);
  if (!iq) throw std::runtime_error("dump_realization: cannot open " + path + ".iq");
  auto put_le = [&iq](double value) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(value));
    std::memcpy(&bits, &value, sizeof(bits));
    char bytes[8];
    for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xFF);
    iq.write(bytes, 8);
  };
  for (const std::complex<double>& s : realization.x) {
    put_le(s.real());
    put_le(s.imag());
  }

  std::ofstream sidecar(path + ".txt");
  if (!sidecar) throw std::runtime_error("dump_realization: cannot open " + path + ".txt");
  char line[256];
  std::snprintf(line, sizeof(line), "P=%d delta=%.17g Pz=%.17g seed=%llu n_samples=%zu\n",
                period, delta, noise_power,
                static_cast<unsigned long long>(realization.seed), realization.n_samples);
  sidecar << line;
}

}  // namespace syncmmse
