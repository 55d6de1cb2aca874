// Time-domain realization generator for the PAM-plus-noise model.
//
// Desk-scale convention: the symbol stream is shaped by circular
// convolution over the whole record, so the generated block is exactly one
// period of an n-periodic process and frequency-domain filters apply
// without edge effects. The fractional delay is applied as a phase ramp
// e^{-j*2*pi*f*eps} on the [0,1) frequency grid.
#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "syncmmse/signal_models.hpp"

namespace syncmmse {

struct Realization {
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  double epsilon = 0.0;                 // realized delay, in [0, delta)
  std::vector<std::complex<double>> d;  // delayed signal component
  std::vector<std::complex<double>> z;  // white noise component
  std::vector<std::complex<double>> x;  // observation d + z
};

// Deterministic per (seed, parameters). Draw order: delay, then symbols
// (circularly symmetric Gaussian, variance P), then noise (variance Pz).
// n_samples must be a positive multiple of the period and larger than the
// pulse length. Passing a pulse avoids rebuilding taps across trials; the
// default is pulse_time_taps(P, 24*P).
Realization generate_realization(const SrrcPamModel& model, double noise_power,
                                 std::size_t n_samples, std::uint64_t seed,
                                 const Pulse* pulse = nullptr);

// Deterministic per-trial seed derived from a master seed (splitmix64).
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index);

// Mean |reference - estimate|^2 with edge_discard samples dropped per side.
double empirical_mse(const std::vector<std::complex<double>>& reference,
                     const std::vector<std::complex<double>>& estimate,
                     std::size_t edge_discard);

// Writes path + ".iq" (interleaved little-endian float64 I,Q pairs of the
// observation x) and path + ".txt" (one header line with P, delta, Pz,
// seed, n_samples).
void dump_realization(const Realization& realization, int period, double delta,
                      double noise_power, const std::string& path);

}  // namespace syncmmse
