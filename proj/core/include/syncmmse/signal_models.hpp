// Concrete cyclic-spectrum models: square-root raised-cosine PAM with a
// uniform random delay, white noise, and the additive composite; plus the
// time-domain pulse used by the simulation lab.
#pragma once

#include <complex>
#include <vector>

#include "syncmmse/cyclic_spectrum.hpp"

namespace syncmmse {

// DTFT of the unit-energy 100% excess-bandwidth square-root raised cosine
// at symbol period P: sqrt(P)*cos(pi*P*f/2) on the principal support
// [-1/P, 1/P), stored 1-periodically (nonzero on [0,1/P) and (1-1/P,1)).
// Real-valued; requires P >= 2 so the support fits the band.
double pulse_frequency_response(int period, double frequency);

// Mean phase factor E[e^{-j*2*pi*(k/P)*eps}] of a delay eps uniform on
// [0,delta), in the exact stable form e^{-j*theta/2} * sin(theta/2)/(theta/2)
// with theta = 2*pi*delta*k/P. Equals 1 for k = 0 or delta = 0 and is
// conjugate-symmetric in k.
std::complex<double> smear_factor(int period, int cycle_index, double delta);

// Signal part of the delayed-PAM cyclic spectrum:
// B(f) * conj(B(f - k/P)) * smear_factor(k, delta), with B the 1-periodic
// pulse response and k the signed cycle index. Noise is added by the
// composite model, not here.
std::complex<double> pam_cyclic_value(int period, double delta, int cycle_index,
                                      double frequency);

// Unit-power PAM signal model: symbols of power P at rate 1/P shaped by the
// unit-energy pulse, delayed by a uniform random lag on [0, delta].
class SrrcPamModel final : public CyclicSpectrumModel {
 public:
  // Requires period >= 2 and 0 <= delta <= P/(P-1).
  SrrcPamModel(int period, double delta);

  int period() const override { return period_; }
  double signal_power() const override { return 1.0; }
  std::complex<double> cyclic_value(int cycle_index, double frequency) const override;

  double delta() const { return delta_; }

 private:
  int period_;
  double delta_;
};

// White WSS noise of the given power, carried at an arbitrary cycle period
// so it can be assembled into P x P matrices.
class WhiteNoiseModel final : public CyclicSpectrumModel {
 public:
  WhiteNoiseModel(int period, double power);

  int period() const override { return period_; }
  double signal_power() const override { return power_; }
  std::complex<double> cyclic_value(int cycle_index, double frequency) const override;

 private:
  int period_;
  double power_;
};

// Observation model x = signal + white noise. Non-owning view of the signal
// model; keep the signal alive while the composite is in use.
class CompositeModel final : public CyclicSpectrumModel {
 public:
  CompositeModel(const CyclicSpectrumModel& signal, double noise_power);

  int period() const override { return signal_->period(); }
  double signal_power() const override { return signal_->signal_power() + noise_power_; }
  std::complex<double> cyclic_value(int cycle_index, double frequency) const override;

  double noise_power() const { return noise_power_; }

 private:
  const CyclicSpectrumModel* signal_;
  double noise_power_;
};

// Real symmetric pulse taps b(n), n = -half_length..half_length.
struct Pulse {
  int half_length = 0;
  std::vector<double> taps;  // taps[n + half_length]

  double tap(long n) const {
    const long i = n + half_length;
    if (i < 0 || i >= static_cast<long>(taps.size())) return 0.0;
    return taps[static_cast<std::size_t>(i)];
  }
};

// Numeric inverse transform of the pulse response, truncated to
// |n| <= half_length. Requires half_length >= 8*P. Throws TruncationError
// if the energy beyond the truncation exceeds 1e-6. The default suggested
// half-length for simulations is 24*P.
Pulse pulse_time_taps(int period, int half_length, int quadrature_points = 8192);

}  // namespace syncmmse
