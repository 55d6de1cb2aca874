#include "syncmmse/signal_models.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace syncmmse {

namespace {

double wrap_unit(double f) {
  double w = f - std::floor(f);
  if (w >= 1.0) w = 0.0;  // guard against rounding at integer f
  return w;
}

void require_period(int period) {
  if (period < 2) {
    throw std::invalid_argument("pulse model requires period >= 2 (support is 2/P wide)");
  }
}

}  // namespace

double pulse_frequency_response(int period, double frequency) {
  require_period(period);
  const double w = wrap_unit(frequency);
  const double inv_p = 1.0 / period;
  double principal;
  if (w < inv_p) {
    principal = w;
  } else if (w > 1.0 - inv_p) {
    principal = w - 1.0;
  } else {
    return 0.0;
  }
  return std::sqrt(static_cast<double>(period)) *
         std::cos(0.5 * std::numbers::pi * period * principal);
}

std::complex<double> smear_factor(int period, int cycle_index, double delta) {
  const double theta = 2.0 * std::numbers::pi * delta * cycle_index / period;
  if (theta == 0.0) return {1.0, 0.0};
  const double half = 0.5 * theta;
  const double amplitude = std::sin(half) / half;
  return {amplitude * std::cos(half), -amplitude * std::sin(half)};
}

std::complex<double> pam_cyclic_value(int period, double delta, int cycle_index,
                                      double frequency) {
  const double b1 = pulse_frequency_response(period, frequency);
  if (b1 == 0.0) return {0.0, 0.0};
  const double b2 =
      pulse_frequency_response(period, frequency - static_cast<double>(cycle_index) / period);
  if (b2 == 0.0) return {0.0, 0.0};
  return b1 * b2 * smear_factor(period, cycle_index, delta);
}

SrrcPamModel::SrrcPamModel(int period, double delta) : period_(period), delta_(delta) {
  require_period(period);
  const double delta_max = static_cast<double>(period) / (period - 1);
  if (delta < 0.0 || delta > delta_max + 1e-12) {
    std::ostringstream msg;
    msg << "SrrcPamModel: delta must lie in [0, P/(P-1)] = [0, " << delta_max << "]";
    throw std::invalid_argument(msg.str());
  }
}

std::complex<double> SrrcPamModel::cyclic_value(int cycle_index, double frequency) const {
  return pam_cyclic_value(period_, delta_, cycle_index, frequency);
}

WhiteNoiseModel::WhiteNoiseModel(int period, double power) : period_(period), power_(power) {
  if (period < 1) throw std::invalid_argument("WhiteNoiseModel: period must be >= 1");
  if (power < 0.0) throw std::invalid_argument("WhiteNoiseModel: power must be >= 0");
}

std::complex<double> WhiteNoiseModel::cyclic_value(int cycle_index, double) const {
  return (cycle_index == 0) ? std::complex<double>(power_, 0.0) : std::complex<double>(0.0, 0.0);
}

CompositeModel::CompositeModel(const CyclicSpectrumModel& signal, double noise_power)
    : signal_(&signal), noise_power_(noise_power) {
  if (noise_power < 0.0) throw std::invalid_argument("CompositeModel: noise power must be >= 0");
}

std::complex<double> CompositeModel::cyclic_value(int cycle_index, double frequency) const {
  std::complex<double> value = signal_->cyclic_value(cycle_index, frequency);
  if (cycle_index == 0) value += noise_power_;
  return value;
}

Pulse pulse_time_taps(int period, int half_length, int quadrature_points) {
  require_period(period);
  if (half_length < 8 * period) {
    throw std::invalid_argument("pulse_time_taps: half_length must be >= 8*P");
  }
  if (quadrature_points < 4096) quadrature_points = 4096;

  Pulse pulse;
  pulse.half_length = half_length;
  pulse.taps.assign(2 * static_cast<std::size_t>(half_length) + 1, 0.0);

  // b(n) = integral of B(f) e^{j*2*pi*f*n} over [0,1); B is real and even,
  // so only the cosine part survives.
  const double df = 1.0 / quadrature_points;
  for (int i = 0; i < quadrature_points; ++i) {
    const double f = (i + 0.5) * df;
    const double b = pulse_frequency_response(period, f);
    if (b == 0.0) continue;
    for (int n = -half_length; n <= half_length; ++n) {
      pulse.taps[static_cast<std::size_t>(n + half_length)] +=
          b * std::cos(2.0 * std::numbers::pi * f * n) * df;
    }
  }

  double energy = 0.0;
  for (double t : pulse.taps) energy += t * t;
  const double tail = 1.0 - energy;
  if (std::abs(tail) > 1e-6) {
    std::ostringstream msg;
    msg << "pulse_time_taps: tail energy " << tail << " beyond |n| <= " << half_length
        << " exceeds 1e-6; increase half_length";
    throw TruncationError(msg.str());
  }
  return pulse;
}

}  // namespace syncmmse
