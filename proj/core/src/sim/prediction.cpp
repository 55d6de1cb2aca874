#include "syncmmse/sim/prediction.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "syncmmse/errors.hpp"

namespace syncmmse {

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long ceil_div(long a, long b) { return -floor_div(-a, b); }

// P * sum_k b(n+m-kP) b(n-kP), restricted to the taps' support.
double pam_kernel(const Pulse& pulse, int period, long n, long m) {
  const long half = pulse.half_length;
  // Both b(n-kP) and b(n+m-kP) must land in [-half, half].
  const long k_low = std::max(ceil_div(n - half, period), ceil_div(n + m - half, period));
  const long k_high = std::min(floor_div(n + half, period), floor_div(n + m + half, period));
  double acc = 0.0;
  for (long k = k_low; k <= k_high; ++k) {
    acc += pulse.tap(n + m - k * period) * pulse.tap(n - k * period);
  }
  return static_cast<double>(period) * acc;
}

}  // namespace

std::complex<double> autocorrelation_kernel(const SrrcPamModel& model, double noise_power,
                                            const Pulse& pulse, long n, long m) {
  if (model.delta() != 0.0) {
    throw UnsupportedDelay("autocorrelation_kernel: only delta = 0 is supported");
  }
  double value = pam_kernel(pulse, model.period(), n, m);
  if (m == 0) value += noise_power;
  return {value, 0.0};
}

double finite_prediction_mmse(const SrrcPamModel& model, double noise_power,
                              const Pulse& pulse, int order, int phase) {
  if (model.delta() != 0.0) {
    throw UnsupportedDelay("finite_prediction_mmse: only delta = 0 is supported");
  }
  if (order < 0 || order > 512) {
    throw std::invalid_argument("finite_prediction_mmse: order must lie in [0, 512]");
  }
  if (noise_power <= 0.0) {
    throw std::invalid_argument("finite_prediction_mmse: noise power must be positive");
  }
  const int period = model.period();
  const long n = phase;

  // Gram matrix of [x(n-order), ..., x(n-1), x(n)]; the prediction error is
  // the last Cholesky pivot (the Schur complement of the past block).
  const int dim = order + 1;
  Eigen::MatrixXd gram(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j <= i; ++j) {
      // E[x(a) x*(b)] = r_x(b, a-b) with a = n-order+i, b = n-order+j.
      const long b = n - order + j;
      double value = pam_kernel(pulse, period, b, i - j);
      if (i == j) value += noise_power;
      gram(i, j) = value;
      gram(j, i) = value;
    }
  }

  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("finite_prediction_mmse: kernel Gram matrix is not PD");
  }
  const double pivot = llt.matrixL()(dim - 1, dim - 1);
  return pivot * pivot;
}

}  // namespace syncmmse
