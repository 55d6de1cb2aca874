// Finite-order one-step prediction against the exact time-domain kernel of
// the zero-delay PAM-plus-noise model. Serves as a finite-N oracle for the
// asymptotic prediction bound: per-phase errors are nonincreasing in the
// order and their geometric mean over one period converges to the bound.
#pragma once

#include <complex>

#include "syncmmse/signal_models.hpp"

namespace syncmmse {

// Autocorrelation r_x(n, m) = E[x(n+m) x*(n)] of the composite process,
// P-periodic in n. Only defined for delta = 0 (throws UnsupportedDelay
// otherwise: a fractional delay would need the pulse autocorrelation
// averaged over the delay law, which the model-based bounds never use).
std::complex<double> autocorrelation_kernel(const SrrcPamModel& model, double noise_power,
                                            const Pulse& pulse, long n, long m);

// MMSE of predicting x(n) from its previous `order` samples, where
// n = phase (mod P picks the polyphase position). Computed as the last
// Cholesky pivot of the (order+1) x (order+1) kernel Gram matrix, i.e. a
// log-determinant difference, never a raw determinant ratio.
// Requires noise_power > 0; throws NotPositiveDefinite if the factorization
// fails and UnsupportedDelay for delta != 0. order = 0 returns r_x(n, 0).
double finite_prediction_mmse(const SrrcPamModel& model, double noise_power,
                              const Pulse& pulse, int order, int phase);

}  // namespace syncmmse
