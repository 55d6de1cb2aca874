// The cyclic Wiener smoother in its two equivalent implementations: a
// frequency-shift (FRESH) filter bank of P LTI branches, and per-sigma
// scalar Wiener gains in the KL eigenbasis. Both act on whole records by
// circular frequency-domain processing; their outputs must agree to
// rounding on any input.
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "syncmmse/mmse.hpp"

namespace syncmmse {

// Branch q filters the replica of x frequency-shifted by q/P; responses are
// sampled on an n_dft-point grid over [0,1).
struct FreshFilterBank {
  int period = 0;
  std::size_t n_dft = 0;
  std::vector<std::vector<std::complex<double>>> branches;  // [q][bin]
};

// Branch responses from per-sigma solves of (S_D + Pz I) w = column of S_D.
// n_dft must be a multiple of the period.
FreshFilterBank design_cwf(const AdditiveScenario& scenario, std::size_t n_dft);

// Applies the bank by circular blocks of n_dft samples:
// output bin m accumulates conj(W_q[m]) * X[m + q*n_dft/P mod n_dft].
// Throws LengthMismatch unless x.size() is a positive multiple of n_dft.
std::vector<std::complex<double>> apply_fresh(const FreshFilterBank& bank,
                                              const std::vector<std::complex<double>>& x);

// KL route on the whole record: per-sigma P-vectors of the spectrum are
// rotated into the eigenbasis, scaled by kl_wiener_gains, and rotated back.
// Throws LengthMismatch unless x.size() is a positive multiple of the period.
std::vector<std::complex<double>> apply_kl_wiener(const AdditiveScenario& scenario,
                                                  const std::vector<std::complex<double>>& x);

}  // namespace syncmmse
