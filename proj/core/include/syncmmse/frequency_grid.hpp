// Uniform midpoint frequency grids over the cyclic sub-band and the full band.
//
// Frequencies are dimensionless (cycles/sample); the full band is [0,1).
// A process with cycle period P splits the band into P sub-bands of width
// 1/P, indexed by p, with the sub-band frequency sigma in [0,1/P).
// Midpoint nodes never touch sigma=0 or sigma=1/P, which keeps log-domain
// integrands away from band-edge zeros.
#pragma once

#include <stdexcept>

namespace syncmmse {

class FrequencyGrid {
 public:
  FrequencyGrid(int period, int points_per_subband)
      : period_(period), points_(points_per_subband) {
    if (period_ < 1) throw std::invalid_argument("FrequencyGrid: period must be >= 1");
    if (points_ < 1) throw std::invalid_argument("FrequencyGrid: points_per_subband must be >= 1");
  }

  int period() const { return period_; }
  int points_per_subband() const { return points_; }
  int full_band_points() const { return period_ * points_; }

  // Node spacing, identical on the sub-band and full-band grids.
  double step() const { return 1.0 / (static_cast<double>(period_) * points_); }

  // sigma_i = (i + 1/2) / (P*M), i = 0..M-1; all in (0, 1/P).
  double sigma_node(int i) const { return (i + 0.5) * step(); }

  // lambda_j = (j + 1/2) / (P*M), j = 0..P*M-1; all in (0, 1).
  double lambda_node(int j) const { return (j + 0.5) * step(); }

 private:
  int period_;
  int points_;
};

// Midpoint-rule configuration for auxiliary 1-D integrals (e.g. the SNR
// average used to cross-check the causal bound).
struct QuadratureSpec {
  int points = 1024;
  double abs_tolerance = 1e-9;
};

inline void validate(const QuadratureSpec& spec) {
  if (spec.points < 16) throw std::invalid_argument("QuadratureSpec: points must be >= 16");
}

}  // namespace syncmmse
