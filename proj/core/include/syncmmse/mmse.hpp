// Closed-form asymptotic MMSE bounds for synchronous (cyclostationarity-
// aware) smoothing, causal filtering and one-step prediction, their
// stationary-treatment baselines, synchronous gains, coherence matrices,
// the error cyclic spectrum, and high-SNR asymptotes.
//
// All bounds are evaluated from the eigenvalues of the cyclic PSD matrix,
// never from inverses of the (possibly rank-deficient) signal matrix.
#pragma once

#include <Eigen/Dense>

#include "syncmmse/cyclic_spectrum.hpp"
#include "syncmmse/frequency_grid.hpp"
#include "syncmmse/kl_transform.hpp"

namespace syncmmse {

// Observation x = d + z with a unit-power cyclostationary signal d and
// independent white WSS noise z of power Pz > 0, so SNR = 1/Pz.
class AdditiveScenario {
 public:
  AdditiveScenario(const CyclicSpectrumModel& signal, double noise_power);

  static AdditiveScenario from_snr(const CyclicSpectrumModel& signal, double snr) {
    return AdditiveScenario(signal, 1.0 / snr);
  }

  const CyclicSpectrumModel& signal() const { return *signal_; }
  double noise_power() const { return noise_power_; }
  double snr() const { return 1.0 / noise_power_; }
  int period() const { return signal_->period(); }

 private:
  const CyclicSpectrumModel* signal_;
  double noise_power_;
};

struct MmseReport {
  double snr = 0.0;
  double mmse_nc = 0.0;
  double mmse_c = 0.0;
  double mmse_p = 0.0;
  double mmse_nc_wss = 0.0;
  double mmse_c_wss = 0.0;
  double mmse_p_wss = 0.0;
  double zeta_nc = 0.0;
  double zeta_c = 0.0;
  double zeta_p = 0.0;
};

// Whitened cross-spectrum at one sigma; singular values lie in [0,1] and
// measure the per-sigma linear dependence between signal and observation.
struct CoherenceMatrix {
  double sigma = 0.0;
  Eigen::MatrixXcd entries;
};

// Prediction bounds carry a singularity flag instead of failing: a value of
// 0 with singular=true signals a deterministic/band-limited process.
struct PredictionMmse {
  double value = 0.0;
  bool singular = false;
};

struct SyncGains {
  double zeta_nc = 0.0;
  double zeta_c = 0.0;
  double zeta_p = 0.0;
};

enum class HighSnrMode { kNoncausal, kCausal, kPrediction };

// Eigenvalue field of the signal's cyclic PSD matrices: row i holds the
// descending eigenvalues at sigma_i. Shared by every bound below.
Eigen::MatrixXd signal_eigenvalue_field(const CyclicSpectrumModel& model,
                                        const FrequencyGrid& grid);

// Per-bin Wiener gains lambda_p/(lambda_p + Pz) at one sigma, in [0,1].
Eigen::VectorXd kl_wiener_gains(const AdditiveScenario& scenario, double sigma);

// Smoothing floor: integral of sum_p lambda_p*Pz/(lambda_p+Pz) over the
// sub-band.
double mmse_noncausal(const AdditiveScenario& scenario, const FrequencyGrid& grid);

// C(sigma) = S_D^{1/2} (S_D + Pz I)^{-1/2} for the additive model.
CoherenceMatrix coherence_matrix(const AdditiveScenario& scenario, double sigma);

// Same bound through the trace form tr[S_D (I - C C^H)]; algebraically
// identical to mmse_noncausal and used as a cross-check.
double mmse_noncausal_via_coherence(const AdditiveScenario& scenario, const FrequencyGrid& grid);

// Cyclic PSD matrix of the smoothing error process,
// S_E = Pz * S_D * (S_D + Pz I)^{-1}; Hermitian PSD and generally not
// diagonal (the error is cyclostationary).
CyclicPsdMatrix error_cyclic_psd(const AdditiveScenario& scenario, double sigma);

// Smoothing floor when the signal is (mis)treated as WSS: full-band integral
// of S_D(f)*Pz/(S_D(f)+Pz) over the conventional PSD.
double mmse_noncausal_wss(const AdditiveScenario& scenario, const FrequencyGrid& grid);

// Causal filtering floor: (1/SNR) * integral of sum_p ln(SNR*lambda_p + 1).
double mmse_causal(const AdditiveScenario& scenario, const FrequencyGrid& grid);

// Independent route: the causal floor equals the average of the smoothing
// floor over SNR' uniform on [0, SNR]; midpoint rule with gamma_points nodes.
double mmse_causal_via_snr_average(const AdditiveScenario& scenario, const FrequencyGrid& grid,
                                   int gamma_points = 512);
double mmse_causal_via_snr_average(const AdditiveScenario& scenario, const FrequencyGrid& grid,
                                   const QuadratureSpec& spec);

// WSS-treatment causal floor: (1/SNR) * full-band integral of
// ln(SNR*S_D(f) + 1).
double mmse_causal_wss(const AdditiveScenario& scenario, const FrequencyGrid& grid);

// One-step prediction floor of the observation process:
// exp of the sub-band integral of ln det S_X(sigma), evaluated as
// sum_p ln lambda_p. Flags singular if any eigenvalue underflows.
PredictionMmse mmse_prediction(const AdditiveScenario& scenario, const FrequencyGrid& grid);

// Same bound for an arbitrary observation model (e.g. noise alone or a
// composite assembled elsewhere).
PredictionMmse mmse_prediction(const CyclicSpectrumModel& observation, const FrequencyGrid& grid);

// Stationary-treatment prediction floor: exp of the full-band integral of
// ln(S_D(f) + Pz).
PredictionMmse mmse_prediction_wss(const AdditiveScenario& scenario, const FrequencyGrid& grid);

// Ratios of synchronous to WSS-treatment MMSE per mode; each is <= 1 up to
// rounding. Throws std::domain_error if a baseline is singular.
SyncGains sync_gains(const AdditiveScenario& scenario, const FrequencyGrid& grid);

// Second route to zeta_p through the spectral coherence matrix
// C(sigma) = Dg^{-1/2} S_X Dg^{-1/2}, Dg = diag(S_X): exp of the sub-band
// integral of ln det C. Must agree with sync_gains().zeta_p to rounding.
double prediction_gain_via_coherence(const AdditiveScenario& scenario, const FrequencyGrid& grid);

// Measure of {lambda : density > rel_threshold * max(density)}.
double occupied_band(const SpectrumDensity& density, double rel_threshold = 1e-12);

// Closed-form high-SNR asymptotes: B/SNR (smoothing), B*ln(SNR)/SNR
// (causal), SNR^{-(1-B)} (prediction), for an occupied band B in (0,1].
double high_snr_asymptote(HighSnrMode mode, double occupied_band, double snr);

// All six bounds plus gains at one SNR.
MmseReport mmse_report(const AdditiveScenario& scenario, const FrequencyGrid& grid);

}  // namespace syncmmse
