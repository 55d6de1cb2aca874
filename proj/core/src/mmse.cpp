#include "syncmmse/mmse.hpp"

#include <cmath>
#include <stdexcept>

#include "syncmmse/signal_models.hpp"

namespace syncmmse {

namespace {

constexpr double kLogFloor = 1e-300;

// Descending eigenvalues of one assembled matrix, negatives clamped to 0.
Eigen::VectorXd eigenvalues_at(const CyclicSpectrumModel& model, double sigma) {
  const CyclicPsdMatrix matrix = assemble_cyclic_psd_matrix(model, sigma);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix.entries,
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw EigensolveFailure("signal_eigenvalue_field: eigensolver did not converge");
  }
  Eigen::VectorXd eig = solver.eigenvalues().reverse();
  for (Eigen::Index i = 0; i < eig.size(); ++i) eig[i] = std::max(eig[i], 0.0);
  return eig;
}

double noncausal_from_field(const Eigen::MatrixXd& field, double step, double noise_power) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < field.rows(); ++i) {
    for (Eigen::Index p = 0; p < field.cols(); ++p) {
      const double lambda = field(i, p);
      acc += lambda * noise_power / (lambda + noise_power);
    }
  }
  return acc * step;
}

double causal_from_field(const Eigen::MatrixXd& field, double step, double snr) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < field.rows(); ++i) {
    for (Eigen::Index p = 0; p < field.cols(); ++p) {
      acc += std::log1p(snr * field(i, p));
    }
  }
  return acc * step / snr;
}

PredictionMmse prediction_from_field(const Eigen::MatrixXd& field, double step,
                                     double noise_power) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < field.rows(); ++i) {
    for (Eigen::Index p = 0; p < field.cols(); ++p) {
      const double lambda = field(i, p) + noise_power;
      if (lambda < kLogFloor) return {0.0, true};
      acc += std::log(lambda);
    }
  }
  return {std::exp(acc * step), false};
}

double cl_psd(const CyclicSpectrumModel& model, double f) {
  return std::max(model.cyclic_value(0, f).real(), 0.0);
}

}  // namespace

AdditiveScenario::AdditiveScenario(const CyclicSpectrumModel& signal, double noise_power)
    : signal_(&signal), noise_power_(noise_power) {
  if (noise_power <= 0.0) {
    throw std::invalid_argument("AdditiveScenario: noise power must be positive");
  }
  if (std::abs(signal.signal_power() - 1.0) > 1e-6) {
    throw std::invalid_argument("AdditiveScenario: signal must have unit power");
  }
}

Eigen::MatrixXd signal_eigenvalue_field(const CyclicSpectrumModel& model,
                                        const FrequencyGrid& grid) {
  Eigen::MatrixXd field(grid.points_per_subband(), grid.period());
  for (int i = 0; i < grid.points_per_subband(); ++i) {
    field.row(i) = eigenvalues_at(model, grid.sigma_node(i)).transpose();
  }
  return field;
}

Eigen::VectorXd kl_wiener_gains(const AdditiveScenario& scenario, double sigma) {
  const Eigen::VectorXd eig = eigenvalues_at(scenario.signal(), sigma);
  Eigen::VectorXd gains(eig.size());
  for (Eigen::Index p = 0; p < eig.size(); ++p) {
    gains[p] = eig[p] / (eig[p] + scenario.noise_power());
  }
  return gains;
}

double mmse_noncausal(const AdditiveScenario& scenario, const FrequencyGrid& grid) {
  const Eigen::MatrixXd field = signal_eigenvalue_field(scenario.signal(), grid);
  return noncausal_from_field(field, grid.step(), scenario.noise_power());
}

CoherenceMatrix coherence_matrix(const AdditiveScenario& scenario, double sigma) {
  const CyclicPsdMatrix matrix = assemble_cyclic_psd_matrix(scenario.signal(), sigma);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix.entries);
  if (solver.info() != Eigen::Success) {
    throw EigensolveFailure("coherence_matrix: eigensolver did not converge");
  }
  const Eigen::Index n = matrix.entries.rows();
  Eigen::VectorXd scaled(n);
  for (Eigen::Index p = 0; p < n; ++p) {
    const double lambda = std::max(solver.eigenvalues()[p], 0.0);
    scaled[p] = std::sqrt(lambda / (lambda + scenario.noise_power()));
  }
  CoherenceMatrix out;
  out.sigma = sigma;
  out.entries = solver.eigenvectors() * scaled.asDiagonal() *
                solver.eigenvectors().adjoint();
  return out;
}

double mmse_noncausal_via_coherence(const AdditiveScenario& scenario,
                                    const FrequencyGrid& grid) {
  const int p = grid.period();
  double acc = 0.0;
  for (int i = 0; i < grid.points_per_subband(); ++i) {
    const double sigma = grid.sigma_node(i);
    const CyclicPsdMatrix sd = assemble_cyclic_psd_matrix(scenario.signal(), sigma);
    const CoherenceMatrix c = coherence_matrix(scenario, sigma);
    const Eigen::MatrixXcd residual =
        Eigen::MatrixXcd::Identity(p, p) - c.entries * c.entries.adjoint();
    acc += (sd.entries * residual).trace().real();
  }
  return acc * grid.step();
}

CyclicPsdMatrix error_cyclic_psd(const AdditiveScenario& scenario, double sigma) {
  const CyclicPsdMatrix sd = assemble_cyclic_psd_matrix(scenario.signal(), sigma);
  const Eigen::Index n = sd.entries.rows();
  const Eigen::MatrixXcd regularized =
      sd.entries + scenario.noise_power() * Eigen::MatrixXcd::Identity(n, n);
  // (S_D + Pz I)^{-1} S_D, conjugated into the right-multiplied form; valid
  // for singular S_D since only the regularized matrix is factorized.
  const Eigen::MatrixXcd solved = regularized.ldlt().solve(sd.entries);
  CyclicPsdMatrix out;
  out.sigma = sigma;
  out.entries = scenario.noise_power() * 0.5 * (solved + solved.adjoint());
  return out;
}

double mmse_noncausal_wss(const AdditiveScenario& scenario, const FrequencyGrid& grid) {
  const double pz = scenario.noise_power();
  return integrate_full_band(
      [&](double f) {
        const double s = cl_psd(scenario.signal(), f);
        return s * pz / (s + pz);
      },
      grid);
}

double mmse_causal(const AdditiveScenario& scenario, const FrequencyGrid& grid) {
  const Eigen::MatrixXd field = signal_eigenvalue_field(scenario.signal(), grid);
  return causal_from_field(field, grid.step(), scenario.snr());
}

double mmse_causal_via_snr_average(const AdditiveScenario& scenario, const FrequencyGrid& grid,
                                   int gamma_points) {
  if (gamma_points < 16) {
    throw std::invalid_argument("mmse_causal_via_snr_average: need at least 16 nodes");
  }
  const Eigen::MatrixXd field = signal_eigenvalue_field(scenario.signal(), grid);
  const double snr = scenario.snr();
  const double d_gamma = snr / gamma_points;
  double acc = 0.0;
  for (int g = 0; g < gamma_points; ++g) {
    const double gamma = (g + 0.5) * d_gamma;
    acc += noncausal_from_field(field, grid.step(), 1.0 / gamma);
  }
  return acc * d_gamma / snr;
}

double mmse_causal_via_snr_average(const AdditiveScenario& scenario, const FrequencyGrid& grid,
                                   const QuadratureSpec& spec) {
  validate(spec);
  return mmse_causal_via_snr_average(scenario, grid, spec.points);
}

double mmse_causal_wss(const AdditiveScenario& scenario, const FrequencyGrid& grid) {
  const double snr = scenario.snr();
  const double integral = integrate_full_band(
      [&](double f) { return std::log1p(snr * cl_psd(scenario.signal(), f)); }, grid);
  return integral / snr;
}

PredictionMmse mmse_prediction(const AdditiveScenario& scenario, const FrequencyGrid& grid) {
  const Eigen::MatrixXd field = signal_eigenvalue_field(scenario.signal(), grid);
  return prediction_from_field(field, grid.step(), scenario.noise_power());
}

PredictionMmse mmse_prediction(const CyclicSpectrumModel& observation,
                               const FrequencyGrid& grid) {
  const Eigen::MatrixXd field = signal_eigenvalue_field(observation, grid);
  return prediction_from_field(field, grid.step(), 0.0);
}

PredictionMmse mmse_prediction_wss(const AdditiveScenario& scenario, const FrequencyGrid& grid) {
  const double pz = scenario.noise_power();
  double acc = 0.0;
  bool singular = false;
  for (int j = 0; j < grid.full_band_points(); ++j) {
    const double s = cl_psd(scenario.signal(), grid.lambda_node(j)) + pz;
    if (s < kLogFloor) {
      singular = true;
      break;
    }
    acc += std::log(s);
  }
  if (singular) return {0.0, true};
  return {std::exp(acc * grid.step()), false};
}

SyncGains sync_gains(const AdditiveScenario& scenario, const FrequencyGrid& grid) {
  const Eigen::MatrixXd field = signal_eigenvalue_field(scenario.signal(), grid);
  const double step = grid.step();
  const double pz = scenario.noise_power();

  const double nc = noncausal_from_field(field, step, pz);
  const double c = causal_from_field(field, step, scenario.snr());
  const PredictionMmse p = prediction_from_field(field, step, pz);

  const double nc_wss = mmse_noncausal_wss(scenario, grid);
  const double c_wss = mmse_causal_wss(scenario, grid);
  const PredictionMmse p_wss = mmse_prediction_wss(scenario, grid);

  if (p.singular || p_wss.singular || nc_wss <= 0.0 || c_wss <= 0.0 || p_wss.value <= 0.0) {
    throw std::domain_error("sync_gains: baseline MMSE is zero or singular");
  }
  return {nc / nc_wss, c / c_wss, p.value / p_wss.value};
}

double prediction_gain_via_coherence(const AdditiveScenario& scenario,
                                     const FrequencyGrid& grid) {
  const int p = grid.period();
  const double pz = scenario.noise_power();
  double acc = 0.0;
  for (int i = 0; i < grid.points_per_subband(); ++i) {
    CyclicPsdMatrix matrix = assemble_cyclic_psd_matrix(scenario.signal(), grid.sigma_node(i));
    matrix.entries += pz * Eigen::MatrixXcd::Identity(p, p);
    Eigen::VectorXd inv_sqrt_diag(p);
    for (int q = 0; q < p; ++q) {
      const double dq = matrix.entries(q, q).real();
      if (dq < kLogFloor) throw std::domain_error("prediction_gain_via_coherence: zero PSD");
      inv_sqrt_diag[q] = 1.0 / std::sqrt(dq);
    }
    const Eigen::MatrixXcd coherence = inv_sqrt_diag.asDiagonal() * matrix.entries *
                                       inv_sqrt_diag.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(coherence, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw EigensolveFailure("prediction_gain_via_coherence: eigensolver did not converge");
    }
    for (int q = 0; q < p; ++q) {
      const double lambda = solver.eigenvalues()[q];
      if (lambda < kLogFloor) throw std::domain_error("prediction_gain_via_coherence: singular");
      acc += std::log(lambda);
    }
  }
  return std::exp(acc * grid.step());
}

double occupied_band(const SpectrumDensity& density, double rel_threshold) {
  double max_value = 0.0;
  for (double v : density.values) max_value = std::max(max_value, v);
  if (max_value <= 0.0) return 0.0;
  const double threshold = rel_threshold * max_value;
  std::size_t count = 0;
  for (double v : density.values) {
    if (v > threshold) ++count;
  }
  return static_cast<double>(count) * density.grid.step();
}

double high_snr_asymptote(HighSnrMode mode, double occupied_band, double snr) {
  if (occupied_band <= 0.0 || occupied_band > 1.0) {
    throw std::invalid_argument("high_snr_asymptote: band must lie in (0,1]");
  }
  if (snr <= 0.0) throw std::invalid_argument("high_snr_asymptote: snr must be positive");
  switch (mode) {
    case HighSnrMode::kNoncausal:
      return occupied_band / snr;
    case HighSnrMode::kCausal:
      return occupied_band * std::log(snr) / snr;
    case HighSnrMode::kPrediction:
      return std::pow(snr, -(1.0 - occupied_band));
  }
  throw std::invalid_argument("high_snr_asymptote: unknown mode");
}

MmseReport mmse_report(const AdditiveScenario& scenario, const FrequencyGrid& grid) {
  const Eigen::MatrixXd field = signal_eigenvalue_field(scenario.signal(), grid);
  const double step = grid.step();
  const double pz = scenario.noise_power();

  MmseReport report;
  report.snr = scenario.snr();
  report.mmse_nc = noncausal_from_field(field, step, pz);
  report.mmse_c = causal_from_field(field, step, scenario.snr());
  report.mmse_p = prediction_from_field(field, step, pz).value;
  report.mmse_nc_wss = mmse_noncausal_wss(scenario, grid);
  report.mmse_c_wss = mmse_causal_wss(scenario, grid);
  report.mmse_p_wss = mmse_prediction_wss(scenario, grid).value;
  report.zeta_nc = report.mmse_nc / report.mmse_nc_wss;
  report.zeta_c = report.mmse_c / report.mmse_c_wss;
  report.zeta_p = (report.mmse_p_wss > 0.0) ? report.mmse_p / report.mmse_p_wss : 0.0;
  return report;
}

}  // namespace syncmmse
