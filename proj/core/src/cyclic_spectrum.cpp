#include "syncmmse/cyclic_spectrum.hpp"

#include <cmath>
#include <sstream>

namespace syncmmse {

CyclicPsdMatrix assemble_cyclic_psd_matrix(const CyclicSpectrumModel& model, double sigma) {
  const int p = model.period();
  if (sigma < 0.0 || sigma >= 1.0 / p) {
    throw std::invalid_argument("assemble_cyclic_psd_matrix: sigma outside [0, 1/P)");
  }

  CyclicPsdMatrix out;
  out.sigma = sigma;
  out.entries.resize(p, p);
  for (int r = 0; r < p; ++r) {
    const double f = sigma + static_cast<double>(r) / p;
    for (int c = 0; c < p; ++c) {
      // Signed cycle index in [-(P-1), P-1]; never reduced mod P.
      out.entries(r, c) = model.cyclic_value(r - c, f);
    }
  }

  double max_abs = 0.0;
  double residual = 0.0;
  for (int r = 0; r < p; ++r) {
    for (int c = 0; c < p; ++c) {
      max_abs = std::max(max_abs, std::abs(out.entries(r, c)));
      residual = std::max(residual, std::abs(out.entries(r, c) - std::conj(out.entries(c, r))));
    }
  }
  if (max_abs > 0.0 && residual > kHermitianTolerance * max_abs) {
    std::ostringstream msg;
    msg << "assemble_cyclic_psd_matrix: Hermitian residual " << residual / max_abs
        << " at sigma=" << sigma << " (cyclic_value breaks conjugate-pair symmetry)";
    throw ModelInconsistent(msg.str());
  }
  return out;
}

std::complex<double> spectral_correlation(const CyclicSpectrumModel& model, double alpha,
                                          double frequency) {
  const int p = model.period();
  const double scaled = alpha * p;
  const double k = std::round(scaled);
  // Support is a Dirac comb at multiples of 1/P; anything else is off-ridge.
  if (std::abs(scaled - k) > 1e-9) return {0.0, 0.0};
  return model.cyclic_value(static_cast<int>(k), frequency);
}

PsdDiagnostics validate_psd(const CyclicPsdMatrix& matrix) {
  PsdDiagnostics diag;
  const Eigen::Index n = matrix.entries.rows();
  double max_abs = 0.0;
  double residual = 0.0;
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      max_abs = std::max(max_abs, std::abs(matrix.entries(r, c)));
      residual = std::max(residual,
                          std::abs(matrix.entries(r, c) - std::conj(matrix.entries(c, r))));
    }
  }
  diag.hermitian_residual = (max_abs > 0.0) ? residual / max_abs : 0.0;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix.entries,
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() == Eigen::Success && n > 0) {
    diag.min_eigenvalue = solver.eigenvalues().minCoeff();
    diag.max_eigenvalue = solver.eigenvalues().maxCoeff();
  }
  return diag;
}

namespace {

double midpoint_sum(const std::function<double(double)>& integrand, const FrequencyGrid& grid,
                    int n_nodes, bool full_band) {
  double acc = 0.0;
  for (int i = 0; i < n_nodes; ++i) {
    const double node = full_band ? grid.lambda_node(i) : grid.sigma_node(i);
    const double value = integrand(node);
    if (!std::isfinite(value)) {
      std::ostringstream msg;
      msg << "integrand not finite at node " << node;
      throw NonFiniteIntegrand(msg.str());
    }
    acc += value;
  }
  return acc * grid.step();
}

}  // namespace

double integrate_subband(const std::function<double(double)>& integrand,
                         const FrequencyGrid& grid) {
  return midpoint_sum(integrand, grid, grid.points_per_subband(), false);
}

double integrate_full_band(const std::function<double(double)>& integrand,
                           const FrequencyGrid& grid) {
  return midpoint_sum(integrand, grid, grid.full_band_points(), true);
}

}  // namespace syncmmse
