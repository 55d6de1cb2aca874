#include "syncmmse/kl_transform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace syncmmse {

KlDecomposition kl_decompose(const CyclicPsdMatrix& matrix) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix.entries);
  if (solver.info() != Eigen::Success) {
    throw EigensolveFailure("kl_decompose: Hermitian eigensolver did not converge");
  }
  const Eigen::Index n = matrix.entries.rows();

  // Descending order, stable under exact ties so a diagonal input keeps the
  // identity basis.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const Eigen::VectorXd& raw = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(),
                   [&raw](Eigen::Index a, Eigen::Index b) { return raw[a] > raw[b]; });

  KlDecomposition out;
  out.sigma = matrix.sigma;
  out.eigenvalues.resize(n);
  out.basis.resize(n, n);
  for (Eigen::Index p = 0; p < n; ++p) {
    out.eigenvalues[p] = raw[order[static_cast<std::size_t>(p)]];
    out.basis.col(p) = solver.eigenvectors().col(order[static_cast<std::size_t>(p)]);
  }

  const double max_eig = (n > 0) ? out.eigenvalues[0] : 0.0;
  for (Eigen::Index p = 0; p < n; ++p) {
    if (out.eigenvalues[p] < 0.0) {
      if (out.eigenvalues[p] < -kPsdTolerance * std::max(max_eig, 0.0)) {
        throw std::invalid_argument("kl_decompose: matrix is not positive semidefinite");
      }
      out.eigenvalues[p] = 0.0;
    }
  }

  // Phase convention: largest-magnitude component of each column made real
  // and nonnegative, ties broken by lowest index.
  for (Eigen::Index p = 0; p < n; ++p) {
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index q = 0; q < n; ++q) {
      const double mag = std::abs(out.basis(q, p));
      if (mag > best + 1e-15) {
        best = mag;
        pivot = q;
      }
    }
    const std::complex<double> v = out.basis(pivot, p);
    if (std::abs(v) > 0.0) {
      out.basis.col(p) *= std::conj(v) / std::abs(v);
    }
  }
  return out;
}

SpectrumDensity kl_psd_field(const CyclicSpectrumModel& model, const FrequencyGrid& grid) {
  const int p = grid.period();
  const int m = grid.points_per_subband();
  SpectrumDensity density{grid, std::vector<double>(static_cast<std::size_t>(p) * m, 0.0),
                          SpectrumBasis::kKl};
  for (int i = 0; i < m; ++i) {
    const CyclicPsdMatrix matrix = assemble_cyclic_psd_matrix(model, grid.sigma_node(i));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix.entries,
                                                           Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw EigensolveFailure("kl_psd_field: Hermitian eigensolver did not converge");
    }
    // Rank r (descending) occupies the sub-band [r/P, (r+1)/P).
    for (int r = 0; r < p; ++r) {
      density.values[static_cast<std::size_t>(r) * m + i] =
          std::max(solver.eigenvalues()[p - 1 - r], 0.0);
    }
  }
  return density;
}

SpectrumDensity cl_psd_field(const CyclicSpectrumModel& model, const FrequencyGrid& grid) {
  const int n = grid.full_band_points();
  SpectrumDensity density{grid, std::vector<double>(static_cast<std::size_t>(n), 0.0),
                          SpectrumBasis::kCl};
  for (int j = 0; j < n; ++j) {
    density.values[static_cast<std::size_t>(j)] =
        std::max(model.cyclic_value(0, grid.lambda_node(j)).real(), 0.0);
  }
  return density;
}

SpectrumDensity decreasing_rearrangement(const SpectrumDensity& density) {
  SpectrumDensity out = density;
  std::sort(out.values.begin(), out.values.end(), std::greater<double>());
  out.basis = SpectrumBasis::kRearranged;
  return out;
}

double total_power(const SpectrumDensity& density) {
  double acc = 0.0;
  for (double v : density.values) acc += v;
  return acc * density.grid.step();
}

double partial_power(const SpectrumDensity& density, double rho) {
  if (rho <= 0.0 || rho >= 1.0) {
    throw std::invalid_argument("partial_power: rho must lie in (0,1)");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < density.values.size(); ++j) {
    if (density.grid.lambda_node(static_cast<int>(j)) >= rho) break;
    acc += density.values[j];
  }
  return acc * density.grid.step();
}

double representation_entropy(const SpectrumDensity& density) {
  const double power = total_power(density);
  if (power <= 0.0) {
    throw std::invalid_argument("representation_entropy: total power must be positive");
  }
  double acc = 0.0;
  for (double v : density.values) {
    const double p = v / power;
    if (p > 0.0) acc += p * std::log(p);
  }
  return -acc * density.grid.step();
}

double spectral_flatness(const CyclicSpectrumModel& model, const FrequencyGrid& grid,
                         double noise_power) {
  const int p = grid.period();
  double log_detic = 0.0;
  double power = 0.0;
  bool singular = false;
  for (int i = 0; i < grid.points_per_subband(); ++i) {
    CyclicPsdMatrix matrix = assemble_cyclic_psd_matrix(model, grid.sigma_node(i));
    matrix.entries += noise_power * Eigen::MatrixXcd::Identity(p, p);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix.entries,
                                                           Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw EigensolveFailure("spectral_flatness: Hermitian eigensolver did not converge");
    }
    for (int q = 0; q < p; ++q) {
      const double lambda = solver.eigenvalues()[q];
      power += lambda;
      if (lambda < 1e-300) {
        singular = true;
      } else {
        log_detic += std::log(lambda);
      }
    }
  }
  if (singular) return 0.0;
  const double floor = std::exp(log_detic * grid.step());
  return floor / (power * grid.step());
}

}  // namespace syncmmse
