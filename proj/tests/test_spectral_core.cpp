#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "syncmmse/cyclic_spectrum.hpp"
#include "syncmmse/signal_models.hpp"

using namespace syncmmse;

namespace {

// Independent scalar evaluation of the composite cyclic spectrum, kept free
// of the library's pulse/smear helpers on purpose.
std::complex<double> oracle_cyclic_value(int period, double delta, double noise_power, int k,
                                         double f) {
  auto pulse = [period](double freq) {
    double w = freq - std::floor(freq);  // [0,1)
    if (w >= 0.5) w -= 1.0;              // principal interval [-1/2, 1/2)
    if (w < -1.0 / period || w >= 1.0 / period) return 0.0;
    return std::sqrt(static_cast<double>(period)) *
           std::cos(0.5 * std::numbers::pi * period * w);
  };
  std::complex<double> smear{1.0, 0.0};
  if (k != 0 && delta != 0.0) {
    const double theta = 2.0 * std::numbers::pi * delta * k / period;
    smear = (1.0 - std::exp(std::complex<double>(0.0, -theta))) /
            std::complex<double>(0.0, theta);
  }
  std::complex<double> value = pulse(f) * pulse(f - static_cast<double>(k) / period) * smear;
  if (k == 0) value += noise_power;
  return value;
}

}  // namespace

TEST_SUITE("frequency_grid") {
  TEST_CASE("midpoint nodes stay inside the open sub-band") {
    const FrequencyGrid grid(4, 32);
    double previous = 0.0;
    for (int i = 0; i < grid.points_per_subband(); ++i) {
      const double sigma = grid.sigma_node(i);
      CHECK(sigma > 0.0);
      CHECK(sigma < 0.25);
      CHECK(sigma > previous);
      if (i > 0) CHECK(sigma - previous == doctest::Approx(grid.step()).epsilon(1e-14));
      previous = sigma;
    }
    CHECK(grid.full_band_points() == 128);
    CHECK(grid.lambda_node(127) < 1.0);
  }

  TEST_CASE("invalid construction") {
    CHECK_THROWS_AS(FrequencyGrid(0, 16), std::invalid_argument);
    CHECK_THROWS_AS(FrequencyGrid(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(validate(QuadratureSpec{8, 1e-9}), std::invalid_argument);
  }
}

TEST_SUITE("assemble_cyclic_psd_matrix") {
  TEST_CASE("white noise assembles to Pz times identity") {
    const WhiteNoiseModel noise(4, 0.7);
    const CyclicPsdMatrix matrix = assemble_cyclic_psd_matrix(noise, 0.1);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        CHECK(matrix.entries(r, c) == std::complex<double>(r == c ? 0.7 : 0.0, 0.0));
      }
    }
  }

  TEST_CASE("composite PAM matrix at sigma=1/8 matches hand expansion") {
    const SrrcPamModel signal(4, 0.0);
    const CompositeModel composite(signal, 1.0);
    const CyclicPsdMatrix matrix = assemble_cyclic_psd_matrix(composite, 0.125);

    CHECK(matrix.entries(0, 0).real() == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(matrix.entries(3, 3).real() == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(matrix.entries(1, 1).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(matrix.entries(2, 2).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(matrix.entries(0, 3).real() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(matrix.entries(3, 0).real() == doctest::Approx(2.0).epsilon(1e-12));
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        if (r != c && !(r == 0 && c == 3) && !(r == 3 && c == 0)) {
          CHECK(std::abs(matrix.entries(r, c)) < 1e-14);
        }
        const std::complex<double> expected =
            oracle_cyclic_value(4, 0.0, 1.0, r - c, 0.125 + 0.25 * r);
        CHECK(std::abs(matrix.entries(r, c) - expected) < 1e-12);
      }
    }
  }

  TEST_CASE("composite PAM eigenvalues are {5,1,1,1} across the sub-band") {
    const SrrcPamModel signal(4, 0.0);
    const CompositeModel composite(signal, 1.0);
    for (double sigma : {1e-9, 0.05, 0.125, 0.2499}) {
      const CyclicPsdMatrix matrix = assemble_cyclic_psd_matrix(composite, sigma);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix.entries,
                                                             Eigen::EigenvaluesOnly);
      REQUIRE(solver.info() == Eigen::Success);
      CHECK(solver.eigenvalues()[3] == doctest::Approx(5.0).epsilon(1e-12));
      for (int p = 0; p < 3; ++p) {
        CHECK(solver.eigenvalues()[p] == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("diagonal equals the PSD samples exactly") {
    const SrrcPamModel signal(4, 0.5);
    const CompositeModel composite(signal, 0.3);
    const double sigma = 0.17 / 4.0;
    const CyclicPsdMatrix matrix = assemble_cyclic_psd_matrix(composite, sigma);
    for (int r = 0; r < 4; ++r) {
      CHECK(matrix.entries(r, r) == composite.cyclic_value(0, sigma + 0.25 * r));
    }
  }

  TEST_CASE("assembled matrices are Hermitian and PSD for random sigma and delta") {
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> pick(0.0, 1.0);
    for (int trial = 0; trial < 64; ++trial) {
      const double delta = pick(rng) * 4.0 / 3.0;
      const double sigma = pick(rng) * 0.25;
      const SrrcPamModel signal(4, delta);
      const CompositeModel composite(signal, 1.0);
      const CyclicPsdMatrix matrix = assemble_cyclic_psd_matrix(composite, sigma);
      const PsdDiagnostics diag = validate_psd(matrix);
      CHECK(diag.hermitian_residual < 1e-12);
      CHECK(diag.min_eigenvalue >= -1e-10 * diag.max_eigenvalue);
    }
  }

  TEST_CASE("a model breaking conjugate symmetry is rejected") {
    struct BrokenModel final : CyclicSpectrumModel {
      int period() const override { return 4; }
      double signal_power() const override { return 1.0; }
      std::complex<double> cyclic_value(int k, double f) const override {
        if (k == 0) return {2.0 + f, 0.0};
        return {0.5 + 0.1 * k, 0.25};  // not conjugate-symmetric in k
      }
    };
    CHECK_THROWS_AS(assemble_cyclic_psd_matrix(BrokenModel{}, 0.1), ModelInconsistent);
  }

  TEST_CASE("sigma outside the sub-band is rejected") {
    const WhiteNoiseModel noise(4, 1.0);
    CHECK_THROWS_AS(assemble_cyclic_psd_matrix(noise, 0.25), std::invalid_argument);
    CHECK_THROWS_AS(assemble_cyclic_psd_matrix(noise, -0.01), std::invalid_argument);
  }
}

TEST_SUITE("spectral_correlation") {
  TEST_CASE("WSS ridge of white noise") {
    const WhiteNoiseModel noise(4, 0.9);
    CHECK(spectral_correlation(noise, 0.0, 0.37) == std::complex<double>(0.9, 0.0));
  }

  TEST_CASE("composite PAM ridge peak at the origin") {
    const SrrcPamModel signal(4, 0.0);
    const CompositeModel composite(signal, 1.0);
    CHECK(spectral_correlation(composite, 0.0, 0.0).real() == doctest::Approx(5.0));
  }

  TEST_CASE("off-ridge cycle frequencies return zero") {
    const SrrcPamModel signal(4, 0.0);
    const CompositeModel composite(signal, 1.0);
    CHECK(spectral_correlation(composite, 1.0 / 3.0, 0.05) == std::complex<double>(0.0, 0.0));
  }
}

TEST_SUITE("integrate_subband") {
  TEST_CASE("constant integrand measures the sub-band") {
    const FrequencyGrid grid(4, 256);
    CHECK(integrate_subband([](double) { return 1.0; }, grid) ==
          doctest::Approx(0.25).epsilon(1e-14));
  }

  TEST_CASE("trace integral recovers signal plus noise power") {
    const SrrcPamModel signal(4, 0.0);
    const CompositeModel composite(signal, 1.0);
    const FrequencyGrid grid(4, 1024);
    const double power = integrate_subband(
        [&](double sigma) {
          return assemble_cyclic_psd_matrix(composite, sigma).entries.trace().real();
        },
        grid);
    CHECK(power == doctest::Approx(2.0).epsilon(1e-9));
  }

  TEST_CASE("log determinant of unit white noise vanishes") {
    const WhiteNoiseModel noise(4, 1.0);
    const FrequencyGrid grid(4, 64);
    const double value = integrate_subband(
        [&](double sigma) {
          const CyclicPsdMatrix matrix = assemble_cyclic_psd_matrix(noise, sigma);
          return std::log(matrix.entries.determinant().real());
        },
        grid);
    CHECK(std::abs(value) < 1e-14);
  }

  TEST_CASE("non-finite integrand raises") {
    const FrequencyGrid grid(4, 16);
    CHECK_THROWS_AS(
        integrate_subband([](double s) { return 1.0 / (s - s); }, grid),
        NonFiniteIntegrand);
  }

  TEST_CASE("midpoint rule converges at second order") {
    const FrequencyGrid coarse(4, 64);
    const FrequencyGrid fine(4, 128);
    auto cubic = [](double s) { return s * s * s; };
    const double exact = std::pow(0.25, 4) / 4.0;
    const double err_coarse = std::abs(integrate_subband(cubic, coarse) - exact);
    const double err_fine = std::abs(integrate_subband(cubic, fine) - exact);
    CHECK(err_coarse / err_fine >= 3.9);
  }
}

TEST_SUITE("validate_psd") {
  TEST_CASE("scaled identity diagnostics") {
    const WhiteNoiseModel noise(4, 0.7);
    const PsdDiagnostics diag = validate_psd(assemble_cyclic_psd_matrix(noise, 0.01));
    CHECK(diag.hermitian_residual == 0.0);
    CHECK(diag.min_eigenvalue == doctest::Approx(0.7).epsilon(1e-12));
  }

  TEST_CASE("noise floor of the composite PAM matrix") {
    const SrrcPamModel signal(4, 0.0);
    const CompositeModel composite(signal, 1.0);
    const PsdDiagnostics diag = validate_psd(assemble_cyclic_psd_matrix(composite, 0.125));
    CHECK(diag.min_eigenvalue == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(diag.max_eigenvalue == doctest::Approx(5.0).epsilon(1e-12));
  }

  TEST_CASE("corrupted entry is flagged") {
    const SrrcPamModel signal(4, 0.0);
    const CompositeModel composite(signal, 1.0);
    CyclicPsdMatrix matrix = assemble_cyclic_psd_matrix(composite, 0.125);
    matrix.entries(0, 3) += std::complex<double>(0.0, 1e-3);
    CHECK(validate_psd(matrix).hermitian_residual > kHermitianTolerance);
  }
}
