#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <numeric>

#include "syncmmse/mmse.hpp"
#include "syncmmse/signal_models.hpp"
#include "syncmmse/sim/estimator.hpp"
#include "syncmmse/sim/fresh_filter.hpp"
#include "syncmmse/sim/prediction.hpp"
#include "syncmmse/sim/realization.hpp"

using namespace syncmmse;

namespace {

double mean_power(const std::vector<std::complex<double>>& v) {
  double acc = 0.0;
  for (const std::complex<double>& s : v) acc += std::norm(s);
  return acc / static_cast<double>(v.size());
}

double max_rel_diff(const std::vector<std::complex<double>>& a,
                    const std::vector<std::complex<double>>& b) {
  double scale = 0.0;
  for (const std::complex<double>& s : b) scale = std::max(scale, std::abs(s));
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst / scale;
}

}  // namespace

TEST_SUITE("realization generation") {
  TEST_CASE("bit-exact reruns and seed sensitivity") {
    const SrrcPamModel model(4, 4.0 / 3.0);
    const Realization a = generate_realization(model, 1.0, 1 << 12, 42);
    const Realization b = generate_realization(model, 1.0, 1 << 12, 42);
    CHECK(a.epsilon == b.epsilon);
    CHECK(a.d == b.d);
    CHECK(a.z == b.z);
    CHECK(a.x == b.x);
    const Realization c = generate_realization(model, 1.0, 1 << 12, 43);
    CHECK(a.x != c.x);
    CHECK(trial_seed(1, 0) != trial_seed(1, 1));
  }

  TEST_CASE("x is d plus z exactly") {
    const SrrcPamModel model(4, 0.0);
    const Realization r = generate_realization(model, 0.5, 1 << 12, 9);
    for (std::size_t i = 0; i < r.n_samples; ++i) CHECK(r.x[i] == r.d[i] + r.z[i]);
    CHECK(r.epsilon == 0.0);
  }

  TEST_CASE("empirical powers match the model") {
    const SrrcPamModel model(4, 0.0);
    const Realization r = generate_realization(model, 1.0, 1 << 20, 1);
    CHECK(mean_power(r.d) == doctest::Approx(1.0).epsilon(0.02));
    CHECK(mean_power(r.x) == doctest::Approx(2.0).epsilon(0.02));

    const SrrcPamModel smeared(4, 4.0 / 3.0);
    const Realization s = generate_realization(smeared, 1.0, 1 << 18, 5);
    CHECK(s.epsilon > 0.0);
    CHECK(s.epsilon < 4.0 / 3.0);
    CHECK(mean_power(s.d) == doctest::Approx(1.0).epsilon(0.03));
  }

  TEST_CASE("input validation") {
    const SrrcPamModel model(4, 0.0);
    CHECK_THROWS_AS(generate_realization(model, 1.0, 1 << 12 | 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_realization(model, 1.0, 64, 1), std::invalid_argument);
  }

  TEST_CASE("raw dump round trip") {
    const SrrcPamModel model(4, 0.0);
    const Realization r = generate_realization(model, 1.0, 1 << 10, 3);
    const std::string base = "/tmp/syncmmse_dump_test";
    dump_realization(r, 4, 0.0, 1.0, base);

    std::ifstream iq(base + ".iq", std::ios::binary);
    REQUIRE(iq.good());
    unsigned char bytes[16];
    iq.read(reinterpret_cast<char*>(bytes), 16);
    auto decode = [&bytes](int offset) {
      std::uint64_t bits = 0;
      for (int b = 7; b >= 0; --b) bits = (bits << 8) | bytes[offset + b];
      double value;
      std::memcpy(&value, &bits, sizeof(value));
      return value;
    };
    CHECK(decode(0) == r.x[0].real());
    CHECK(decode(8) == r.x[0].imag());
    iq.seekg(0, std::ios::end);
    CHECK(static_cast<std::size_t>(iq.tellg()) == 16 * r.n_samples);

    std::ifstream sidecar(base + ".txt");
    std::string line;
    std::getline(sidecar, line);
    CHECK(line.find("P=4") != std::string::npos);
    CHECK(line.find("n_samples=1024") != std::string::npos);
    std::remove((base + ".iq").c_str());
    std::remove((base + ".txt").c_str());
  }
}

TEST_SUITE("cyclic wiener filter routes") {
  TEST_CASE("FRESH and KL outputs agree on the tested tuples") {
    struct Tuple {
      int period;
      double delta;
      double snr;
    };
    for (const Tuple& t : {Tuple{4, 0.0, 1.0}, Tuple{4, 4.0 / 3.0, 1.0}, Tuple{2, 0.0, 2.0}}) {
      const SrrcPamModel model(t.period, t.delta);
      const AdditiveScenario sc = AdditiveScenario::from_snr(model, t.snr);
      const Realization r = generate_realization(model, sc.noise_power(), 1 << 14, 7);
      const FreshFilterBank bank = design_cwf(sc, r.n_samples);
      const auto fresh = apply_fresh(bank, r.x);
      const auto kl = apply_kl_wiener(sc, r.x);
      CHECK(max_rel_diff(fresh, kl) < 1e-8);
    }
  }

  TEST_CASE("zero input gives zero output") {
    const SrrcPamModel model(4, 0.0);
    const AdditiveScenario sc(model, 1.0);
    const std::vector<std::complex<double>> zeros(1 << 10, {0.0, 0.0});
    const FreshFilterBank bank = design_cwf(sc, zeros.size());
    for (const std::complex<double>& s : apply_fresh(bank, zeros)) {
      CHECK(std::abs(s) == 0.0);
    }
    for (const std::complex<double>& s : apply_kl_wiener(sc, zeros)) {
      CHECK(std::abs(s) < 1e-18);
    }
  }

  TEST_CASE("WSS input collapses the bank to the classical Wiener filter") {
    const SrrcPamModel model(4, 4.0 / 3.0);
    const AdditiveScenario sc(model, 1.0);
    const FreshFilterBank bank = design_cwf(sc, 1024);
    for (int q = 1; q < 4; ++q) {
      double worst = 0.0;
      for (const std::complex<double>& w : bank.branches[static_cast<std::size_t>(q)]) {
        worst = std::max(worst, std::abs(w));
      }
      CHECK(worst < 1e-10);
    }
    for (std::size_t m = 0; m < bank.n_dft; m += 37) {
      const double f = static_cast<double>(m) / static_cast<double>(bank.n_dft);
      const double s = std::norm(pulse_frequency_response(4, f));
      CHECK(std::abs(bank.branches[0][m] - s / (s + 1.0)) < 1e-10);
    }
  }

  TEST_CASE("zero-delay branch gain at f=1/8") {
    const SrrcPamModel model(4, 0.0);
    const AdditiveScenario sc(model, 1.0);
    const FreshFilterBank bank = design_cwf(sc, 1024);
    CHECK(bank.branches[0][128].real() == doctest::Approx(0.4).epsilon(1e-12));
  }

  TEST_CASE("heavy noise drives every branch to zero") {
    const SrrcPamModel model(4, 0.0);
    const AdditiveScenario sc(model, 1e9);
    const FreshFilterBank bank = design_cwf(sc, 256);
    for (const auto& branch : bank.branches) {
      for (const std::complex<double>& w : branch) CHECK(std::abs(w) < 1e-8);
    }
  }

  TEST_CASE("length mismatches are rejected") {
    const SrrcPamModel model(4, 0.0);
    const AdditiveScenario sc(model, 1.0);
    const FreshFilterBank bank = design_cwf(sc, 256);
    const std::vector<std::complex<double>> bad(300, {0.0, 0.0});
    CHECK_THROWS_AS(apply_fresh(bank, bad), LengthMismatch);
    const std::vector<std::complex<double>> odd(301, {0.0, 0.0});
    CHECK_THROWS_AS(apply_kl_wiener(sc, odd), LengthMismatch);
  }

  TEST_CASE("empirical smoothing error approaches the bound") {
    const SrrcPamModel model(4, 0.0);
    const AdditiveScenario sc(model, 1.0);
    const Pulse pulse = pulse_time_taps(4, 96);
    const FreshFilterBank bank = design_cwf(sc, 1 << 18);
    double acc = 0.0;
    for (std::uint64_t trial = 0; trial < 2; ++trial) {
      const Realization r =
          generate_realization(model, 1.0, 1 << 18, trial_seed(11, trial), &pulse);
      const auto estimate = apply_fresh(bank, r.x);
      acc += empirical_mse(r.d, estimate, static_cast<std::size_t>(pulse.half_length));
    }
    CHECK(acc / 2.0 == doctest::Approx(0.2).epsilon(0.05));
  }
}

TEST_SUITE("empirical_mse") {
  TEST_CASE("identical sequences and zero estimator") {
    const SrrcPamModel model(4, 0.0);
    const Realization r = generate_realization(model, 0.0, 1 << 16, 2);
    CHECK(empirical_mse(r.d, r.d, 8) == 0.0);
    const std::vector<std::complex<double>> zeros(r.n_samples, {0.0, 0.0});
    CHECK(empirical_mse(r.d, zeros, 128) == doctest::Approx(1.0).epsilon(0.05));
  }

  TEST_CASE("rejects mismatched lengths") {
    const std::vector<std::complex<double>> a(8), b(9);
    CHECK_THROWS_AS(empirical_mse(a, b, 0), LengthMismatch);
    CHECK_THROWS_AS(empirical_mse(a, a, 4), LengthMismatch);
  }
}

TEST_SUITE("autocorrelation kernel") {
  TEST_CASE("periodicity, average power and support") {
    const SrrcPamModel model(4, 0.0);
    const Pulse pulse = pulse_time_taps(4, 96);
    double acc = 0.0;
    for (int n = 0; n < 4; ++n) {
      acc += autocorrelation_kernel(model, 1.0, pulse, n, 0).real();
      for (int m : {-5, 0, 3, 11}) {
        CHECK(autocorrelation_kernel(model, 1.0, pulse, n + 4, m) ==
              autocorrelation_kernel(model, 1.0, pulse, n, m));
      }
    }
    CHECK(acc / 4.0 == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(autocorrelation_kernel(model, 1.0, pulse, 0, 2 * 96 + 5).real() == 0.0);
  }

  TEST_CASE("nonzero delay is rejected") {
    const SrrcPamModel model(4, 0.5);
    const Pulse pulse = pulse_time_taps(4, 96);
    CHECK_THROWS_AS(autocorrelation_kernel(model, 1.0, pulse, 0, 0), UnsupportedDelay);
    CHECK_THROWS_AS(finite_prediction_mmse(model, 1.0, pulse, 4, 0), UnsupportedDelay);
  }
}

TEST_SUITE("finite-order predictor") {
  TEST_CASE("order zero returns the variance; phase average is 2") {
    const SrrcPamModel model(4, 0.0);
    const Pulse pulse = pulse_time_taps(4, 96);
    double acc = 0.0;
    for (int phase = 0; phase < 4; ++phase) {
      const double v = finite_prediction_mmse(model, 1.0, pulse, 0, phase);
      CHECK(v == doctest::Approx(autocorrelation_kernel(model, 1.0, pulse, phase, 0).real())
                     .epsilon(1e-12));
      acc += v;
    }
    CHECK(acc / 4.0 == doctest::Approx(2.0).epsilon(1e-6));
  }

  TEST_CASE("errors are nonincreasing in the order and bounded by the limit") {
    const SrrcPamModel model(4, 0.0);
    const Pulse pulse = pulse_time_taps(4, 96);
    const double bound = 1.4953487812212205;
    for (int phase = 0; phase < 4; ++phase) {
      double previous = finite_prediction_mmse(model, 1.0, pulse, 0, phase);
      for (int order = 1; order <= 32; ++order) {
        const double current = finite_prediction_mmse(model, 1.0, pulse, order, phase);
        CHECK(current <= previous + 1e-12);
        previous = current;
      }
    }
    // Individual phases converge to phase-dependent limits; only their
    // geometric mean over one period is bounded by the asymptotic value.
    double log_acc = 0.0;
    for (int phase = 0; phase < 4; ++phase) {
      log_acc += std::log(finite_prediction_mmse(model, 1.0, pulse, 64, phase));
    }
    const double geo_mean = std::exp(log_acc / 4.0);
    CHECK(geo_mean >= bound - 1e-9);
    CHECK(geo_mean == doctest::Approx(bound).epsilon(0.01));
  }

  TEST_CASE("order bounds are enforced") {
    const SrrcPamModel model(4, 0.0);
    const Pulse pulse = pulse_time_taps(4, 96);
    CHECK_THROWS_AS(finite_prediction_mmse(model, 1.0, pulse, -1, 0), std::invalid_argument);
    CHECK_THROWS_AS(finite_prediction_mmse(model, 1.0, pulse, 513, 0), std::invalid_argument);
    CHECK_THROWS_AS(finite_prediction_mmse(model, 0.0, pulse, 4, 0), std::invalid_argument);
  }
}

TEST_SUITE("cyclic spectrum estimator") {
  TEST_CASE("white noise PSD slice is flat and unbiased") {
    const SrrcPamModel model(4, 0.0);
    // Noise-only record: zero out the signal via a zero-symbol trick is not
    // available, so synthesize noise directly from the generator with the
    // signal removed.
    const Realization r = generate_realization(model, 0.7, 257 * 2048, 21);
    std::vector<std::complex<double>> noise(r.z);
    const CyclicSpectrumEstimate estimate = estimate_cyclic_spectrum(noise, 4, 4096);
    CHECK(estimate.n_segments >= 256);
    double mean = 0.0;
    double rms = 0.0;
    for (const std::complex<double>& v : estimate.ridges[0].values) {
      mean += v.real();
      rms += (v.real() - 0.7) * (v.real() - 0.7);
    }
    mean /= static_cast<double>(estimate.ridges[0].values.size());
    rms = std::sqrt(rms / static_cast<double>(estimate.ridges[0].values.size()));
    CHECK(mean == doctest::Approx(0.7).epsilon(0.03));
    CHECK(rms / 0.7 < 0.10);
  }

  TEST_CASE("ridge peak of the zero-delay composite") {
    const SrrcPamModel model(4, 0.0);
    const Realization r = generate_realization(model, 1.0, 1 << 20, 31);
    const CyclicSpectrumEstimate estimate = estimate_cyclic_spectrum(r.x, 4, 4096);
    CHECK(estimate.ridges[0].values[0].real() == doctest::Approx(5.0).epsilon(0.1));
  }

  TEST_CASE("off-comb offsets stay at the noise level") {
    const SrrcPamModel model(4, 0.0);
    const Realization r = generate_realization(model, 1.0, 1 << 20, 37);
    const CrossDensityEstimate off = cyclic_cross_density(r.x, 4096, 4096 / 3);
    std::size_t exceed = 0;
    for (std::size_t m = 0; m < off.values.size(); ++m) {
      if (std::abs(off.values[m]) > 3.0 * off.std_error[m]) ++exceed;
    }
    CHECK(static_cast<double>(exceed) / static_cast<double>(off.values.size()) < 0.02);
  }

  TEST_CASE("cycle ridge vanishes in the maximum-delay (WSS) limit") {
    // Each trial draws a fresh delay; ensemble averaging over trials is
    // what kills the k!=0 cyclic correlation in the WSS limit, while the
    // per-trial magnitude stays at full strength.
    struct Level {
      double coherent;       // |average over trials of the band integral|
      double avg_magnitude;  // average over trials of |band integral|
    };
    auto ridge_level = [](const SrrcPamModel& model, std::uint64_t seed) {
      const int trials = 48;
      std::complex<double> mean{0.0, 0.0};
      double magnitude = 0.0;
      for (int t = 0; t < trials; ++t) {
        const Realization r = generate_realization(
            model, 1.0, 64 * 2048, trial_seed(seed, static_cast<std::uint64_t>(t)));
        const CyclicSpectrumEstimate e = estimate_cyclic_spectrum(r.x, 4, 4096);
        std::complex<double> integral{0.0, 0.0};
        for (const std::complex<double>& v : e.ridges[1].values) integral += v;
        integral /= 4096.0;
        mean += integral;
        magnitude += std::abs(integral);
      }
      return Level{std::abs(mean) / trials, magnitude / trials};
    };
    const Level cs = ridge_level(SrrcPamModel(4, 0.0), 101);
    const Level wss = ridge_level(SrrcPamModel(4, 4.0 / 3.0), 101);
    // Analytic band integral of the k=1 ridge at delta=0 is 1/pi.
    CHECK(cs.coherent == doctest::Approx(1.0 / std::numbers::pi).epsilon(0.1));
    CHECK(cs.avg_magnitude / cs.coherent < 1.5);
    CHECK(wss.avg_magnitude > 0.5 * cs.avg_magnitude);  // per-trial ridge intact
    CHECK(wss.coherent < 0.35 * cs.coherent);           // ensemble mean collapses
    CHECK(wss.avg_magnitude / wss.coherent > 3.0);
  }

  TEST_CASE("segment derotation keeps ridge phases coherent at odd hops") {
    // n_fft = 2052 makes the hop (1026) not a multiple of the cycle period,
    // so segments carry nontrivial cyclic phases; without derotation the
    // averaged k=1 ridge would cancel instead of integrating to 1/pi.
    const SrrcPamModel model(4, 0.0);
    const Realization r = generate_realization(model, 1.0, 1 << 17, 51);
    const CyclicSpectrumEstimate estimate = estimate_cyclic_spectrum(r.x, 4, 2052);
    std::complex<double> integral{0.0, 0.0};
    for (const std::complex<double>& v : estimate.ridges[1].values) integral += v;
    integral /= 2052.0;
    CHECK(std::abs(integral) == doctest::Approx(1.0 / std::numbers::pi).epsilon(0.2));
    CHECK(integral.real() > 5.0 * std::abs(integral.imag()));  // phase ~ 0
  }

  TEST_CASE("too little data is rejected") {
    const std::vector<std::complex<double>> x(4096 * 3, {1.0, 0.0});
    CHECK_THROWS_AS(estimate_cyclic_spectrum(x, 4, 4096), InsufficientData);
    CHECK_THROWS_AS(estimate_cyclic_spectrum(x, 3, 4096), std::invalid_argument);
  }
}

TEST_SUITE("time shift invariance") {
  TEST_CASE("eigenvalues are untouched by the polyphase phase matrix") {
    const SrrcPamModel signal(4, 0.0);
    const CompositeModel composite(signal, 1.0);
    const FrequencyGrid grid(4, 64);
    CHECK(timeshift_spectrum_check(composite, 0, grid) == 0.0);
    CHECK(timeshift_spectrum_check(composite, 4, grid) < 1e-12);  // D = I up to rounding
    CHECK(timeshift_spectrum_check(composite, 1, grid) < 1e-10);
    CHECK(timeshift_spectrum_check(composite, 3, grid) < 1e-10);
  }
}
