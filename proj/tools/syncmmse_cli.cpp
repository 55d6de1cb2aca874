// syncmmse command line tool: asymptotic bounds for synchronous processing
// of cyclostationary signals, written out as CSV tables, plus Monte Carlo
// and finite-order validation runs.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "syncmmse/errors.hpp"
#include "syncmmse/kl_transform.hpp"
#include "syncmmse/mmse.hpp"
#include "syncmmse/signal_models.hpp"
#include "syncmmse/sim/fresh_filter.hpp"
#include "syncmmse/sim/prediction.hpp"
#include "syncmmse/sim/realization.hpp"

namespace {

using namespace syncmmse;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::string fmt(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

// Parses "a", "a/b", "x,y,z" and "start:step:stop" (inclusive stop).
double parse_scalar(const std::string& token) {
  const auto slash = token.find('/');
  if (slash != std::string::npos) {
    const double num = std::stod(token.substr(0, slash));
    const double den = std::stod(token.substr(slash + 1));
    if (den == 0.0) throw CLI::ValidationError("zero denominator in '" + token + "'");
    return num / den;
  }
  return std::stod(token);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string token;
  try {
    while (std::getline(stream, token, ',')) {
      if (token.empty()) continue;
      const auto c1 = token.find(':');
      if (c1 != std::string::npos) {
        const auto c2 = token.find(':', c1 + 1);
        if (c2 == std::string::npos) {
          throw CLI::ValidationError("range must be start:step:stop in '" + token + "'");
        }
        const double start = parse_scalar(token.substr(0, c1));
        const double step = parse_scalar(token.substr(c1 + 1, c2 - c1 - 1));
        const double stop = parse_scalar(token.substr(c2 + 1));
        if (step <= 0.0) throw CLI::ValidationError("range step must be positive");
        for (double v = start; v <= stop + 0.5 * step; v += step) values.push_back(v);
      } else {
        values.push_back(parse_scalar(token));
      }
    }
  } catch (const std::invalid_argument&) {
    throw CLI::ValidationError("cannot parse numeric list '" + text + "'");
  }
  if (values.empty()) throw CLI::ValidationError("empty numeric list '" + text + "'");
  return values;
}

struct RunConfig {
  std::string command;
  int period = 4;
  std::string delta_spec;
  std::string noise_spec;
  std::string snr_spec;
  std::string snr_db_spec;
  int grid_points = 1024;
  std::size_t samples = 1u << 20;
  int trials = 1;
  std::uint64_t seed = 1;
  int max_order = 64;
  std::string output = "-";
  std::string dump_path;

  std::vector<double> deltas;
  std::vector<double> snrs;

  void resolve(const std::string& cmd, const std::string& default_delta,
               const std::string& default_snr_db) {
    command = cmd;
    if (period < 1) throw CLI::ValidationError("--period must be >= 1");
    if (grid_points < 1) throw CLI::ValidationError("--grid-points must be >= 1");
    if (trials < 1) throw CLI::ValidationError("--trials must be >= 1");

    deltas = parse_list(delta_spec.empty() ? default_delta : delta_spec);
    const double delta_max =
        (period > 1) ? static_cast<double>(period) / (period - 1) : 0.0;
    for (double d : deltas) {
      if (d < -1e-12 || d > delta_max + 1e-9) {
        throw CLI::ValidationError("--delta values must lie in [0, P/(P-1)]");
      }
    }

    const int given = (!noise_spec.empty()) + (!snr_spec.empty()) + (!snr_db_spec.empty());
    if (given > 1) {
      throw CLI::ValidationError(
          "give exactly one of --noise-power, --snr, --snr-db");
    }
    if (!noise_spec.empty()) {
      for (double pz : parse_list(noise_spec)) {
        if (pz <= 0.0) throw CLI::ValidationError("--noise-power values must be positive");
        snrs.push_back(1.0 / pz);
      }
    } else if (!snr_spec.empty()) {
      snrs = parse_list(snr_spec);
    } else if (!snr_db_spec.empty()) {
      for (double db : parse_list(snr_db_spec)) snrs.push_back(std::pow(10.0, db / 10.0));
    } else {
      for (double db : parse_list(default_snr_db)) snrs.push_back(std::pow(10.0, db / 10.0));
    }
    for (double s : snrs) {
      if (s <= 0.0) throw CLI::ValidationError("SNR values must be positive");
    }
  }

  std::string echo() const {
    std::ostringstream line;
    line << "# syncmmse " << command << " period=" << period << " delta=";
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      line << (i ? "," : "") << fmt(deltas[i]);
    }
    line << " snr=";
    for (std::size_t i = 0; i < snrs.size(); ++i) line << (i ? "," : "") << fmt(snrs[i]);
    line << " grid_points=" << grid_points << " samples=" << samples
         << " trials=" << trials << " seed=" << seed << " max_order=" << max_order;
    return line.str();
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw CLI::ValidationError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

double single_snr(const RunConfig& config) {
  if (config.snrs.size() != 1) {
    throw CLI::ValidationError(config.command + " expects a single noise level");
  }
  return config.snrs.front();
}

void cmd_spectra(const RunConfig& config) {
  Output out(config.output);
  const double pz = 1.0 / single_snr(config);
  const FrequencyGrid grid(config.period, config.grid_points);
  out.stream() << config.echo() << "\n";
  out.stream() << "delta,lambda,cl_psd,kl_psd,cl_psd_sorted,kl_psd_sorted\n";
  for (double delta : config.deltas) {
    const SrrcPamModel signal(config.period, delta);
    const CompositeModel composite(signal, pz);
    const SpectrumDensity kl = kl_psd_field(composite, grid);
    const SpectrumDensity cl = cl_psd_field(composite, grid);
    const SpectrumDensity kl_sorted = decreasing_rearrangement(kl);
    const SpectrumDensity cl_sorted = decreasing_rearrangement(cl);
    for (int j = 0; j < grid.full_band_points(); ++j) {
      const std::size_t idx = static_cast<std::size_t>(j);
      out.stream() << fmt(delta) << ',' << fmt(grid.lambda_node(j)) << ','
                   << fmt(cl.values[idx]) << ',' << fmt(kl.values[idx]) << ','
                   << fmt(cl_sorted.values[idx]) << ',' << fmt(kl_sorted.values[idx]) << "\n";
    }
  }
}

void cmd_entropy(const RunConfig& config) {
  Output out(config.output);
  const double pz = 1.0 / single_snr(config);
  const FrequencyGrid grid(config.period, config.grid_points);
  out.stream() << config.echo() << "\n";
  out.stream() << "delta,h_kl,h_cl\n";
  for (double delta : config.deltas) {
    const SrrcPamModel signal(config.period, delta);
    const CompositeModel composite(signal, pz);
    const double h_kl = representation_entropy(kl_psd_field(composite, grid));
    const double h_cl = representation_entropy(cl_psd_field(composite, grid));
    out.stream() << fmt(delta) << ',' << fmt(h_kl) << ',' << fmt(h_cl) << "\n";
  }
}

void cmd_mmse(const RunConfig& config) {
  Output out(config.output);
  if (config.deltas.size() != 1) {
    throw CLI::ValidationError("mmse expects a single --delta");
  }
  const SrrcPamModel signal(config.period, config.deltas.front());
  const FrequencyGrid grid(config.period, config.grid_points);
  out.stream() << config.echo() << "\n";
  out.stream() << "snr,mmse_nc,mmse_c,mmse_p,mmse_nc_wss,mmse_c_wss,mmse_p_wss\n";
  for (double snr : config.snrs) {
    const MmseReport r = mmse_report(AdditiveScenario::from_snr(signal, snr), grid);
    out.stream() << fmt(snr) << ',' << fmt(r.mmse_nc) << ',' << fmt(r.mmse_c) << ','
                 << fmt(r.mmse_p) << ',' << fmt(r.mmse_nc_wss) << ',' << fmt(r.mmse_c_wss)
                 << ',' << fmt(r.mmse_p_wss) << "\n";
  }
}

void cmd_highsnr(const RunConfig& config) {
  Output out(config.output);
  if (config.deltas.size() != 1) {
    throw CLI::ValidationError("highsnr expects a single --delta");
  }
  const SrrcPamModel signal(config.period, config.deltas.front());
  const FrequencyGrid grid(config.period, config.grid_points);
  const double band = occupied_band(kl_psd_field(signal, grid));
  out.stream() << config.echo() << "\n";
  out.stream() << "snr_db,mode,mmse_times_snr,asymptote\n";
  for (double snr : config.snrs) {
    const double snr_db = 10.0 * std::log10(snr);
    const AdditiveScenario sc = AdditiveScenario::from_snr(signal, snr);
    const double nc = mmse_noncausal(sc, grid);
    const double c = mmse_causal(sc, grid);
    const double p = mmse_prediction(sc, grid).value;
    // Both columns carry the MMSE*SNR metric.
    out.stream() << fmt(snr_db) << ",noncausal," << fmt(nc * snr) << ','
                 << fmt(high_snr_asymptote(HighSnrMode::kNoncausal, band, snr) * snr) << "\n";
    out.stream() << fmt(snr_db) << ",causal," << fmt(c * snr) << ','
                 << fmt(high_snr_asymptote(HighSnrMode::kCausal, band, snr) * snr) << "\n";
    out.stream() << fmt(snr_db) << ",prediction," << fmt(p * snr) << ','
                 << fmt(high_snr_asymptote(HighSnrMode::kPrediction, band, snr) * snr) << "\n";
  }
}

void cmd_syncgain(const RunConfig& config) {
  Output out(config.output);
  const double snr = single_snr(config);
  const FrequencyGrid grid(config.period, config.grid_points);
  const double delta_max = static_cast<double>(config.period) / (config.period - 1);
  out.stream() << config.echo() << "\n";
  out.stream() << "delta_normalized,inv_zeta_nc,inv_zeta_c,inv_zeta_p\n";
  for (double delta : config.deltas) {
    const SrrcPamModel signal(config.period, delta);
    const SyncGains g = sync_gains(AdditiveScenario::from_snr(signal, snr), grid);
    out.stream() << fmt(delta / delta_max) << ',' << fmt(1.0 / g.zeta_nc) << ','
                 << fmt(1.0 / g.zeta_c) << ',' << fmt(1.0 / g.zeta_p) << "\n";
  }
}

void cmd_simulate(const RunConfig& config) {
  Output out(config.output);
  if (config.deltas.size() != 1) {
    throw CLI::ValidationError("simulate expects a single --delta");
  }
  if (config.samples == 0 || config.samples % static_cast<std::size_t>(config.period) != 0) {
    throw CLI::ValidationError("--samples must be a positive multiple of --period");
  }
  const SrrcPamModel signal(config.period, config.deltas.front());
  const FrequencyGrid grid(config.period, config.grid_points);
  const Pulse pulse = pulse_time_taps(config.period, 24 * config.period);
  out.stream() << config.echo() << "\n";
  out.stream() << "snr,empirical_mse,analytic_mmse,rel_error\n";
  bool dumped = false;
  for (double snr : config.snrs) {
    const AdditiveScenario sc = AdditiveScenario::from_snr(signal, snr);
    const FreshFilterBank bank = design_cwf(sc, config.samples);
    double mse_acc = 0.0;
    for (int t = 0; t < config.trials; ++t) {
      const Realization r = generate_realization(
          signal, sc.noise_power(), config.samples,
          trial_seed(config.seed, static_cast<std::uint64_t>(t)), &pulse);
      if (!config.dump_path.empty() && !dumped) {
        dump_realization(r, config.period, signal.delta(), sc.noise_power(),
                         config.dump_path);
        dumped = true;
      }
      const auto estimate = apply_fresh(bank, r.x);
      mse_acc += empirical_mse(r.d, estimate, static_cast<std::size_t>(pulse.half_length));
    }
    const double empirical = mse_acc / config.trials;
    const double analytic = mmse_noncausal(sc, grid);
    out.stream() << fmt(snr) << ',' << fmt(empirical) << ',' << fmt(analytic) << ','
                 << fmt(empirical / analytic - 1.0) << "\n";
  }
}

void cmd_predict(const RunConfig& config) {
  Output out(config.output);
  if (config.deltas.size() != 1) {
    throw CLI::ValidationError("predict expects a single --delta");
  }
  if (config.max_order < 1 || config.max_order > 512) {
    throw CLI::ValidationError("--max-order must lie in [1, 512]");
  }
  const double snr = single_snr(config);
  const SrrcPamModel signal(config.period, config.deltas.front());
  const AdditiveScenario sc = AdditiveScenario::from_snr(signal, snr);
  const FrequencyGrid grid(config.period, config.grid_points);
  const Pulse pulse = pulse_time_taps(config.period, 24 * config.period);
  const double bound = mmse_prediction(sc, grid).value;
  out.stream() << config.echo() << "\n";
  out.stream() << "N,finite_mmse,bound\n";
  for (int order = 1; order <= config.max_order; ++order) {
    double log_acc = 0.0;
    for (int phase = 0; phase < config.period; ++phase) {
      log_acc +=
          std::log(finite_prediction_mmse(signal, sc.noise_power(), pulse, order, phase));
    }
    const double geo_mean = std::exp(log_acc / config.period);
    out.stream() << order << ',' << fmt(geo_mean) << ',' << fmt(bound) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic bounds and simulation lab for synchronous processing of "
               "cyclostationary signals"};
  app.require_subcommand(1);

  RunConfig config;
  auto add_common = [&config](CLI::App* cmd) {
    cmd->add_option("--period", config.period, "Cycle period P (samples)");
    cmd->add_option("--delta", config.delta_spec,
                    "Max random delay; list or start:step:stop, fractions allowed");
    cmd->add_option("--noise-power", config.noise_spec, "Noise power list");
    cmd->add_option("--snr", config.snr_spec, "Linear SNR list");
    cmd->add_option("--snr-db", config.snr_db_spec, "SNR list in dB");
    cmd->add_option("--grid-points", config.grid_points, "Quadrature nodes per sub-band");
    cmd->add_option("--samples", config.samples, "Samples per realization");
    cmd->add_option("--trials", config.trials, "Monte Carlo trials");
    cmd->add_option("--seed", config.seed, "Master seed");
    cmd->add_option("--output", config.output, "Output CSV path, '-' for stdout");
  };

  CLI::App* spectra = app.add_subcommand("spectra", "CL/KL spectral densities over the band");
  add_common(spectra);
  CLI::App* entropy = app.add_subcommand("entropy", "Representation entropy over a delay sweep");
  add_common(entropy);
  CLI::App* mmse = app.add_subcommand("mmse", "MMSE bounds and WSS baselines over SNR");
  add_common(mmse);
  CLI::App* highsnr = app.add_subcommand("highsnr", "High-SNR scaling and asymptotes");
  add_common(highsnr);
  CLI::App* syncgain = app.add_subcommand("syncgain", "Synchronous gains over a delay sweep");
  add_common(syncgain);
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo smoothing validation");
  add_common(simulate);
  simulate->add_option("--dump", config.dump_path,
                       "Dump the first realization (.iq and .txt sidecar)");
  CLI::App* predict = app.add_subcommand("predict", "Finite-order prediction vs the bound");
  add_common(predict);
  predict->add_option("--max-order", config.max_order, "Largest predictor order");

  try {
    app.parse(argc, argv);

    const std::string default_sweep_deltas = [&config] {
      // 64 evenly spaced delays over [0, P/(P-1)].
      const double delta_max = static_cast<double>(config.period) /
                               std::max(config.period - 1, 1);
      std::ostringstream spec;
      spec << "0:" << fmt(delta_max / 63.0) << ":" << fmt(delta_max);
      return spec.str();
    }();

    if (spectra->parsed()) {
      if (config.snr_spec.empty() && config.snr_db_spec.empty() && config.noise_spec.empty()) {
        config.noise_spec = "1";
      }
      config.resolve("spectra", "0", "0");
      cmd_spectra(config);
    } else if (entropy->parsed()) {
      if (config.snr_spec.empty() && config.snr_db_spec.empty() && config.noise_spec.empty()) {
        config.noise_spec = "1";
      }
      config.resolve("entropy", default_sweep_deltas, "0");
      cmd_entropy(config);
    } else if (mmse->parsed()) {
      if (config.snr_spec.empty() && config.snr_db_spec.empty() && config.noise_spec.empty()) {
        config.snr_spec = "0.1:0.1:2";
      }
      config.resolve("mmse", "0", "0");
      cmd_mmse(config);
    } else if (highsnr->parsed()) {
      config.resolve("highsnr", "0", "20:1:50");
      cmd_highsnr(config);
    } else if (syncgain->parsed()) {
      config.resolve("syncgain", default_sweep_deltas, "30");
      cmd_syncgain(config);
    } else if (simulate->parsed()) {
      if (config.snr_spec.empty() && config.snr_db_spec.empty() && config.noise_spec.empty()) {
        config.snr_spec = "0.5,1,2";
      }
      config.resolve("simulate", "0", "0");
      cmd_simulate(config);
    } else if (predict->parsed()) {
      if (config.snr_spec.empty() && config.snr_db_spec.empty() && config.noise_spec.empty()) {
        config.snr_spec = "1";
      }
      config.resolve("predict", "0", "0");
      cmd_predict(config);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfig;
  } catch (const CLI::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const syncmmse::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}
