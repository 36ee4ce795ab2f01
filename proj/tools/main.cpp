#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "runconfig.hpp"
#include "tdac/errors.hpp"

namespace {

using tdac::cli::RunConfig;

struct Overrides {
  std::optional<int> window;
  std::optional<int> stride;
  std::optional<int> max_lag;
  std::vector<double> degrees;
  std::optional<double> alpha;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
};

void add_common_options(CLI::App* sub, std::string& config_path, Overrides& ov) {
  sub->add_option("--config", config_path, "JSON config file")
      ->check(CLI::ExistingFile);
  sub->add_option("--window", ov.window, "sliding window length in days");
  sub->add_option("--stride", ov.stride, "window step in days");
  sub->add_option("--degree", ov.degrees,
                  "Wasserstein degree(s); repeat for several");
  sub->add_option("--alpha", ov.alpha, "significance level");
  sub->add_option("--max-lag", ov.max_lag, "largest lag order searched");
  sub->add_option("--out", ov.out, "output directory");
  sub->add_option("--seed", ov.seed, "random seed");
}

RunConfig make_config(const std::string& config_path, const Overrides& ov,
                      bool out_is_data_dir) {
  RunConfig cfg;
  if (!config_path.empty()) {
    cfg = tdac::cli::load_config(config_path);
  } else {
    cfg = tdac::cli::default_config();
    tdac::cli::apply_env(cfg);
  }
  if (ov.window) cfg.window = *ov.window;
  if (ov.stride) cfg.stride = *ov.stride;
  if (ov.max_lag) cfg.max_lag = *ov.max_lag;
  if (!ov.degrees.empty()) cfg.degrees = ov.degrees;
  if (ov.alpha) cfg.alpha = *ov.alpha;
  if (ov.out) {
    if (out_is_data_dir) {
      cfg.data_dir = *ov.out;
    } else {
      cfg.out_dir = *ov.out;
    }
  }
  if (ov.seed) cfg.seed = *ov.seed;
  tdac::cli::validate_config(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Market crash detection via sliding-window persistence and "
      "directional-influence testing"};
  app.set_version_flag("--version", "tdac 0.1.0");
  app.require_subcommand(1);

  std::string config_path;
  Overrides ov;
  std::string period;
  std::string network_in;

  CLI::App* ingest = app.add_subcommand(
      "ingest", "Load (or fetch) price CSVs, align them, emit panels");
  CLI::App* wdseries = app.add_subcommand(
      "wdseries", "Per-group distance series from sliding windows");
  CLI::App* compare = app.add_subcommand(
      "compare", "Cross-group distance series on a shared date axis");
  CLI::App* stationarity = app.add_subcommand(
      "stationarity", "Unit-root tests on the distance series per period");
  CLI::App* causality = app.add_subcommand(
      "causality", "Pairwise directional tests and network per period");
  CLI::App* network = app.add_subcommand(
      "network", "Re-render DOT and counts from a stored network JSON");
  CLI::App* report = app.add_subcommand(
      "report", "Summary statistics and run metadata as JSON");
  CLI::App* synth = app.add_subcommand(
      "synth", "Generate a seeded synthetic universe with an injected crash");

  for (CLI::App* sub :
       {ingest, wdseries, compare, stationarity, causality, network, report, synth}) {
    add_common_options(sub, config_path, ov);
  }
  stationarity->add_option("--period", period, "restrict to one period label");
  causality->add_option("--period", period, "restrict to one period label");
  network->add_option("--in", network_in, "network JSON file to re-render");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage message; exit code is ours
    return tdac::cli::kExitUsage;
  }

  try {
    // For synth, --out names the data directory the fixture lands in.
    const RunConfig cfg =
        make_config(config_path, ov, app.got_subcommand(synth));
    if (app.got_subcommand(ingest)) return tdac::cli::cmd_ingest(cfg);
    if (app.got_subcommand(wdseries)) return tdac::cli::cmd_wdseries(cfg);
    if (app.got_subcommand(compare)) return tdac::cli::cmd_compare(cfg);
    if (app.got_subcommand(stationarity)) {
      return tdac::cli::cmd_stationarity(cfg, period);
    }
    if (app.got_subcommand(causality)) return tdac::cli::cmd_causality(cfg, period);
    if (app.got_subcommand(network)) return tdac::cli::cmd_network(cfg, network_in);
    if (app.got_subcommand(report)) return tdac::cli::cmd_report(cfg);
    if (app.got_subcommand(synth)) return tdac::cli::cmd_synth(cfg);
    std::fprintf(stderr, "no subcommand selected\n");
    return tdac::cli::kExitUsage;
  } catch (const tdac::cli::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return tdac::cli::kExitUsage;
  } catch (const tdac::ParseError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return tdac::cli::kExitData;
  } catch (const tdac::ValidationError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return tdac::cli::kExitData;
  } catch (const tdac::AlignmentError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return tdac::cli::kExitData;
  } catch (const tdac::InsufficientDataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return tdac::cli::kExitData;
  } catch (const tdac::CoverageError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return tdac::cli::kExitData;
  } catch (const tdac::SingularDesignError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return tdac::cli::kExitData;
  } catch (const tdac::Error& e) {
    std::fprintf(stderr, "file error: %s\n", e.what());
    return tdac::cli::kExitFile;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "file error: %s\n", e.what());
    return tdac::cli::kExitFile;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return tdac::cli::kExitInternal;
  }
}
