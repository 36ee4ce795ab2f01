// Run configuration for the command-line tool: JSON file + flag overrides,
// with content hashing so artifacts are namespaced by the exact settings
// that produced them.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tdac/causal_network.hpp"
#include "tdac/errors.hpp"
#include "tdac/market_data.hpp"

namespace tdac::cli {

/// Bad or missing configuration field; exits with the usage error code.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Named instrument basket analyzed as one point cloud.
struct GroupSpec {
  std::string name;
  std::vector<std::string> symbols;
};

/// Parameters for the generated crash fixture.
struct SynthSpec {
  int n_days = 500;
  int n_instruments = 20;
  double sigma = 0.01;  // daily return standard deviation
  Date start{2018, 1, 1};
  int crash_day = 300;  // offset of the first burst day
  int crash_days = 20;
  double scale = 5.0;
};

struct FetchConfig {
  std::string endpoint;  // URL template with {symbol}/{start}/{end}
  Date start{2018, 6, 1};
  Date end{2021, 6, 1};
};

struct RunConfig {
  std::filesystem::path data_dir = "data";
  std::filesystem::path out_dir = "out";
  std::vector<GroupSpec> groups;
  CsvColumns columns;
  int window = 30;
  int stride = 1;
  std::vector<double> degrees = {1.0, 2.0};
  double alpha = 0.05;
  int max_lag = 10;
  int d_max = 2;
  std::vector<PeriodSpec> periods;  // defaults: pre-crash / crash / post-crash
  std::optional<PeriodSpec> band;   // shaded date range on plots
  std::uint64_t seed = 42;
  SynthSpec synth;
  std::optional<FetchConfig> fetch;
};

/// Built-in defaults, including the three standard analysis periods.
RunConfig default_config();

/// Semantic checks shared by file loading and flag overrides; throws
/// ConfigError naming the offending field.
void validate_config(const RunConfig& cfg);

/// Defaults overlaid with the JSON file. Unknown keys and malformed values
/// raise ConfigError naming the field. A TDAC_DATA_DIR environment variable
/// overrides data_dir.
RunConfig load_config(const std::filesystem::path& path);

/// Applies the environment override on a config built without a file.
void apply_env(RunConfig& cfg);

/// Effective settings as JSON with sorted keys; hashing input and also
/// emitted next to artifacts for reproducibility.
std::string canonical_json(const RunConfig& cfg);

std::uint64_t fnv1a64(std::string_view bytes);

/// First 12 hex digits of the FNV-1a hash of canonical_json; artifact
/// directory namespace.
std::string config_hash(const RunConfig& cfg);

/// Combined FNV-1a over file contents in the given order (callers sort);
/// identifies the exact input data of a run.
std::string hash_files(const std::vector<std::filesystem::path>& files);

/// Period with the given label, or ConfigError listing the known labels.
const PeriodSpec& find_period(const RunConfig& cfg, const std::string& label);

}  // namespace tdac::cli
