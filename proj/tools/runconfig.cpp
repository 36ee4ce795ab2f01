#include "runconfig.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tdac::cli {
namespace {

using nlohmann::json;

Date parse_date_field(const json& j, const std::string& field) {
  if (!j.is_string()) throw ConfigError("config field '" + field + "' must be an ISO date string");
  const auto d = Date::try_parse(j.get<std::string>());
  if (!d) throw ConfigError("config field '" + field + "': bad date '" + j.get<std::string>() + "'");
  return *d;
}

void expect_keys(const json& obj, const std::string& where,
                 const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.contains(key)) {
      throw ConfigError("unknown config field '" + (where.empty() ? key : where + "." + key) + "'");
    }
  }
}

PeriodSpec parse_period(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError("config field '" + where + "' must be an object");
  expect_keys(j, where, {"label", "start", "end"});
  PeriodSpec p;
  if (!j.contains("label") || !j.at("label").is_string()) {
    throw ConfigError("config field '" + where + ".label' must be a string");
  }
  p.label = j.at("label").get<std::string>();
  if (!j.contains("start") || !j.contains("end")) {
    throw ConfigError("config field '" + where + "' needs start and end dates");
  }
  p.start = parse_date_field(j.at("start"), where + ".start");
  p.end = parse_date_field(j.at("end"), where + ".end");
  if (!(p.start < p.end)) {
    throw ConfigError("config field '" + where + "': start must precede end");
  }
  return p;
}

}  // namespace

RunConfig default_config() {
  RunConfig cfg;
  cfg.periods = {
      {"pre-crash", Date{2018, 6, 1}, Date{2019, 6, 1}},
      {"crash", Date{2019, 6, 1}, Date{2020, 6, 1}},
      {"post-crash", Date{2020, 6, 1}, Date{2021, 6, 1}},
  };
  cfg.band = PeriodSpec{"crash-event", Date{2020, 2, 1}, Date{2020, 5, 1}};
  return cfg;
}

void validate_config(const RunConfig& cfg) {
  if (cfg.window < 2) throw ConfigError("config field 'window' must be >= 2");
  if (cfg.stride < 1) throw ConfigError("config field 'stride' must be >= 1");
  if (cfg.degrees.empty()) throw ConfigError("config field 'degrees' must be non-empty");
  for (double d : cfg.degrees) {
    if (d < 1.0) throw ConfigError("config field 'degrees': values must be >= 1");
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw ConfigError("config field 'alpha' must lie in (0, 1)");
  }
  if (cfg.max_lag < 1) throw ConfigError("config field 'max_lag' must be >= 1");
  if (cfg.d_max < 0) throw ConfigError("config field 'd_max' must be >= 0");
  if (cfg.periods.empty()) throw ConfigError("config field 'periods' must be non-empty");
  std::set<std::string> labels;
  for (const auto& p : cfg.periods) {
    if (!(p.start < p.end)) {
      throw ConfigError("config field 'periods': start must precede end in '" + p.label + "'");
    }
    if (!labels.insert(p.label).second) {
      throw ConfigError("config field 'periods': duplicate label '" + p.label + "'");
    }
  }
  if (cfg.band && !(cfg.band->start < cfg.band->end)) {
    throw ConfigError("config field 'band': start must precede end");
  }
  std::set<std::string> names;
  for (const auto& g : cfg.groups) {
    if (g.symbols.empty()) {
      throw ConfigError("config field 'groups': group '" + g.name + "' has no symbols");
    }
    if (!names.insert(g.name).second) {
      throw ConfigError("config field 'groups': duplicate name '" + g.name + "'");
    }
  }
  const SynthSpec& s = cfg.synth;
  if (s.n_days < 2 || s.n_instruments < 1) {
    throw ConfigError("config field 'synth': n_days >= 2 and n_instruments >= 1 required");
  }
  if (s.sigma <= 0.0) throw ConfigError("config field 'synth.sigma' must be positive");
  if (s.crash_day < 0 || s.crash_days < 1 || s.crash_day + s.crash_days > s.n_days) {
    throw ConfigError("config field 'synth': crash window must fit inside n_days");
  }
  if (s.scale <= 0.0) throw ConfigError("config field 'synth.scale' must be positive");
  if (cfg.fetch && !(cfg.fetch->start < cfg.fetch->end)) {
    throw ConfigError("config field 'fetch': start must precede end");
  }
}

void apply_env(RunConfig& cfg) {
  if (const char* dir = std::getenv("TDAC_DATA_DIR"); dir && *dir) {
    cfg.data_dir = dir;
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");

  RunConfig cfg = default_config();
  expect_keys(j, "",
              {"data_dir", "out_dir", "groups", "columns", "window", "stride",
               "degrees", "alpha", "max_lag", "d_max", "periods", "band", "seed",
               "synth", "fetch"});

  if (j.contains("data_dir")) cfg.data_dir = j.at("data_dir").get<std::string>();
  if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
  // Relative paths in a config file mean "next to the config file", so a
  // generated universe keeps working after being moved or copied.
  const auto anchor = path.parent_path();
  if (cfg.data_dir.is_relative()) {
    cfg.data_dir = (anchor / cfg.data_dir).lexically_normal();
  }
  if (cfg.out_dir.is_relative()) {
    cfg.out_dir = (anchor / cfg.out_dir).lexically_normal();
  }

  if (j.contains("groups")) {
    if (!j.at("groups").is_array()) throw ConfigError("config field 'groups' must be an array");
    cfg.groups.clear();
    for (const auto& g : j.at("groups")) {
      expect_keys(g, "groups[]", {"name", "symbols"});
      GroupSpec spec;
      if (!g.contains("name") || !g.at("name").is_string()) {
        throw ConfigError("config field 'groups[].name' must be a string");
      }
      spec.name = g.at("name").get<std::string>();
      if (!g.contains("symbols") || !g.at("symbols").is_array() || g.at("symbols").empty()) {
        throw ConfigError("config field 'groups[].symbols' must be a non-empty array");
      }
      for (const auto& s : g.at("symbols")) {
        if (!s.is_string()) throw ConfigError("config field 'groups[].symbols' must hold strings");
        spec.symbols.push_back(s.get<std::string>());
      }
      cfg.groups.push_back(std::move(spec));
    }
  }

  if (j.contains("columns")) {
    expect_keys(j.at("columns"), "columns", {"date", "close"});
    if (j.at("columns").contains("date")) cfg.columns.date = j.at("columns").at("date").get<std::string>();
    if (j.at("columns").contains("close")) cfg.columns.close = j.at("columns").at("close").get<std::string>();
  }

  if (j.contains("window")) cfg.window = j.at("window").get<int>();
  if (j.contains("stride")) cfg.stride = j.at("stride").get<int>();

  if (j.contains("degrees")) {
    if (!j.at("degrees").is_array() || j.at("degrees").empty()) {
      throw ConfigError("config field 'degrees' must be a non-empty array");
    }
    cfg.degrees.clear();
    for (const auto& d : j.at("degrees")) cfg.degrees.push_back(d.get<double>());
  }

  if (j.contains("alpha")) cfg.alpha = j.at("alpha").get<double>();
  if (j.contains("max_lag")) cfg.max_lag = j.at("max_lag").get<int>();
  if (j.contains("d_max")) cfg.d_max = j.at("d_max").get<int>();

  if (j.contains("periods")) {
    if (!j.at("periods").is_array() || j.at("periods").empty()) {
      throw ConfigError("config field 'periods' must be a non-empty array");
    }
    cfg.periods.clear();
    for (const auto& p : j.at("periods")) {
      cfg.periods.push_back(parse_period(p, "periods[]"));
    }
  }

  if (j.contains("band")) {
    if (j.at("band").is_null()) {
      cfg.band.reset();
    } else {
      cfg.band = parse_period(j.at("band"), "band");
    }
  }

  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();

  if (j.contains("synth")) {
    const json& s = j.at("synth");
    expect_keys(s, "synth",
                {"n_days", "n_instruments", "sigma", "start", "crash_day",
                 "crash_days", "scale"});
    if (s.contains("n_days")) cfg.synth.n_days = s.at("n_days").get<int>();
    if (s.contains("n_instruments")) cfg.synth.n_instruments = s.at("n_instruments").get<int>();
    if (s.contains("sigma")) cfg.synth.sigma = s.at("sigma").get<double>();
    if (s.contains("start")) cfg.synth.start = parse_date_field(s.at("start"), "synth.start");
    if (s.contains("crash_day")) cfg.synth.crash_day = s.at("crash_day").get<int>();
    if (s.contains("crash_days")) cfg.synth.crash_days = s.at("crash_days").get<int>();
    if (s.contains("scale")) cfg.synth.scale = s.at("scale").get<double>();
  }

  if (j.contains("fetch") && !j.at("fetch").is_null()) {
    const json& f = j.at("fetch");
    expect_keys(f, "fetch", {"endpoint", "start", "end"});
    FetchConfig fc;
    if (!f.contains("endpoint") || !f.at("endpoint").is_string()) {
      throw ConfigError("config field 'fetch.endpoint' must be a URL template string");
    }
    fc.endpoint = f.at("endpoint").get<std::string>();
    if (f.contains("start")) fc.start = parse_date_field(f.at("start"), "fetch.start");
    if (f.contains("end")) fc.end = parse_date_field(f.at("end"), "fetch.end");
    cfg.fetch = std::move(fc);
  }

  apply_env(cfg);
  validate_config(cfg);
  return cfg;
}

namespace {

/// include_paths=false drops filesystem locations, leaving only analysis
/// parameters; that reduced form is what the config hash covers, so moving
/// data or output directories never renames the artifact namespace.
json config_to_json(const RunConfig& cfg, bool include_paths) {
  json j;
  if (include_paths) {
    j["data_dir"] = cfg.data_dir.string();
    j["out_dir"] = cfg.out_dir.string();
  }
  json groups = json::array();
  for (const auto& g : cfg.groups) {
    groups.push_back(json{{"name", g.name}, {"symbols", g.symbols}});
  }
  j["groups"] = std::move(groups);
  j["columns"] = {{"date", cfg.columns.date}, {"close", cfg.columns.close}};
  j["window"] = cfg.window;
  j["stride"] = cfg.stride;
  j["degrees"] = cfg.degrees;
  j["alpha"] = cfg.alpha;
  j["max_lag"] = cfg.max_lag;
  j["d_max"] = cfg.d_max;
  json periods = json::array();
  for (const auto& p : cfg.periods) {
    periods.push_back(json{{"label", p.label}, {"start", p.start.iso()}, {"end", p.end.iso()}});
  }
  j["periods"] = std::move(periods);
  if (cfg.band) {
    j["band"] = {{"label", cfg.band->label},
                 {"start", cfg.band->start.iso()},
                 {"end", cfg.band->end.iso()}};
  } else {
    j["band"] = nullptr;
  }
  j["seed"] = cfg.seed;
  j["synth"] = {{"n_days", cfg.synth.n_days},
                {"n_instruments", cfg.synth.n_instruments},
                {"sigma", cfg.synth.sigma},
                {"start", cfg.synth.start.iso()},
                {"crash_day", cfg.synth.crash_day},
                {"crash_days", cfg.synth.crash_days},
                {"scale", cfg.synth.scale}};
  if (cfg.fetch) {
    j["fetch"] = {{"endpoint", cfg.fetch->endpoint},
                  {"start", cfg.fetch->start.iso()},
                  {"end", cfg.fetch->end.iso()}};
  } else {
    j["fetch"] = nullptr;
  }
  return j;
}

}  // namespace

std::string canonical_json(const RunConfig& cfg) {
  return config_to_json(cfg, true).dump(2) + "\n";
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string config_hash(const RunConfig& cfg) {
  const std::string canon = config_to_json(cfg, false).dump(2);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canon)));
  return std::string(buf, 12);
}

std::string hash_files(const std::vector<std::filesystem::path>& files) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();
    // Chain file name and content so renames change the hash too.
    for (unsigned char c : path.filename().string()) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    for (unsigned char c : bytes) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf, 12);
}

const PeriodSpec& find_period(const RunConfig& cfg, const std::string& label) {
  for (const auto& p : cfg.periods) {
    if (p.label == label) return p;
  }
  std::string known;
  for (const auto& p : cfg.periods) {
    if (!known.empty()) known += ", ";
    known += p.label;
  }
  throw ConfigError("unknown period '" + label + "' (configured: " + known + ")");
}

}  // namespace tdac::cli
