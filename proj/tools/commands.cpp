#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tdac/causal_network.hpp"
#include "tdac/econometrics.hpp"
#include "tdac/market_data.hpp"
#include "tdac/pipeline.hpp"
#include "tdac/synth.hpp"

namespace tdac::cli {
namespace {

using nlohmann::json;

constexpr const char* kToolVersion = "tdac 0.1.0";

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string format_fixed(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

/// "1", "2", "1.5" — degree names for file suffixes and metric labels.
std::string degree_tag(double p) {
  if (p == static_cast<long long>(p)) return std::to_string(static_cast<long long>(p));
  std::string s = format_double(p);
  for (auto& c : s) {
    if (c == '.') c = '_';  // keep file names dot-free before the extension
  }
  return s;
}

std::string metric_name(double p) { return "WD_" + degree_tag(p); }

std::string safe_file_component(const std::string& s) {
  std::string out = s;
  for (auto& c : out) {
    if (c == '/' || c == '\\' || c == ':' || c == ' ') c = '_';
  }
  return out;
}

std::filesystem::path symbol_path(const RunConfig& cfg, const std::string& symbol) {
  return cfg.data_dir / (safe_file_component(symbol) + ".csv");
}

/// All price panels for the configured groups plus the input-data hash.
struct LoadedData {
  std::map<std::string, PriceMatrix> panels;  // group name -> aligned prices
  std::map<std::string, PriceTable> tables;   // symbol -> raw table
  std::string data_hash;
};

LoadedData load_all(const RunConfig& cfg) {
  if (cfg.groups.empty()) {
    throw ConfigError("config has no groups; add at least one under 'groups'");
  }
  LoadedData data;
  std::vector<std::filesystem::path> files;
  for (const auto& g : cfg.groups) {
    for (const auto& sym : g.symbols) {
      if (data.tables.contains(sym)) continue;
      const auto path = symbol_path(cfg, sym);
      data.tables.emplace(sym, load_price_csv(path, cfg.columns));
      files.push_back(path);
    }
  }
  std::sort(files.begin(), files.end());
  data.data_hash = hash_files(files);
  for (const auto& g : cfg.groups) {
    std::vector<PriceTable> tables;
    tables.reserve(g.symbols.size());
    for (const auto& sym : g.symbols) tables.push_back(data.tables.at(sym));
    data.panels.emplace(g.name, align(tables));
  }
  return data;
}

std::string artifact_comment(const RunConfig& cfg, const std::string& data_hash) {
  std::string c = std::string(kToolVersion) + " | config " + config_hash(cfg);
  if (!data_hash.empty()) c += " | data " + data_hash;
  c += " | seed " + std::to_string(cfg.seed) + " | rng " + kRngStreamId;
  return c;
}

std::filesystem::path ensure_run_dir(const RunConfig& cfg) {
  const auto dir = run_dir(cfg);
  std::filesystem::create_directories(dir);
  // The effective configuration always rides along with the artifacts.
  std::ofstream out(dir / "config.json", std::ios::binary);
  if (!out) throw Error("cannot write " + (dir / "config.json").string());
  out << canonical_json(cfg);
  return dir;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

/// Panel CSV: "# comment", then date,<symbols...> rows at full precision.
template <typename Matrix>
void write_panel_csv(const Matrix& m, const std::filesystem::path& path,
                     const std::string& comment) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  if (!comment.empty()) out << "# " << comment << '\n';
  out << "date";
  for (const auto& s : m.symbols) out << ',' << s;
  out << '\n';
  for (std::size_t r = 0; r < m.dates.size(); ++r) {
    out << m.dates[r].iso();
    for (double v : m.values[r]) out << ',' << format_double(v);
    out << '\n';
  }
}

PointCloud group_cloud(const PriceMatrix& panel) {
  return point_cloud(log_returns(panel));
}

SvgOptions svg_options(const RunConfig& cfg, const std::string& data_hash) {
  SvgOptions opt;
  if (cfg.band) {
    opt.has_band = true;
    opt.band_start = cfg.band->start;
    opt.band_end = cfg.band->end;
  }
  opt.comment = artifact_comment(cfg, data_hash);
  return opt;
}

WindowSpec window_spec(const RunConfig& cfg) {
  return WindowSpec{static_cast<std::size_t>(cfg.window),
                    static_cast<std::size_t>(cfg.stride)};
}

/// Union-aligned pair of clouds on one date axis, for cross-group series.
std::pair<PointCloud, PointCloud> paired_clouds(const LoadedData& data,
                                                const GroupSpec& ga,
                                                const GroupSpec& gb) {
  std::vector<PriceTable> tables;
  std::vector<std::string> order;
  std::set<std::string> seen;
  for (const auto* g : {&ga, &gb}) {
    for (const auto& sym : g->symbols) {
      if (seen.insert(sym).second) {
        tables.push_back(data.tables.at(sym));
        order.push_back(sym);
      }
    }
  }
  const PriceMatrix joint = align(tables);
  auto subset = [&](const GroupSpec& g) {
    PriceMatrix m;
    m.symbols = g.symbols;
    m.dates = joint.dates;
    m.values.assign(joint.dates.size(), std::vector<double>(g.symbols.size()));
    for (std::size_t c = 0; c < g.symbols.size(); ++c) {
      const auto it = std::find(order.begin(), order.end(), g.symbols[c]);
      const std::size_t src = static_cast<std::size_t>(it - order.begin());
      for (std::size_t r = 0; r < joint.dates.size(); ++r) {
        m.values[r][c] = joint.values[r][src];
      }
    }
    return m;
  };
  return {group_cloud(subset(ga)), group_cloud(subset(gb))};
}

std::string classification_text(const Relation& rel) {
  switch (rel.kind) {
    case RelationKind::independent: return "independent";
    case RelationKind::bidirectional: return "bidirectional";
    case RelationKind::a_causes_b: return rel.a + "->" + rel.b + " unidirectional";
    case RelationKind::b_causes_a: return rel.b + "->" + rel.a + " unidirectional";
  }
  return "unknown";
}

void append_direction_row(std::ostringstream& out, const std::string& period,
                          const std::string& metric, const GrangerResult& g,
                          int diff_order, double alpha, const std::string& cls) {
  out << period << ',' << metric << ',' << g.cause << ',' << g.effect << ','
      << g.lag << ',' << diff_order << ',' << format_double(g.f_statistic) << ','
      << format_double(g.p_value) << ',' << (g.p_value < alpha ? "yes" : "no")
      << ',' << cls << '\n';
}

}  // namespace

std::filesystem::path run_dir(const RunConfig& cfg) {
  return cfg.out_dir / config_hash(cfg);
}

int cmd_ingest(const RunConfig& cfg) {
  if (cfg.groups.empty()) {
    throw ConfigError("config has no groups; add at least one under 'groups'");
  }
  if (cfg.fetch) {
    std::vector<std::string> symbols;
    std::set<std::string> seen;
    for (const auto& g : cfg.groups) {
      for (const auto& s : g.symbols) {
        if (seen.insert(s).second) symbols.push_back(s);
      }
    }
    FetchSpec spec;
    spec.symbols = std::move(symbols);
    spec.start = cfg.fetch->start;
    spec.end = cfg.fetch->end;
    spec.endpoint = cfg.fetch->endpoint;
    spec.columns = cfg.columns;
    std::printf("fetching %zu symbols from %s\n", spec.symbols.size(),
                spec.endpoint.c_str());
    std::filesystem::create_directories(cfg.data_dir);
    bool all_ok = true;
    for (const auto& outcome : fetch_prices(spec)) {
      if (!outcome.ok()) {
        std::fprintf(stderr, "fetch failed for %s: %s\n", outcome.symbol.c_str(),
                     outcome.error.c_str());
        all_ok = false;
        continue;
      }
      const auto path = symbol_path(cfg, outcome.symbol);
      std::ofstream out(path, std::ios::binary);
      if (!out) throw Error("cannot write " + path.string());
      out << cfg.columns.date << ',' << cfg.columns.close << '\n';
      for (const auto& row : outcome.table->rows) {
        out << row.date.iso() << ',' << format_double(row.close) << '\n';
      }
      std::printf("  %s: %zu rows -> %s\n", outcome.symbol.c_str(),
                  outcome.table->rows.size(), path.string().c_str());
    }
    if (!all_ok) return kExitFile;
  }

  const LoadedData data = load_all(cfg);
  const auto dir = ensure_run_dir(cfg);
  const std::string comment = artifact_comment(cfg, data.data_hash);
  for (const auto& g : cfg.groups) {
    const PriceMatrix& panel = data.panels.at(g.name);
    const ReturnMatrix returns = log_returns(panel);
    const auto tag = safe_file_component(g.name);
    write_panel_csv(panel, dir / ("panel_" + tag + ".csv"), comment);
    write_panel_csv(returns, dir / ("returns_" + tag + ".csv"), comment);
    std::printf("group %s: %zu symbols, %zu aligned days, %zu return rows\n",
                g.name.c_str(), panel.instruments(), panel.days(), returns.days());
  }
  std::printf("data hash %s; artifacts in %s\n", data.data_hash.c_str(),
              dir.string().c_str());
  return kExitOk;
}

int cmd_wdseries(const RunConfig& cfg) {
  const LoadedData data = load_all(cfg);
  const auto dir = ensure_run_dir(cfg);
  const std::string comment = artifact_comment(cfg, data.data_hash);
  for (const auto& g : cfg.groups) {
    const PointCloud cloud = group_cloud(data.panels.at(g.name));
    for (double p : cfg.degrees) {
      WDSeries s = wd_series_self(cloud, window_spec(cfg), p, g.name);
      const auto tag = safe_file_component(g.name) + "_p" + degree_tag(p);
      write_series_csv(s, dir / ("wd_" + tag + ".csv"), comment);
      write_series_svg(s, dir / ("wd_" + tag + ".svg"), svg_options(cfg, data.data_hash));
      const CrashSummary cs = crash_summary(s);
      std::printf("wd %s %s: %zu windows, mean %.6f, max %.6f at %s (max/mean %.2f)\n",
                  g.name.c_str(), metric_name(p).c_str(), s.size(), cs.mean, cs.max,
                  cs.max_date.iso().c_str(), cs.max / cs.mean);
    }
  }
  std::printf("artifacts in %s\n", dir.string().c_str());
  return kExitOk;
}

int cmd_compare(const RunConfig& cfg) {
  if (cfg.groups.size() < 2) {
    throw ConfigError("compare needs at least two groups in the config");
  }
  const LoadedData data = load_all(cfg);
  const auto dir = ensure_run_dir(cfg);
  const std::string comment = artifact_comment(cfg, data.data_hash);
  for (std::size_t i = 0; i < cfg.groups.size(); ++i) {
    for (std::size_t j = i + 1; j < cfg.groups.size(); ++j) {
      const auto& ga = cfg.groups[i];
      const auto& gb = cfg.groups[j];
      const auto [ca, cb] = paired_clouds(data, ga, gb);
      for (double p : cfg.degrees) {
        WDSeries s = wd_series_cross(ca, cb, window_spec(cfg), p,
                                     ga.name + "~" + gb.name);
        const auto tag = safe_file_component(ga.name) + "_" +
                         safe_file_component(gb.name) + "_p" + degree_tag(p);
        write_series_csv(s, dir / ("wd_cross_" + tag + ".csv"), comment);
        write_series_svg(s, dir / ("wd_cross_" + tag + ".svg"),
                         svg_options(cfg, data.data_hash));
        const CrashSummary cs = crash_summary(s);
        std::printf(
            "cross %s~%s %s: %zu windows, mean %.6f, max %.6f at %s (max/mean %.2f)\n",
            ga.name.c_str(), gb.name.c_str(), metric_name(p).c_str(), s.size(),
            cs.mean, cs.max, cs.max_date.iso().c_str(), cs.max / cs.mean);
      }
    }
  }
  std::printf("artifacts in %s\n", dir.string().c_str());
  return kExitOk;
}

int cmd_stationarity(const RunConfig& cfg, const std::string& period_filter) {
  const LoadedData data = load_all(cfg);
  const auto dir = ensure_run_dir(cfg);

  std::vector<PeriodSpec> periods;
  if (!period_filter.empty()) {
    periods.push_back(find_period(cfg, period_filter));
  } else {
    periods = cfg.periods;
  }

  std::ostringstream csv;
  csv << "# " << artifact_comment(cfg, data.data_hash) << '\n';
  csv << "group,metric,period,diff_order,n,adf_stat,adf_p,adf_lags,pp_stat,pp_p,"
         "pp_bandwidth,stationary\n";
  for (const auto& g : cfg.groups) {
    const PointCloud cloud = group_cloud(data.panels.at(g.name));
    for (double p : cfg.degrees) {
      const WDSeries s = wd_series_self(cloud, window_spec(cfg), p, g.name);
      for (const auto& period : periods) {
        std::vector<double> slice;
        for (std::size_t k = 0; k < s.size(); ++k) {
          if (!(s.dates[k] < period.start) && s.dates[k] < period.end) {
            slice.push_back(s.values[k]);
          }
        }
        if (slice.size() < 25) {
          std::fprintf(stderr,
                       "skipping %s %s %s: only %zu observations in period\n",
                       g.name.c_str(), metric_name(p).c_str(), period.label.c_str(),
                       slice.size());
          continue;
        }
        for (int d = 0; d <= 1; ++d) {
          const std::vector<double> series = difference(slice, d);
          const UnitRootResult adf = adf_test(series);
          const UnitRootResult pp = pp_test(series);
          const bool stationary = adf.p_value < cfg.alpha && pp.p_value < cfg.alpha;
          csv << g.name << ',' << metric_name(p) << ',' << period.label << ',' << d
              << ',' << series.size() << ',' << format_fixed(adf.statistic, 4) << ','
              << format_fixed(adf.p_value, 4) << ',' << adf.lags_or_bandwidth << ','
              << format_fixed(pp.statistic, 4) << ',' << format_fixed(pp.p_value, 4)
              << ',' << pp.lags_or_bandwidth << ',' << (stationary ? "yes" : "no")
              << '\n';
          std::printf("%s %s %s d=%d: ADF %.3f (p=%.3f), PP %.3f (p=%.3f) -> %s\n",
                      g.name.c_str(), metric_name(p).c_str(), period.label.c_str(), d,
                      adf.statistic, adf.p_value, pp.statistic, pp.p_value,
                      stationary ? "stationary" : "unit root not rejected");
        }
      }
    }
  }
  write_text(dir / "stationarity.csv", csv.str());
  std::printf("artifacts in %s\n", dir.string().c_str());
  return kExitOk;
}

int cmd_causality(const RunConfig& cfg, const std::string& period_filter) {
  if (cfg.groups.size() < 2) {
    throw ConfigError("causality needs at least two groups in the config");
  }
  const LoadedData data = load_all(cfg);
  const auto dir = ensure_run_dir(cfg);
  const std::string comment = artifact_comment(cfg, data.data_hash);

  std::vector<PeriodSpec> periods;
  if (!period_filter.empty()) {
    periods.push_back(find_period(cfg, period_filter));
  } else {
    periods = cfg.periods;
  }

  PairwiseConfig pw;
  pw.alpha = cfg.alpha;
  pw.d_max = cfg.d_max;
  pw.max_lag_cap = cfg.max_lag;

  for (double p : cfg.degrees) {
    // One series per group, shared across periods.
    std::vector<NodeSeries> nodes;
    for (const auto& g : cfg.groups) {
      const WDSeries s =
          wd_series_self(group_cloud(data.panels.at(g.name)), window_spec(cfg), p, g.name);
      nodes.push_back(NodeSeries{g.name, s.dates, s.values});
    }
    for (const auto& period : periods) {
      const CausalNetwork net = pairwise_analysis(nodes, period, pw);

      std::ostringstream csv;
      csv << "# " << comment << '\n';
      csv << "period,metric,cause,effect,lag,diff_order,f_stat,p_value,significant,"
             "classification\n";
      int n_bi = 0, n_uni = 0, n_ind = 0;
      for (const auto& rel : net.relations) {
        const std::string cls = classification_text(rel);
        append_direction_row(csv, period.label, metric_name(p), rel.forward,
                             rel.diff_order, net.alpha, cls);
        append_direction_row(csv, period.label, metric_name(p), rel.backward,
                             rel.diff_order, net.alpha, cls);
        switch (rel.kind) {
          case RelationKind::bidirectional: ++n_bi; break;
          case RelationKind::independent: ++n_ind; break;
          default: ++n_uni; break;
        }
      }
      const auto tag = safe_file_component(period.label) + "_p" + degree_tag(p);
      write_text(dir / ("causality_" + tag + ".csv"), csv.str());
      write_text(dir / ("counts_" + tag + ".csv"),
                 "# " + comment + "\n" + counts_csv(net));
      write_text(dir / ("network_" + tag + ".dot"),
                 "// " + comment + "\n" + export_dot(net));
      json net_json = json::parse(export_json(net));
      net_json["meta"] = {{"tool", kToolVersion},
                          {"config", config_hash(cfg)},
                          {"data", data.data_hash},
                          {"metric", metric_name(p)},
                          {"comment", comment}};
      write_text(dir / ("network_" + tag + ".json"), net_json.dump(2) + "\n");
      std::printf("%s %s: %zu pairs -> %d bidirectional, %d unidirectional, %d independent\n",
                  period.label.c_str(), metric_name(p).c_str(), net.relations.size(),
                  n_bi, n_uni, n_ind);
    }
  }
  std::printf("artifacts in %s\n", dir.string().c_str());
  return kExitOk;
}

int cmd_network(const RunConfig& cfg, const std::filesystem::path& in) {
  std::vector<std::filesystem::path> inputs;
  if (!in.empty()) {
    inputs.push_back(in);
  } else {
    const auto dir = run_dir(cfg);
    if (std::filesystem::is_directory(dir)) {
      for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (name.starts_with("network_") && entry.path().extension() == ".json") {
          inputs.push_back(entry.path());
        }
      }
    }
    std::sort(inputs.begin(), inputs.end());
    if (inputs.empty()) {
      throw Error("no network_*.json found under " + dir.string() +
                  "; run the causality command first or pass --in");
    }
  }
  for (const auto& path : inputs) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path.string());
    std::ostringstream buf;
    buf << f.rdbuf();
    const std::string text = buf.str();
    const CausalNetwork net = network_from_json(text);
    // Carry the original run's metadata into the regenerated artifacts.
    std::string comment = std::string(kToolVersion) + " | config unknown | data unknown";
    const json parsed = json::parse(text);
    if (parsed.contains("meta")) {
      const json& meta = parsed.at("meta");
      if (meta.contains("comment")) {
        comment = meta.at("comment").get<std::string>();
      } else {
        comment = meta.value("tool", std::string(kToolVersion)) + " | config " +
                  meta.value("config", std::string("unknown")) + " | data " +
                  meta.value("data", std::string("unknown"));
      }
    }
    auto base = path;
    base.replace_extension();
    write_text(base.string() + ".dot", "// " + comment + "\n" + export_dot(net));
    write_text(base.string() + "_counts.csv", "# " + comment + "\n" + counts_csv(net));
    std::printf("%s: %zu nodes, %zu relations -> %s.dot\n", path.string().c_str(),
                net.nodes.size(), net.relations.size(), base.string().c_str());
  }
  return kExitOk;
}

int cmd_report(const RunConfig& cfg) {
  const LoadedData data = load_all(cfg);
  const auto dir = ensure_run_dir(cfg);

  json series = json::array();
  for (const auto& g : cfg.groups) {
    const PointCloud cloud = group_cloud(data.panels.at(g.name));
    for (double p : cfg.degrees) {
      const WDSeries s = wd_series_self(cloud, window_spec(cfg), p, g.name);
      const CrashSummary cs = crash_summary(s);
      json per_period = json::array();
      for (const auto& period : cfg.periods) {
        double sum = 0.0, mx = 0.0;
        Date mx_date;
        std::size_t n = 0;
        for (std::size_t k = 0; k < s.size(); ++k) {
          if (s.dates[k] < period.start || !(s.dates[k] < period.end)) continue;
          sum += s.values[k];
          if (s.values[k] > mx) {
            mx = s.values[k];
            mx_date = s.dates[k];
          }
          ++n;
        }
        if (n == 0) continue;
        per_period.push_back(json{{"period", period.label},
                                  {"n", n},
                                  {"mean", sum / static_cast<double>(n)},
                                  {"max", mx},
                                  {"max_date", mx_date.iso()}});
      }
      series.push_back(json{{"group", g.name},
                            {"metric", metric_name(p)},
                            {"windows", s.size()},
                            {"mean", cs.mean},
                            {"max", cs.max},
                            {"max_date", cs.max_date.iso()},
                            {"max_mean_ratio", cs.max / cs.mean},
                            {"periods", std::move(per_period)}});
      std::printf("%s %s: mean %.6f, max %.6f at %s, max/mean %.2f\n", g.name.c_str(),
                  metric_name(p).c_str(), cs.mean, cs.max, cs.max_date.iso().c_str(),
                  cs.max / cs.mean);
    }
  }

  json report;
  report["tool"] = kToolVersion;
  report["rng"] = kRngStreamId;
  report["config_hash"] = config_hash(cfg);
  report["data_hash"] = data.data_hash;
  report["seed"] = cfg.seed;
  report["window"] = cfg.window;
  report["stride"] = cfg.stride;
  report["series"] = std::move(series);
  json artifacts = json::array();
  std::vector<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name != "report.json") names.push_back(name);
  }
  std::sort(names.begin(), names.end());
  for (auto& n : names) artifacts.push_back(n);
  report["artifacts"] = std::move(artifacts);
  write_text(dir / "report.json", report.dump(2) + "\n");
  std::printf("report written to %s\n", (dir / "report.json").string().c_str());
  return kExitOk;
}

int cmd_synth(const RunConfig& cfg) {
  const SynthSpec& sp = cfg.synth;
  ReturnMatrix base = baseline_returns(sp.n_days, sp.n_instruments, sp.sigma,
                                       cfg.seed, sp.start);
  const Date crash_from = base.dates[static_cast<std::size_t>(sp.crash_day)];
  const Date crash_to =
      base.dates[static_cast<std::size_t>(sp.crash_day + sp.crash_days - 1)];
  const ReturnMatrix crashed = inject_crash(base, crash_from, crash_to, sp.scale,
                                            cfg.seed + 1);
  const PriceMatrix prices = prices_from_returns(crashed);

  std::filesystem::create_directories(cfg.data_dir);
  std::vector<std::filesystem::path> files;
  for (std::size_t c = 0; c < prices.symbols.size(); ++c) {
    const auto path = symbol_path(cfg, prices.symbols[c]);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << cfg.columns.date << ',' << cfg.columns.close << '\n';
    for (std::size_t r = 0; r < prices.dates.size(); ++r) {
      out << prices.dates[r].iso() << ',' << format_double(prices.values[r][c]) << '\n';
    }
    files.push_back(path);
  }
  std::sort(files.begin(), files.end());
  const std::string data_hash = hash_files(files);

  // Ready-to-run config over the generated universe: two halves as groups so
  // the cross-group commands work out of the box.
  RunConfig gen = cfg;
  gen.groups.clear();
  GroupSpec first{"alpha", {}}, second{"beta", {}};
  for (std::size_t c = 0; c < prices.symbols.size(); ++c) {
    (c < prices.symbols.size() / 2 ? first : second).symbols.push_back(prices.symbols[c]);
  }
  if (second.symbols.empty()) {  // single-instrument universe
    second.symbols = first.symbols;
    second.name = "alpha2";
  }
  gen.groups = {first, second};
  gen.periods = {PeriodSpec{"full", prices.dates.front(),
                            prices.dates.back().plus_days(1)}};
  gen.band = PeriodSpec{"injected-crash", crash_from, crash_to.plus_days(1)};
  gen.fetch.reset();
  // Record the universe as self-contained: relative paths resolve against
  // the config file's directory, so the whole folder can be moved around.
  gen.data_dir = ".";
  gen.out_dir = "out";

  write_text(cfg.data_dir / "config.json", canonical_json(gen));

  json manifest;
  manifest["tool"] = kToolVersion;
  manifest["rng"] = kRngStreamId;
  manifest["seed"] = cfg.seed;
  manifest["n_days"] = sp.n_days;
  manifest["n_instruments"] = sp.n_instruments;
  manifest["sigma"] = sp.sigma;
  manifest["scale"] = sp.scale;
  manifest["crash_start"] = crash_from.iso();
  manifest["crash_end"] = crash_to.iso();
  manifest["data_hash"] = data_hash;
  json file_list = json::array();
  for (const auto& f : files) file_list.push_back(f.filename().string());
  manifest["files"] = std::move(file_list);
  write_text(cfg.data_dir / "manifest.json", manifest.dump(2) + "\n");

  std::printf("synthetic universe: %d instruments x %d days, burst %s..%s at scale %g\n",
              sp.n_instruments, sp.n_days, crash_from.iso().c_str(),
              crash_to.iso().c_str(), sp.scale);
  std::printf("wrote %zu price files + config.json + manifest.json under %s (data %s)\n",
              files.size(), cfg.data_dir.string().c_str(), data_hash.c_str());
  return kExitOk;
}

}  // namespace tdac::cli
