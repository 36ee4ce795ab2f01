// Acceptance gate: every shipped claim gets one [PASS]/[FAIL] line with its
// tolerance and runtime budget. Oracles here are written independently of
// the library code they check (fresh minimum-spanning-tree and assignment
// enumerations), so a shared bug cannot hide.
//
// Exit code 0 iff no criterion fails; data-dependent checks print [SKIP]
// when their inputs are absent.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "runconfig.hpp"
#include "tdac/causal_network.hpp"
#include "tdac/econometrics.hpp"
#include "tdac/market_data.hpp"
#include "tdac/parallel.hpp"
#include "tdac/persistence.hpp"
#include "tdac/pipeline.hpp"
#include "tdac/synth.hpp"
#include "tdac/wasserstein.hpp"

using namespace tdac;

namespace {

// ---------------------------------------------------------------------------
// Reporting scaffolding

struct Tally {
  int passed = 0;
  int failed = 0;
  int skipped = 0;
};

Tally tally;

/// Runs one criterion. fn fills `detail` and may override `measured_ms`
/// (for sub-millisecond budgets); returning false or throwing fails it.
void criterion(const char* name, double budget_ms,
               const std::function<bool(std::string&, double&)>& fn) {
  std::string detail;
  double measured_ms = -1.0;
  bool ok = false;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    ok = fn(detail, measured_ms);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
    ok = false;
  }
  const auto t1 = std::chrono::steady_clock::now();
  const double wall_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  if (measured_ms < 0.0) measured_ms = wall_ms;
  if (ok && measured_ms > budget_ms) {
    ok = false;
    detail += " [runtime over budget]";
  }
  std::printf("[%s] %s: %s (%.2f ms; budget %.0f ms)\n", ok ? "PASS" : "FAIL",
              name, detail.c_str(), measured_ms, budget_ms);
  std::fflush(stdout);
  (ok ? tally.passed : tally.failed)++;
}

void skip(const char* name, const std::string& why) {
  std::printf("[SKIP] %s: %s\n", name, why.c_str());
  std::fflush(stdout);
  ++tally.skipped;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Independent oracles

/// Prim's algorithm over a dense distance matrix; returns sorted edge
/// weights of a minimum spanning tree. (The library uses Kruskal—different
/// algorithm, same unique multiset of MST edge weights.)
std::vector<double> prim_mst_weights(const DistanceMatrix& d) {
  const std::size_t m = d.size;
  if (m <= 1) return {};
  std::vector<bool> in_tree(m, false);
  std::vector<double> best(m, std::numeric_limits<double>::infinity());
  std::vector<double> weights;
  in_tree[0] = true;
  for (std::size_t j = 1; j < m; ++j) best[j] = d.at(0, j);
  for (std::size_t step = 1; step < m; ++step) {
    std::size_t pick = 0;
    double low = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
      if (!in_tree[j] && best[j] < low) {
        low = best[j];
        pick = j;
      }
    }
    weights.push_back(low);
    in_tree[pick] = true;
    for (std::size_t j = 0; j < m; ++j) {
      if (!in_tree[j]) best[j] = std::min(best[j], d.at(pick, j));
    }
  }
  std::sort(weights.begin(), weights.end());
  return weights;
}

double ground_dist(const std::pair<double, double>& a,
                   const std::pair<double, double>& b) {
  return std::max(std::abs(a.first - b.first), std::abs(a.second - b.second));
}

double diag_dist(const std::pair<double, double>& a) {
  return (a.second - a.first) / 2.0;
}

/// Exhaustive minimum transport cost between two flattened diagrams: each
/// point of A pairs with an unused point of B or with the diagonal; leftover
/// B points go to the diagonal.
void enumerate_assignments(const std::vector<std::pair<double, double>>& a,
                           const std::vector<std::pair<double, double>>& b,
                           std::size_t i, std::vector<bool>& used, double acc,
                           double p, double& best) {
  if (acc >= best) return;  // prune
  if (i == a.size()) {
    double total = acc;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!used[j]) total += std::pow(diag_dist(b[j]), p);
    }
    best = std::min(best, total);
    return;
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (used[j]) continue;
    used[j] = true;
    enumerate_assignments(a, b, i + 1, used, acc + std::pow(ground_dist(a[i], b[j]), p),
                          p, best);
    used[j] = false;
  }
  enumerate_assignments(a, b, i + 1, used, acc + std::pow(diag_dist(a[i]), p), p,
                        best);
}

double brute_force_wd(const PersistenceDiagram& pd1, const PersistenceDiagram& pd2,
                      double p) {
  const auto a = expand_diagram(pd1);
  const auto b = expand_diagram(pd2);
  double best = std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  enumerate_assignments(a, b, 0, used, 0.0, p, best);
  return std::pow(best, 1.0 / p);
}

PersistenceDiagram random_diagram(Rng& rng, int max_points) {
  PersistenceDiagram pd;
  const int target = static_cast<int>(rng.uniform() * (max_points + 1));
  int total = 0;
  while (total < target) {
    DiagramPoint pt;
    pt.birth = rng.uniform() * 2.0;
    pt.death = pt.birth + 0.05 + rng.uniform() * 2.45;
    pt.multiplicity = (rng.uniform() < 0.15 && total + 2 <= target) ? 2 : 1;
    total += pt.multiplicity;
    pd.points.push_back(pt);
  }
  std::sort(pd.points.begin(), pd.points.end(),
            [](const DiagramPoint& x, const DiagramPoint& y) {
              return x.birth < y.birth ||
                     (x.birth == y.birth && x.death < y.death);
            });
  return pd;
}

PointCloud random_cloud(Rng& rng, int m, int n) {
  PointCloud c;
  for (int i = 0; i < m; ++i) {
    c.dates.push_back(Date{2020, 1, 1}.plus_days(i));
    std::vector<double> pt(static_cast<std::size_t>(n));
    for (auto& v : pt) v = rng.normal();
    c.points.push_back(std::move(pt));
  }
  return c;
}

// ---------------------------------------------------------------------------
// Criteria

bool golden_example(std::string& detail, double& measured_ms) {
  const std::vector<std::vector<double>> pts = {
      {1.0, 1.0}, {1.5, 1.0}, {1.5, 3.0}, {4.0, 4.0}};
  const std::vector<double> want = {0.5, 2.0, std::sqrt(7.25)};
  bool ok = true;
  double best_ms = std::numeric_limits<double>::infinity();
  for (int rep = 0; rep < 10; ++rep) {  // best-of to dodge scheduler noise
    const auto t0 = std::chrono::steady_clock::now();
    const PersistenceDiagram pd = h0_persistence(pairwise_distances(pts));
    const auto flat = expand_diagram(pd);
    const auto t1 = std::chrono::steady_clock::now();
    best_ms = std::min(
        best_ms, std::chrono::duration<double, std::milli>(t1 - t0).count());
    if (flat.size() != want.size()) {
      ok = false;
      continue;
    }
    for (std::size_t i = 0; i < want.size(); ++i) {
      if (flat[i].first != 0.0) ok = false;
      if (std::abs(flat[i].second - want[i]) > 1e-9) ok = false;
    }
  }
  measured_ms = best_ms;
  detail = "4-point cloud gives deaths {0.5, 2, sqrt(7.25)=" +
           fmt(std::sqrt(7.25)) + "} with zero births, tolerance 1e-9";
  if (!ok) detail = "death multiset mismatch; " + detail;
  return ok;
}

bool wasserstein_oracle(std::string& detail, double&) {
  Rng rng(8001);
  double worst = 0.0;
  int checked = 0;
  for (int k = 0; k < 500; ++k) {
    const PersistenceDiagram a = random_diagram(rng, 6);
    const PersistenceDiagram b = random_diagram(rng, 6);
    for (double p : {1.0, 2.0}) {
      const double fast = wd_between(a, b, p);
      const double slow = brute_force_wd(a, b, p);
      worst = std::max(worst, std::abs(fast - slow));
      ++checked;
    }
  }
  detail = "500 random diagram pairs (<=6 points), p in {1,2}: max |assignment"
           " - enumeration| = " + fmt(worst) + " (tolerance 1e-9, " +
           std::to_string(checked) + " comparisons)";
  return worst <= 1e-9;
}

bool mst_oracle(std::string& detail, double&) {
  Rng rng(8002);
  int mismatches = 0;
  for (int k = 0; k < 200; ++k) {
    const int m = 1 + static_cast<int>(rng.uniform() * 50);
    const int n = 1 + static_cast<int>(rng.uniform() * 20);
    const PointCloud cloud = random_cloud(rng, m, n);
    const DistanceMatrix d = pairwise_distances(cloud.points);
    const auto flat = expand_diagram(h0_persistence(d));
    const auto oracle = prim_mst_weights(d);
    if (flat.size() != oracle.size()) {
      ++mismatches;
      continue;
    }
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      if (flat[i].second != oracle[i]) {  // exact equality, no tolerance
        ++mismatches;
        break;
      }
    }
  }
  detail = "200 random clouds (m<=50, n<=20): persistence deaths equal "
           "independent Prim MST weights exactly; mismatches = " +
           std::to_string(mismatches);
  return mismatches == 0;
}

bool metric_properties(std::string& detail, double&) {
  Rng rng(8003);
  std::vector<PersistenceDiagram> pool;
  for (int i = 0; i < 60; ++i) pool.push_back(random_diagram(rng, 8));
  const auto pick = [&]() -> const PersistenceDiagram& {
    return pool[static_cast<std::size_t>(rng.uniform() * pool.size())];
  };

  int sym_bad = 0;
  for (int k = 0; k < 300; ++k) {
    const auto& a = pick();
    const auto& b = pick();
    for (double p : {1.0, 2.0}) {
      if (wd_between(a, b, p) != wd_between(b, a, p)) ++sym_bad;
    }
  }

  double tri_worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const auto& a = pick();
    const auto& b = pick();
    const auto& c = pick();
    for (double p : {1.0, 2.0}) {
      const double lhs = wd_between(a, c, p);
      const double rhs = wd_between(a, b, p) + wd_between(b, c, p);
      tri_worst = std::max(tri_worst, lhs - rhs);
    }
  }

  double hom_worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const auto& a = pick();
    const auto& b = pick();
    for (double c : {0.5, 2.75}) {
      PersistenceDiagram ca = a, cb = b;
      for (auto& pt : ca.points) {
        pt.birth *= c;
        pt.death *= c;
      }
      for (auto& pt : cb.points) {
        pt.birth *= c;
        pt.death *= c;
      }
      const double direct = wd_between(ca, cb, 2.0);
      const double scaled = c * wd_between(a, b, 2.0);
      hom_worst = std::max(hom_worst, std::abs(direct - scaled));
    }
  }

  detail = "symmetry exact (" + std::to_string(sym_bad) +
           " asymmetric of 600), triangle slack max " + fmt(tri_worst) +
           " over 1000 triples (tolerance 1e-9), homogeneity error max " +
           fmt(hom_worst) + " (tolerance 1e-9)";
  return sym_bad == 0 && tri_worst <= 1e-9 && hom_worst <= 1e-9;
}

bool statistical_size(std::string& detail, double&) {
  const int n_sims = 2000;
  struct SimOut {
    bool adf_rej = false;
    bool pp_rej = false;
    bool granger_rej = false;
  };
  const std::vector<SimOut> sims = parallel_map(n_sims, [](std::size_t i) {
    SimOut out;
    // Unit-root nulls: a pure random walk, T = 250.
    const std::vector<double> walk =
        simulate_random_walk(250, 100000 + static_cast<std::uint64_t>(i));
    out.adf_rej = adf_test(walk).p_value < 0.05;
    out.pp_rej = pp_test(walk).p_value < 0.05;
    // No-causality null: independent AR(1) pair, T = 250.
    Rng rng(130000 + static_cast<std::uint64_t>(i));
    std::vector<double> x(250), y(250);
    double px = 0.0, py = 0.0;
    for (int t = 0; t < 250; ++t) {
      px = 0.3 * px + rng.normal();
      py = 0.3 * py + rng.normal();
      x[t] = px;
      y[t] = py;
    }
    out.granger_rej = granger_test(y, x, 2).p_value < 0.05;
    return out;
  });
  int adf = 0, pp = 0, gr = 0;
  for (const auto& s : sims) {
    adf += s.adf_rej;
    pp += s.pp_rej;
    gr += s.granger_rej;
  }
  const double ra = double(adf) / n_sims;
  const double rp = double(pp) / n_sims;
  const double rg = double(gr) / n_sims;
  detail = "false-rejection at the 5% level over 2000 null sims (T=250): ADF " +
           fmt(ra) + ", PP " + fmt(rp) + ", Granger " + fmt(rg) +
           " (each must lie in [0.03, 0.07])";
  const auto in_band = [](double r) { return r >= 0.03 && r <= 0.07; };
  return in_band(ra) && in_band(rp) && in_band(rg);
}

bool statistical_power(std::string& detail, double&) {
  const int n_trials = 200;
  struct TrialOut {
    bool direction_ok = false;
    bool lag_ok = false;
  };
  const std::vector<TrialOut> trials = parallel_map(n_trials, [](std::size_t k) {
    Rng rng(70000 + static_cast<std::uint64_t>(k));
    const int total = 480, burn = 80;
    std::vector<double> x(total, 0.0), y(total, 0.0);
    for (int t = 0; t < total; ++t) {
      const double ex = rng.normal();
      const double ey = rng.normal();
      x[t] = 0.5 * (t >= 1 ? x[t - 1] : 0.0) + ex;
      y[t] = 0.3 * (t >= 1 ? y[t - 1] : 0.0) +
             0.8 * (t >= 2 ? x[t - 2] : 0.0) + ey;
    }
    const std::vector<double> xt(x.begin() + burn, x.end());
    const std::vector<double> yt(y.begin() + burn, y.end());
    TrialOut out;
    const int lag = fpe_select(yt, xt, 8);
    out.lag_ok = lag == 2;
    const GrangerResult fwd = granger_test(yt, xt, lag);
    const GrangerResult back = granger_test(xt, yt, lag);
    out.direction_ok =
        classify_pair(fwd, back, 0.05) == RelationKind::a_causes_b;
    return out;
  });
  int dir_ok = 0, lag_ok = 0;
  for (const auto& t : trials) {
    dir_ok += t.direction_ok;
    lag_ok += t.lag_ok;
  }
  detail = "one-way system (T=400, true lag 2): direction recovered " +
           std::to_string(dir_ok) + "/200, lag recovered " +
           std::to_string(lag_ok) + "/200 (each must be >= 180)";
  return dir_ok >= 180 && lag_ok >= 180;
}

// Shared with the crash and invariant criteria below.
PointCloud crash_universe() {
  const ReturnMatrix base = baseline_returns(500, 20, 0.01, 42);
  const Date from = base.dates[300];
  const Date to = base.dates[319];
  const ReturnMatrix crashed = inject_crash(base, from, to, 5.0, 43);
  const PriceMatrix prices = prices_from_returns(crashed);
  return point_cloud(log_returns(prices));
}

bool synthetic_crash(std::string& detail, double&) {
  const PointCloud cloud = crash_universe();
  const ReturnMatrix base = baseline_returns(500, 20, 0.01, 42);
  const Date burst_start = base.dates[300];
  const Date burst_end = base.dates[319];
  const Date lo = burst_start.plus_days(-30);
  const Date hi = burst_end.plus_days(30);
  bool ok = true;
  std::string parts;
  for (double p : {1.0, 2.0}) {
    const WDSeries s = wd_series_self(cloud, {30, 1}, p);
    const CrashSummary cs = crash_summary(s);
    const double ratio = cs.max / cs.mean;
    const bool timing = !(cs.max_date < lo) && !(hi < cs.max_date);
    if (ratio < 2.0 || !timing) ok = false;
    if (!parts.empty()) parts += "; ";
    parts += "p=" + fmt(p) + ": max/mean " + fmt(ratio) + " at " +
             cs.max_date.iso();
  }
  detail = parts + " (need ratio >= 2.0 and max date in [" + lo.iso() + ", " +
           hi.iso() + "], burst " + burst_start.iso() + ".." + burst_end.iso() +
           ")";
  return ok;
}

bool table_invariants(std::string& detail, double&) {
  // An engineered eight-node universe: one-way chains, one mutual pair, and
  // pure noise nodes, all on a shared daily axis.
  Rng rng(9100);
  const int n = 320;
  std::vector<std::vector<double>> v(8, std::vector<double>(n, 0.0));
  for (int t = 1; t < n; ++t) {
    const double e0 = rng.normal(), e1 = rng.normal(), e2 = rng.normal(),
                 e3 = rng.normal(), e4 = rng.normal(), e5 = rng.normal(),
                 e6 = rng.normal(), e7 = rng.normal();
    v[0][t] = 0.4 * v[0][t - 1] + e0;
    v[1][t] = 0.3 * v[1][t - 1] + 0.7 * v[0][t - 1] + e1;  // 0 -> 1
    v[2][t] = 0.4 * v[2][t - 1] + e2;
    v[3][t] = 0.3 * v[3][t - 1] + (t >= 2 ? 0.7 * v[2][t - 2] : 0.0) + e3;  // 2 -> 3
    v[4][t] = 0.2 * v[4][t - 1] + 0.5 * v[5][t - 1] + e4;  // 4 <-> 5
    v[5][t] = 0.2 * v[5][t - 1] + 0.5 * v[4][t - 1] + e5;
    v[6][t] = 0.3 * v[6][t - 1] + e6;
    v[7][t] = 0.3 * v[7][t - 1] + e7;
  }
  std::vector<NodeSeries> nodes;
  for (int k = 0; k < 8; ++k) {
    NodeSeries s;
    s.name = "n" + std::to_string(k);
    for (int t = 0; t < n; ++t) s.dates.push_back(Date{2020, 1, 1}.plus_days(t));
    s.values = v[static_cast<std::size_t>(k)];
    nodes.push_back(std::move(s));
  }
  const CausalNetwork net = pairwise_analysis(nodes, {"full", {2020, 1, 1}, {2021, 1, 1}});
  const auto counts = relation_counts(net);
  int cause_sum = 0, effect_sum = 0, bi_sum = 0;
  for (const auto& c : counts) {
    cause_sum += c.cause;
    effect_sum += c.effect;
    bi_sum += c.bidirectional;
  }
  int one_way = 0, mutual = 0;
  for (const auto& r : net.relations) {
    one_way += r.kind == RelationKind::a_causes_b || r.kind == RelationKind::b_causes_a;
    mutual += r.kind == RelationKind::bidirectional;
  }
  const bool ok = cause_sum == effect_sum && bi_sum % 2 == 0 &&
                  cause_sum == one_way && bi_sum == 2 * mutual;
  detail = "28-pair network: sum(cause) = " + std::to_string(cause_sum) +
           " equals sum(effect) = " + std::to_string(effect_sum) +
           "; bidirectional column sums to " + std::to_string(bi_sum) +
           " (even, = 2 x " + std::to_string(mutual) + " mutual pairs)";
  return ok;
}

bool real_data_reproduction(std::string& detail, double&) {
  namespace fs = std::filesystem;
  const char* env = std::getenv("TDAC_ACCEPT_DATA_DIR");
  const fs::path cfg_path = fs::path(env) / "config.json";
  const tdac::cli::RunConfig cfg = tdac::cli::load_config(cfg_path);

  const auto find_group = [&](const std::string& name) -> const tdac::cli::GroupSpec* {
    for (const auto& g : cfg.groups) {
      if (g.name == name) return &g;
    }
    return nullptr;
  };
  const auto* stocks = find_group("stocks");
  const auto* commodities = find_group("commodities");
  if (!stocks || !commodities) {
    detail = "config must define 'stocks' and 'commodities' groups";
    return false;
  }

  const auto load_group_cloud = [&](const tdac::cli::GroupSpec& g) {
    std::vector<PriceTable> tables;
    for (const auto& sym : g.symbols) {
      tables.push_back(load_price_csv(cfg.data_dir / (sym + ".csv"), cfg.columns));
    }
    return point_cloud(log_returns(align(tables)));
  };

  bool ok = true;
  std::string parts;
  const Date spike_lo{2020, 2, 1};
  const Date spike_hi{2020, 6, 1};  // half-open: through May 2020

  // (a) spike timing for both universes and both degrees.
  std::vector<std::pair<std::string, PointCloud>> clouds;
  clouds.emplace_back("stocks", load_group_cloud(*stocks));
  clouds.emplace_back("commodities", load_group_cloud(*commodities));
  for (const auto& [name, cloud] : clouds) {
    for (double p : {1.0, 2.0}) {
      const WDSeries s =
          wd_series_self(cloud, {static_cast<std::size_t>(cfg.window),
                                 static_cast<std::size_t>(cfg.stride)}, p);
      const CrashSummary cs = crash_summary(s);
      const bool timed = !(cs.max_date < spike_lo) && cs.max_date < spike_hi;
      if (!timed) ok = false;
      parts += name + " p" + fmt(p) + " max at " + cs.max_date.iso() + "; ";
    }
  }

  // (b) crash-period and post-crash classification between the universes.
  const auto find_period_spec = [&](const std::string& label) -> const PeriodSpec* {
    for (const auto& per : cfg.periods) {
      if (per.label == label) return &per;
    }
    return nullptr;
  };
  const auto* crash = find_period_spec("crash");
  const auto* post = find_period_spec("post-crash");
  if (!crash || !post) {
    detail = parts + "config must define 'crash' and 'post-crash' periods";
    return false;
  }
  std::vector<NodeSeries> nodes;
  for (const auto& [name, cloud] : clouds) {
    const WDSeries s =
        wd_series_self(cloud, {static_cast<std::size_t>(cfg.window),
                               static_cast<std::size_t>(cfg.stride)}, 2.0);
    nodes.push_back(NodeSeries{name, s.dates, s.values});
  }
  const CausalNetwork crash_net = pairwise_analysis(nodes, *crash);
  const CausalNetwork post_net = pairwise_analysis(nodes, *post);
  const RelationKind crash_kind = crash_net.relations.at(0).kind;
  const RelationKind post_kind = post_net.relations.at(0).kind;
  if (crash_kind != RelationKind::bidirectional) ok = false;
  if (post_kind != RelationKind::a_causes_b) ok = false;  // stocks -> commodities
  parts += "crash " + to_string(crash_kind) + " (want bidirectional), post-crash " +
           to_string(post_kind) + " (want a_causes_b = stocks->commodities); ";

  // (c) per-sector levels for every remaining group.
  for (const auto& g : cfg.groups) {
    if (g.name == "stocks" || g.name == "commodities") continue;
    const PointCloud cloud = load_group_cloud(g);
    const WDSeries s =
        wd_series_self(cloud, {static_cast<std::size_t>(cfg.window),
                               static_cast<std::size_t>(cfg.stride)}, 2.0);
    const CrashSummary cs = crash_summary(s);
    const bool mean_ok = cs.mean >= 0.03 && cs.mean <= 0.12;
    const bool max_ok = cs.max >= 0.10 && cs.max <= 0.35;
    if (!mean_ok || !max_ok) ok = false;
    parts += g.name + " mean " + fmt(cs.mean) + " max " + fmt(cs.max) + "; ";
  }

  detail = parts + "(spike window [2020-02-01, 2020-06-01); sector mean in "
           "[0.03, 0.12], max in [0.10, 0.35])";
  return ok;
}

}  // namespace

int main() {
  std::printf("acceptance checks (library oracles are independent "
              "reimplementations)\n");

  criterion("h0-golden-example", 1.0, golden_example);
  criterion("wasserstein-oracle-equivalence", 10000.0, wasserstein_oracle);
  criterion("mst-oracle-equivalence", 10000.0, mst_oracle);
  criterion("wasserstein-metric-properties", 10000.0, metric_properties);
  criterion("statistical-size", 120000.0, statistical_size);
  criterion("statistical-power", 60000.0, statistical_power);
  criterion("synthetic-crash-detection", 30000.0, synthetic_crash);
  criterion("causality-table-invariants", 30000.0, table_invariants);

  if (const char* env = std::getenv("TDAC_ACCEPT_DATA_DIR");
      env && *env &&
      std::filesystem::exists(std::filesystem::path(env) / "config.json")) {
    criterion("real-data-reproduction", 300000.0, real_data_reproduction);
  } else {
    skip("real-data-reproduction",
         "optional; point TDAC_ACCEPT_DATA_DIR at a directory whose "
         "config.json defines 'stocks'/'commodities' groups (plus sector "
         "groups) over fetched 2018-06-01..2021-06-01 prices, with 'crash' "
         "and 'post-crash' periods");
  }

  std::printf("acceptance: %d passed, %d failed, %d skipped\n", tally.passed,
              tally.failed, tally.skipped);
  return tally.failed == 0 ? 0 : 1;
}
