#include "tdac/causal_network.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "tdac/errors.hpp"
#include "tdac/parallel.hpp"

namespace tdac {
namespace {

using nlohmann::json;

struct SlicedPair {
  std::vector<double> a;
  std::vector<double> b;
};

/// Restricts both series to period dates the pair has in common.
SlicedPair slice_pair(const NodeSeries& sa, const NodeSeries& sb,
                      const PeriodSpec& period, int min_obs) {
  std::map<Date, double> in_period;
  for (std::size_t i = 0; i < sa.dates.size(); ++i) {
    if (sa.dates[i] < period.start || !(sa.dates[i] < period.end)) continue;
    in_period.emplace(sa.dates[i], sa.values[i]);
  }
  SlicedPair out;
  for (std::size_t i = 0; i < sb.dates.size(); ++i) {
    if (sb.dates[i] < period.start || !(sb.dates[i] < period.end)) continue;
    const auto it = in_period.find(sb.dates[i]);
    if (it == in_period.end()) continue;
    out.a.push_back(it->second);
    out.b.push_back(sb.values[i]);
  }
  if (out.a.size() < static_cast<std::size_t>(min_obs)) {
    throw CoverageError("pair (" + sa.name + ", " + sb.name + ") has only " +
                        std::to_string(out.a.size()) + " shared observations in period " +
                        period.label + " [" + period.start.iso() + ", " +
                        period.end.iso() + "); need " + std::to_string(min_obs));
  }
  return out;
}

void check_node_coverage(const NodeSeries& s, const PeriodSpec& period, int min_obs) {
  std::size_t n = 0;
  for (const auto& d : s.dates) {
    if (!(d < period.start) && d < period.end) ++n;
  }
  if (n < static_cast<std::size_t>(min_obs)) {
    throw CoverageError("series '" + s.name + "' has only " + std::to_string(n) +
                        " observations in period " + period.label + " [" +
                        period.start.iso() + ", " + period.end.iso() + "); need " +
                        std::to_string(min_obs));
  }
}

json granger_to_json(const GrangerResult& g) {
  return json{{"cause", g.cause},         {"effect", g.effect},
              {"lag", g.lag},             {"f_statistic", g.f_statistic},
              {"p_value", g.p_value},     {"df_num", g.df_num},
              {"df_den", g.df_den},       {"perfect_fit", g.perfect_fit}};
}

GrangerResult granger_from_json(const json& j) {
  GrangerResult g;
  g.cause = j.at("cause").get<std::string>();
  g.effect = j.at("effect").get<std::string>();
  g.lag = j.at("lag").get<int>();
  g.f_statistic = j.at("f_statistic").get<double>();
  g.p_value = j.at("p_value").get<double>();
  g.df_num = j.at("df_num").get<int>();
  g.df_den = j.at("df_den").get<int>();
  g.perfect_fit = j.at("perfect_fit").get<bool>();
  return g;
}

const char* bucket_color(int total) {
  if (total == 0) return "gray90";
  if (total <= 2) return "lightblue";
  if (total <= 5) return "gold";
  return "tomato";
}

std::string quote_dot(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::independent: return "independent";
    case RelationKind::a_causes_b: return "a_causes_b";
    case RelationKind::b_causes_a: return "b_causes_a";
    case RelationKind::bidirectional: return "bidirectional";
  }
  throw ValidationError("unknown relation kind");
}

RelationKind relation_kind_from_string(const std::string& s) {
  if (s == "independent") return RelationKind::independent;
  if (s == "a_causes_b") return RelationKind::a_causes_b;
  if (s == "b_causes_a") return RelationKind::b_causes_a;
  if (s == "bidirectional") return RelationKind::bidirectional;
  throw ParseError("unknown relation kind '" + s + "'");
}

RelationKind classify_pair(const GrangerResult& res_ab, const GrangerResult& res_ba,
                           double alpha) {
  const bool ab = res_ab.p_value < alpha;
  const bool ba = res_ba.p_value < alpha;
  if (ab && ba) return RelationKind::bidirectional;
  if (ab) return RelationKind::a_causes_b;
  if (ba) return RelationKind::b_causes_a;
  return RelationKind::independent;
}

CausalNetwork pairwise_analysis(const std::vector<NodeSeries>& series,
                                const PeriodSpec& period,
                                const PairwiseConfig& config) {
  if (series.size() < 2) {
    throw ValidationError("pairwise_analysis needs at least two node series");
  }
  if (!(period.start < period.end)) {
    throw ValidationError("period start must precede period end");
  }
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw ValidationError("alpha must lie in (0, 1)");
  }
  std::unordered_set<std::string> seen;
  for (const auto& s : series) {
    if (s.dates.size() != s.values.size()) {
      throw ValidationError("series '" + s.name + "': dates/values length mismatch");
    }
    if (!seen.insert(s.name).second) {
      throw ValidationError("duplicate node name '" + s.name + "'");
    }
    check_node_coverage(s, period, config.min_obs);
  }

  const std::size_t n = series.size();
  const std::size_t n_pairs = n * (n - 1) / 2;
  const double alpha_eff =
      config.bonferroni ? config.alpha / static_cast<double>(n_pairs) : config.alpha;

  // Unordered pairs in row-major order over (i, j), i < j.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n_pairs);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }

  std::vector<Relation> relations = parallel_map(n_pairs, [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    const NodeSeries& sa = series[i];
    const NodeSeries& sb = series[j];
    SlicedPair sliced = slice_pair(sa, sb, period, config.min_obs);

    auto [stationary, d] =
        ensure_stationary({sliced.a, sliced.b}, alpha_eff, config.d_max);
    const std::vector<double>& ya = stationary[0].values;
    const std::vector<double>& yb = stationary[1].values;

    const int t = static_cast<int>(ya.size());
    const int max_lag = std::max(1, std::min(config.max_lag_cap, t / 10));
    const int lag = fpe_select(ya, yb, max_lag);

    Relation rel;
    rel.a = sa.name;
    rel.b = sb.name;
    rel.lag = lag;
    rel.diff_order = d;
    rel.forward = granger_test(yb, ya, lag);  // does a predict b?
    rel.forward.cause = sa.name;
    rel.forward.effect = sb.name;
    rel.backward = granger_test(ya, yb, lag);
    rel.backward.cause = sb.name;
    rel.backward.effect = sa.name;
    rel.kind = classify_pair(rel.forward, rel.backward, alpha_eff);
    return rel;
  });

  CausalNetwork net;
  net.nodes.reserve(n);
  for (const auto& s : series) net.nodes.push_back(s.name);
  net.relations = std::move(relations);
  net.period = period;
  net.alpha = alpha_eff;
  return net;
}

std::vector<NodeCounts> relation_counts(const CausalNetwork& net) {
  std::vector<NodeCounts> counts;
  counts.reserve(net.nodes.size());
  std::map<std::string, std::size_t> index;
  for (const auto& node : net.nodes) {
    index.emplace(node, counts.size());
    counts.push_back(NodeCounts{node, 0, 0, 0});
  }
  for (const auto& rel : net.relations) {
    const auto ia = index.find(rel.a);
    const auto ib = index.find(rel.b);
    if (ia == index.end() || ib == index.end()) {
      throw ValidationError("relation references unknown node '" +
                            (ia == index.end() ? rel.a : rel.b) + "'");
    }
    NodeCounts& ca = counts[ia->second];
    NodeCounts& cb = counts[ib->second];
    switch (rel.kind) {
      case RelationKind::independent:
        break;
      case RelationKind::a_causes_b:
        ++ca.cause;
        ++cb.effect;
        break;
      case RelationKind::b_causes_a:
        ++cb.cause;
        ++ca.effect;
        break;
      case RelationKind::bidirectional:
        ++ca.bidirectional;
        ++cb.bidirectional;
        break;
    }
  }
  return counts;
}

std::string export_dot(const CausalNetwork& net) {
  const std::vector<NodeCounts> counts = relation_counts(net);
  std::ostringstream out;
  out << "digraph influence {\n";
  out << "  label=" << quote_dot(net.period.label + " (" + net.period.start.iso() +
                                 " to " + net.period.end.iso() + ")")
      << ";\n";
  out << "  node [style=filled];\n";
  for (const auto& c : counts) {
    out << "  " << quote_dot(c.node) << " [fillcolor="
        << bucket_color(c.cause + c.effect + c.bidirectional) << "];\n";
  }
  for (const auto& rel : net.relations) {
    switch (rel.kind) {
      case RelationKind::independent:
        break;
      case RelationKind::a_causes_b:
        out << "  " << quote_dot(rel.a) << " -> " << quote_dot(rel.b) << ";\n";
        break;
      case RelationKind::b_causes_a:
        out << "  " << quote_dot(rel.b) << " -> " << quote_dot(rel.a) << ";\n";
        break;
      case RelationKind::bidirectional:
        out << "  " << quote_dot(rel.a) << " -> " << quote_dot(rel.b)
            << " [dir=both];\n";
        break;
    }
  }
  out << "}\n";
  return out.str();
}

std::string export_json(const CausalNetwork& net) {
  json j;
  j["period"] = {{"label", net.period.label},
                 {"start", net.period.start.iso()},
                 {"end", net.period.end.iso()}};
  j["alpha"] = net.alpha;
  j["nodes"] = net.nodes;
  json rels = json::array();
  for (const auto& rel : net.relations) {
    rels.push_back(json{{"a", rel.a},
                        {"b", rel.b},
                        {"kind", to_string(rel.kind)},
                        {"forward", granger_to_json(rel.forward)},
                        {"backward", granger_to_json(rel.backward)},
                        {"lag", rel.lag},
                        {"diff_order", rel.diff_order}});
  }
  j["relations"] = std::move(rels);
  return j.dump(2) + "\n";
}

CausalNetwork network_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("network JSON: ") + e.what());
  }
  try {
    CausalNetwork net;
    net.period.label = j.at("period").at("label").get<std::string>();
    net.period.start = Date::parse(j.at("period").at("start").get<std::string>());
    net.period.end = Date::parse(j.at("period").at("end").get<std::string>());
    net.alpha = j.at("alpha").get<double>();
    net.nodes = j.at("nodes").get<std::vector<std::string>>();
    for (const auto& r : j.at("relations")) {
      Relation rel;
      rel.a = r.at("a").get<std::string>();
      rel.b = r.at("b").get<std::string>();
      rel.kind = relation_kind_from_string(r.at("kind").get<std::string>());
      rel.forward = granger_from_json(r.at("forward"));
      rel.backward = granger_from_json(r.at("backward"));
      rel.lag = r.at("lag").get<int>();
      rel.diff_order = r.at("diff_order").get<int>();
      net.relations.push_back(std::move(rel));
    }
    return net;
  } catch (const json::exception& e) {
    throw ParseError(std::string("network JSON: ") + e.what());
  }
}

std::string counts_csv(const CausalNetwork& net) {
  std::ostringstream out;
  out << "node,cause,effect,bidirectional\n";
  for (const auto& c : relation_counts(net)) {
    out << c.node << ',' << c.cause << ',' << c.effect << ',' << c.bidirectional
        << '\n';
  }
  return out.str();
}

}  // namespace tdac
