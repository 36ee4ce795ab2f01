// Pairwise directional-influence classification over dated series, per
// analysis period, plus DOT/JSON/CSV exports of the resulting network.
#pragma once

#include <string>
#include <vector>

#include "tdac/dates.hpp"
#include "tdac/econometrics.hpp"

namespace tdac {

/// Half-open analysis window [start, end) over series dates.
struct PeriodSpec {
  std::string label;  // "pre-crash", "crash", "post-crash", or custom
  Date start{};
  Date end{};
};

/// One named value series; dates and values run in parallel.
struct NodeSeries {
  std::string name;
  std::vector<Date> dates;
  std::vector<double> values;
};

enum class RelationKind { independent, a_causes_b, b_causes_a, bidirectional };

std::string to_string(RelationKind kind);
RelationKind relation_kind_from_string(const std::string& s);

/// Outcome for one unordered node pair: both directed F-tests plus the
/// classification at the configured level.
struct Relation {
  std::string a;
  std::string b;
  RelationKind kind = RelationKind::independent;
  GrangerResult forward;   // a -> b
  GrangerResult backward;  // b -> a
  int lag = 0;             // shared lag order, selected once per pair
  int diff_order = 0;      // differencing applied before testing
};

struct CausalNetwork {
  std::vector<std::string> nodes;
  std::vector<Relation> relations;  // one per unordered pair
  PeriodSpec period;
  double alpha = 0.05;
};

struct PairwiseConfig {
  double alpha = 0.05;
  int d_max = 2;         // deepest differencing tried for stationarity
  int max_lag_cap = 10;  // lag search is 1..min(cap, n/10)
  int min_obs = 30;      // fewest in-period observations accepted per node
  bool bonferroni = false;  // divide alpha by the number of pairs
};

/// Classification rule: both p-values under alpha -> bidirectional, exactly
/// one -> that direction, neither -> independent. res_ab tests a -> b.
RelationKind classify_pair(const GrangerResult& res_ab, const GrangerResult& res_ba,
                           double alpha);

/// Runs the full per-pair procedure for every unordered node pair: slice each
/// series to the period, difference the pair to joint stationarity, pick one
/// lag order, test both directions, classify. Node order follows the input;
/// pairs run in parallel with deterministic output order.
/// Throws ValidationError for bad inputs and CoverageError (naming the node)
/// when a series has fewer than config.min_obs observations in the period.
CausalNetwork pairwise_analysis(const std::vector<NodeSeries>& series,
                                const PeriodSpec& period,
                                const PairwiseConfig& config = {});

/// Per-node tallies in network node order.
struct NodeCounts {
  std::string node;
  int cause = 0;          // pairs where the node is the sole cause
  int effect = 0;         // pairs where the node is the sole effect
  int bidirectional = 0;  // pairs influencing each other
};

std::vector<NodeCounts> relation_counts(const CausalNetwork& net);

/// Graphviz digraph: one arrow per one-way relation, dir=both per mutual
/// relation, node fill bucketed by total relation count.
std::string export_dot(const CausalNetwork& net);

/// Full-fidelity JSON (every Relation field); network_from_json inverts it.
std::string export_json(const CausalNetwork& net);
CausalNetwork network_from_json(const std::string& text);

/// Counts table: node,cause,effect,bidirectional with a header row.
std::string counts_csv(const CausalNetwork& net);

}  // namespace tdac
