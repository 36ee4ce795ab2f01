// Degree-p Wasserstein distances between persistence diagrams.
//
// Ground metric is the sup norm; each diagram is augmented with the diagonal
// projections of the other diagram's points, and the optimal pairing is
// solved exactly with a Hungarian assignment on the augmented square cost
// matrix. Window-scale diagrams here stay small (tens of points), so an
// exact O(n^3) solve is cheap.
#pragma once

#include <string>
#include <vector>

#include "tdac/persistence.hpp"

namespace tdac {

/// One matched pair of an optimal transport plan. Index -1 denotes the
/// diagonal projection of the opposite point.
struct MatchPair {
  int source = -1;  // index into the expanded first diagram, or -1
  int target = -1;  // index into the expanded second diagram, or -1
  double cost = 0.0;  // sup-norm distance raised to the p-th power
};

struct Matching {
  std::vector<MatchPair> pairs;
  double cost = 0.0;  // sum of pair costs
  double degree = 1.0;
};

/// Distance from a diagram to the empty diagram (every point pairs with its
/// diagonal projection): (sum of mu * ((death-birth)/2)^p)^(1/p).
double wd_to_diagonal(const PersistenceDiagram& pd, double p);

/// Minimum-cost perfect matching between two diagrams under degree p.
/// Multiplicities are expanded before matching.
Matching optimal_matching(const PersistenceDiagram& pd1,
                          const PersistenceDiagram& pd2, double p);

/// Degree-p Wasserstein distance: (optimal matching cost)^(1/p).
double wd_between(const PersistenceDiagram& pd1, const PersistenceDiagram& pd2,
                  double p);

std::string matching_to_json(const Matching& m);

/// Expands multiplicities into a flat (birth, death) list; shared by the
/// solver and by diagnostics.
std::vector<std::pair<double, double>> expand_diagram(const PersistenceDiagram& pd);

}  // namespace tdac
