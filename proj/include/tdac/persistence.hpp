// 0-dimensional persistent homology of the Rips filtration of a point cloud.
//
// For H0 the persistence structure of a Rips filtration is exactly the
// single-linkage merge tree: components are all born at scale 0 and a
// component dies at the weight of the minimum-spanning-tree edge that merges
// it into an older one. We therefore compute diagrams by union-find over
// edges in nondecreasing weight order instead of building complexes; for
// m points this is exact and O(m^2 log m).
#pragma once

#include <span>
#include <string>
#include <vector>

namespace tdac {

/// Symmetric Euclidean distance matrix, zero diagonal, row-major.
struct DistanceMatrix {
  std::size_t size = 0;
  std::vector<double> entries;  // size * size

  double at(std::size_t i, std::size_t j) const { return entries[i * size + j]; }
};

DistanceMatrix pairwise_distances(std::span<const std::vector<double>> points);

struct DiagramPoint {
  double birth = 0.0;
  double death = 0.0;
  int multiplicity = 1;
};

/// Multiset of finite (birth, death) pairs. The one essential component that
/// never dies is excluded: it would put an infinite coordinate into every
/// transport computation downstream.
struct PersistenceDiagram {
  std::vector<DiagramPoint> points;  // sorted by (birth, death)
  int homology_dim = 0;

  bool empty() const { return points.empty(); }
  /// Number of off-diagonal points counting multiplicity.
  std::size_t total_points() const;
};

/// Diagram of a distance matrix on m >= 1 points: exactly m-1 finite points,
/// births all zero, deaths the MST edge weights in nondecreasing order with
/// equal deaths aggregated via multiplicity.
PersistenceDiagram h0_persistence(const DistanceMatrix& d);

std::string diagram_to_json(const PersistenceDiagram& pd);
PersistenceDiagram diagram_from_json(const std::string& text);

}  // namespace tdac
