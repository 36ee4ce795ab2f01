#include "tdac/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "tdac/errors.hpp"

namespace tdac {
namespace {

// Union-find with path halving and union by size.
class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool merge(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

struct Edge {
  double weight;
  std::uint32_t i, j;  // i < j
};

}  // namespace

DistanceMatrix pairwise_distances(std::span<const std::vector<double>> points) {
  if (points.empty()) throw ValidationError("pairwise_distances: empty point set");
  const std::size_t m = points.size();
  const std::size_t dim = points.front().size();
  for (const auto& p : points) {
    if (p.size() != dim) {
      throw ValidationError("pairwise_distances: dimension mismatch");
    }
  }
  DistanceMatrix d;
  d.size = m;
  d.entries.assign(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double diff = points[i][k] - points[j][k];
        s += diff * diff;
      }
      const double dist = std::sqrt(s);
      d.entries[i * m + j] = dist;
      d.entries[j * m + i] = dist;
    }
  }
  return d;
}

std::size_t PersistenceDiagram::total_points() const {
  std::size_t n = 0;
  for (const auto& p : points) n += static_cast<std::size_t>(p.multiplicity);
  return n;
}

PersistenceDiagram h0_persistence(const DistanceMatrix& d) {
  const std::size_t m = d.size;
  if (m == 0) throw ValidationError("h0_persistence: empty distance matrix");

  std::vector<Edge> edges;
  edges.reserve(m * (m - 1) / 2);
  for (std::uint32_t i = 0; i < m; ++i) {
    for (std::uint32_t j = i + 1; j < m; ++j) {
      edges.push_back({d.at(i, j), i, j});
    }
  }
  // Kruskal order; ties broken by lower index pair for a deterministic merge
  // sequence (the resulting diagram is order-independent either way).
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });

  DisjointSet components(m);
  std::vector<double> deaths;
  deaths.reserve(m - 1);
  for (const auto& e : edges) {
    if (components.merge(e.i, e.j)) {
      deaths.push_back(e.weight);
      if (deaths.size() == m - 1) break;
    }
  }

  PersistenceDiagram pd;
  pd.homology_dim = 0;
  for (std::size_t k = 0; k < deaths.size();) {
    std::size_t run = k + 1;
    while (run < deaths.size() && deaths[run] == deaths[k]) ++run;
    pd.points.push_back({0.0, deaths[k], static_cast<int>(run - k)});
    k = run;
  }
  return pd;
}

std::string diagram_to_json(const PersistenceDiagram& pd) {
  nlohmann::json j;
  j["homology_dim"] = pd.homology_dim;
  j["points"] = nlohmann::json::array();
  for (const auto& p : pd.points) {
    j["points"].push_back({{"birth", p.birth},
                           {"death", p.death},
                           {"multiplicity", p.multiplicity}});
  }
  return j.dump(2);
}

PersistenceDiagram diagram_from_json(const std::string& text) {
  PersistenceDiagram pd;
  try {
    auto j = nlohmann::json::parse(text);
    pd.homology_dim = j.at("homology_dim").get<int>();
    for (const auto& jp : j.at("points")) {
      pd.points.push_back({jp.at("birth").get<double>(),
                           jp.at("death").get<double>(),
                           jp.at("multiplicity").get<int>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("diagram_from_json: ") + e.what());
  }
  for (const auto& p : pd.points) {
    if (p.death < p.birth || p.multiplicity <= 0) {
      throw ValidationError("diagram_from_json: invalid diagram point");
    }
  }
  return pd;
}

}  // namespace tdac
