#include "tdac/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "tdac/errors.hpp"

namespace tdac {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Kuhn-Munkres with row/column potentials, O(n^3). Returns the column
// assigned to each row. cost is a dense n x n row-major matrix.
std::vector<int> solve_assignment(const std::vector<double>& cost, int n) {
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = match[j0], j1 = 0;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (match[j] > 0) row_to_col[match[j] - 1] = j - 1;
  }
  return row_to_col;
}

double sup_norm(const std::pair<double, double>& a,
                const std::pair<double, double>& b) {
  return std::max(std::abs(a.first - b.first), std::abs(a.second - b.second));
}

double diagonal_gap(const std::pair<double, double>& a) {
  return (a.second - a.first) / 2.0;
}

void check_degree(double p) {
  if (!(p >= 1.0)) throw ValidationError("wasserstein: degree p must be >= 1");
}

}  // namespace

std::vector<std::pair<double, double>> expand_diagram(const PersistenceDiagram& pd) {
  std::vector<std::pair<double, double>> out;
  out.reserve(pd.total_points());
  for (const auto& pt : pd.points) {
    for (int k = 0; k < pt.multiplicity; ++k) out.emplace_back(pt.birth, pt.death);
  }
  return out;
}

double wd_to_diagonal(const PersistenceDiagram& pd, double p) {
  check_degree(p);
  double sum = 0.0;
  for (const auto& pt : pd.points) {
    sum += pt.multiplicity * std::pow((pt.death - pt.birth) / 2.0, p);
  }
  return std::pow(sum, 1.0 / p);
}

Matching optimal_matching(const PersistenceDiagram& pd1,
                          const PersistenceDiagram& pd2, double p) {
  check_degree(p);
  const auto a = expand_diagram(pd1);
  const auto b = expand_diagram(pd2);
  const int n1 = static_cast<int>(a.size());
  const int n2 = static_cast<int>(b.size());
  const int n = n1 + n2;

  Matching result;
  result.degree = p;
  if (n == 0) return result;

  // Rows: points of pd1 then n2 diagonal slots; columns: points of pd2 then
  // n1 diagonal slots. Any diagonal slot may absorb any point of the opposite
  // side at that point's own diagonal gap; slot-to-slot is free.
  std::vector<double> cost(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double c;
      if (i < n1 && j < n2) {
        c = std::pow(sup_norm(a[i], b[j]), p);
      } else if (i < n1) {
        c = std::pow(diagonal_gap(a[i]), p);
      } else if (j < n2) {
        c = std::pow(diagonal_gap(b[j]), p);
      } else {
        c = 0.0;
      }
      cost[static_cast<size_t>(i) * n + j] = c;
    }
  }

  const auto row_to_col = solve_assignment(cost, n);
  for (int i = 0; i < n; ++i) {
    const int j = row_to_col[i];
    if (i >= n1 && j >= n2) continue;  // slot paired with slot, zero cost
    MatchPair pair;
    pair.source = i < n1 ? i : -1;
    pair.target = j < n2 ? j : -1;
    pair.cost = cost[static_cast<size_t>(i) * n + j];
    result.pairs.push_back(pair);
    result.cost += pair.cost;
  }
  return result;
}

double wd_between(const PersistenceDiagram& pd1, const PersistenceDiagram& pd2,
                  double p) {
  // Evaluate in a canonical argument order so the distance is exactly
  // symmetric: transposing the cost matrix changes summation order and can
  // move the result by an ulp otherwise.
  const auto a = expand_diagram(pd1);
  const auto b = expand_diagram(pd2);
  const bool swap = std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  const Matching m =
      swap ? optimal_matching(pd2, pd1, p) : optimal_matching(pd1, pd2, p);
  return std::pow(m.cost, 1.0 / p);
}

std::string matching_to_json(const Matching& m) {
  nlohmann::json j;
  j["degree"] = m.degree;
  j["cost"] = m.cost;
  j["pairs"] = nlohmann::json::array();
  for (const auto& pr : m.pairs) {
    nlohmann::json jp;
    jp["source"] = pr.source < 0 ? nlohmann::json("diagonal") : nlohmann::json(pr.source);
    jp["target"] = pr.target < 0 ? nlohmann::json("diagonal") : nlohmann::json(pr.target);
    jp["cost"] = pr.cost;
    j["pairs"].push_back(jp);
  }
  return j.dump(2);
}

}  // namespace tdac
