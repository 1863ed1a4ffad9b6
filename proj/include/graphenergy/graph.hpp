#ifndef GRAPHENERGY_GRAPH_HPP_
#define GRAPHENERGY_GRAPH_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graphenergy/rng.hpp"

namespace graphenergy {

/// Unordered vertex pair stored with first < second.
struct Edge {
  std::size_t first = 0;
  std::size_t second = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on vertices 0..n-1. Immutable once built; edges
/// are kept sorted so that equal graphs compare and serialize identically.
class Graph {
 public:
  Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ == 0) throw std::invalid_argument("graph: vertex count must be positive");
    for (auto& e : edges_) {
      if (e.first == e.second) {
        throw std::invalid_argument("graph: self-loop at vertex " + std::to_string(e.first));
      }
      if (e.first > e.second) std::swap(e.first, e.second);
      if (e.second >= n_) {
        throw std::invalid_argument("graph: edge (" + std::to_string(e.first) + "," +
                                    std::to_string(e.second) + ") out of range for n=" +
                                    std::to_string(n_));
      }
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) {
      throw std::invalid_argument("graph: duplicate edge (" + std::to_string(dup->first) + "," +
                                  std::to_string(dup->second) + ")");
    }
    degrees_.assign(n_, 0);
    for (const auto& e : edges_) {
      ++degrees_[e.first];
      ++degrees_[e.second];
    }
  }

  std::size_t order() const noexcept { return n_; }
  std::size_t size() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& degrees() const noexcept { return degrees_; }
  std::size_t degree(std::size_t v) const { return degrees_.at(v); }

  bool has_edge(std::size_t i, std::size_t j) const {
    if (i == j) return false;
    if (i > j) std::swap(i, j);
    return std::binary_search(edges_.begin(), edges_.end(), Edge{i, j});
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> degrees_;
};

inline const std::vector<std::size_t>& degrees(const Graph& g) { return g.degrees(); }

/// G(n, p): every one of the n(n-1)/2 pairs is kept independently with
/// probability p, one uniform draw per pair in (i, j) lexicographic order.
inline Graph sample_gnp(std::size_t n, double p, const Seed& seed) {
  if (n == 0) throw std::invalid_argument("sample_gnp: n must be at least 1");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("sample_gnp: p must lie in (0,1)");
  TrialRng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(p * static_cast<double>(n) * static_cast<double>(n - 1) / 2.0 * 1.05) + 16);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.uniform() < p) edges.push_back({i, j});
    }
  }
  return Graph(n, std::move(edges));
}

enum class NamedGraph { complete, path, cycle, empty };

inline Graph make_named(NamedGraph kind, std::size_t n) {
  if (n == 0) throw std::invalid_argument("make_named: n must be at least 1");
  std::vector<Edge> edges;
  switch (kind) {
    case NamedGraph::complete:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j});
      break;
    case NamedGraph::path:
      for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
      break;
    case NamedGraph::cycle:
      if (n < 3) throw std::invalid_argument("make_named: cycle needs n >= 3");
      for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
      edges.push_back({0, n - 1});
      break;
    case NamedGraph::empty:
      break;
  }
  return Graph(n, std::move(edges));
}

/// Edge-list text format: "n m" on the first line, then m lines "i j" with i < j.
inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.order() << ' ' << g.size() << '\n';
  for (const auto& e : g.edges()) out << e.first << ' ' << e.second << '\n';
}

inline Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  auto fail = [&](const std::string& what) -> std::runtime_error {
    return std::runtime_error("edge list line " + std::to_string(line_no) + ": " + what);
  };
  if (!next_line()) throw fail("missing header \"n m\"");
  std::size_t n = 0, m = 0;
  {
    std::istringstream header(line);
    std::string rest;
    if (!(header >> n >> m) || (header >> rest)) throw fail("expected \"n m\"");
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    if (!next_line()) throw fail("expected " + std::to_string(m) + " edges, got " + std::to_string(k));
    std::istringstream row(line);
    std::size_t i = 0, j = 0;
    std::string rest;
    if (!(row >> i >> j) || (row >> rest)) throw fail("expected \"i j\"");
    if (i >= j) throw fail("edge must satisfy i < j");
    edges.push_back({i, j});
  }
  if (next_line()) throw fail("trailing data after " + std::to_string(m) + " edges");
  try {
    return Graph(n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("edge list: ") + e.what());
  }
}

}  // namespace graphenergy

#endif  // GRAPHENERGY_GRAPH_HPP_
