#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "maxplus/matrix.hpp"

namespace maxplus {

using NodeSet = std::vector<std::size_t>;
using Edge = std::pair<std::size_t, std::size_t>;

// Adjacency lists; successors kept sorted.
struct Digraph {
  std::vector<std::vector<std::size_t>> out;

  explicit Digraph(std::size_t n = 0) : out(n) {}
  std::size_t size() const noexcept { return out.size(); }
  void add_edge(std::size_t from, std::size_t to) { out[from].push_back(to); }
  void normalize();  // sort and deduplicate successor lists
};

// D(A): edge (i,j) iff a_ij is finite.
Digraph support_graph(const Matrix& a);
Digraph from_edges(std::size_t n, std::span<const Edge> edges);

// Strongly connected components (Tarjan). Each component is sorted; the list
// is ordered by smallest member.
std::vector<NodeSet> strongly_connected_components(const Digraph& g);

bool is_strongly_connected(const Digraph& g);

// BFS levels from `anchor` inside one strongly connected node set. The period
// is the gcd of level(u) + 1 - level(v) over the edges (u,v) inside the set,
// which equals the gcd of all cycle lengths.
struct Levelling {
  std::vector<std::int64_t> level;  // indexed by node; -1 outside the set
  std::uint64_t period = 0;
};
Levelling bfs_levelling(const Digraph& g, std::span<const std::size_t> nodes, std::size_t anchor);

// lcm with overflow detection (GammaOverflow).
std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b);

}  // namespace maxplus
