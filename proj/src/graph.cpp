#include "maxplus/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>

#include "maxplus/error.hpp"

namespace maxplus {

void Digraph::normalize() {
  for (auto& succ : out) {
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
  }
}

Digraph support_graph(const Matrix& a) {
  const std::size_t n = a.dim();
  Digraph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j).is_finite()) g.add_edge(i, j);
    }
  }
  return g;
}

Digraph from_edges(std::size_t n, std::span<const Edge> edges) {
  Digraph g(n);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  g.normalize();
  return g;
}

// Iterative Tarjan.
std::vector<NodeSet> strongly_connected_components(const Digraph& g) {
  const std::size_t n = g.size();
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<NodeSet> components;
  std::size_t counter = 0;

  struct Frame {
    std::size_t node;
    std::size_t next;
  };
  std::vector<Frame> frames;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& succ = g.out[f.node];
      if (f.next < succ.size()) {
        const std::size_t w = succ[f.next++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      const std::size_t v = f.node;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().node] = std::min(low[frames.back().node], low[v]);
      if (low[v] == index[v]) {
        NodeSet comp;
        std::size_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
    }
  }
  std::sort(components.begin(), components.end(),
            [](const NodeSet& a, const NodeSet& b) { return a.front() < b.front(); });
  return components;
}

bool is_strongly_connected(const Digraph& g) {
  return g.size() > 0 && strongly_connected_components(g).size() == 1;
}

Levelling bfs_levelling(const Digraph& g, std::span<const std::size_t> nodes, std::size_t anchor) {
  Levelling out;
  out.level.assign(g.size(), -1);
  std::vector<bool> inside(g.size(), false);
  for (std::size_t v : nodes) inside[v] = true;

  std::queue<std::size_t> queue;
  out.level[anchor] = 0;
  queue.push(anchor);
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop();
    for (std::size_t v : g.out[u]) {
      if (!inside[v] || out.level[v] >= 0) continue;
      out.level[v] = out.level[u] + 1;
      queue.push(v);
    }
  }

  std::uint64_t period = 0;
  for (std::size_t u : nodes) {
    for (std::size_t v : g.out[u]) {
      if (!inside[v]) continue;
      const std::int64_t d = out.level[u] + 1 - out.level[v];
      period = std::gcd(period, static_cast<std::uint64_t>(d < 0 ? -d : d));
    }
  }
  out.period = period;
  return out;
}

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  const std::uint64_t g = std::gcd(a, b);
  const std::uint64_t q = a / g;
  if (q > std::numeric_limits<std::uint64_t>::max() / b) {
    throw Error(Errc::GammaOverflow, "lcm of cyclicities exceeds 64 bits");
  }
  return q * b;
}

}  // namespace maxplus
