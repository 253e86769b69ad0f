#include "maxplus/cyclic.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "maxplus/error.hpp"

namespace maxplus {

namespace {

std::uint64_t wrap(std::int64_t value, std::uint64_t modulus) {
  const auto m = static_cast<std::int64_t>(modulus);
  return static_cast<std::uint64_t>(((value % m) + m) % m);
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace

CyclicClasses::CyclicClasses(std::vector<std::vector<NodeSet>> classes, std::size_t n)
    : classes_(std::move(classes)), labels_(n) {
  for (std::size_t mu = 0; mu < classes_.size(); ++mu) {
    for (std::size_t s = 0; s < classes_[mu].size(); ++s) {
      for (std::size_t v : classes_[mu][s]) labels_.at(v) = ClassLabel{mu, s};
    }
  }
}

std::size_t CyclicClasses::class_count() const noexcept {
  std::size_t total = 0;
  for (const auto& comp : classes_) total += comp.size();
  return total;
}

ClassLabel CyclicClasses::checked_label(std::size_t node) const {
  if (node >= labels_.size() || !labels_[node]) {
    throw Error(Errc::NonCriticalNode, "node " + std::to_string(node + 1) + " is not critical");
  }
  return *labels_[node];
}

const NodeSet& CyclicClasses::class_of(std::size_t node) const {
  const ClassLabel l = checked_label(node);
  return classes_[l.component][l.shift];
}

const NodeSet& CyclicClasses::class_at(std::size_t component, std::int64_t shift) const {
  const auto& comp = classes_.at(component);
  return comp[wrap(shift, comp.size())];
}

CyclicClasses cyclic_classes(const SpectralData& sd) {
  const Digraph critical = from_edges(sd.dim(), sd.critical_edges);
  std::vector<std::vector<NodeSet>> classes;
  for (std::size_t mu = 0; mu < sd.components.size(); ++mu) {
    const NodeSet& comp = sd.components[mu];
    const Levelling lv = bfs_levelling(critical, comp, comp.front());
    std::vector<NodeSet> parts(lv.period);
    for (std::size_t v : comp) parts[wrap(lv.level[v], lv.period)].push_back(v);
    classes.push_back(std::move(parts));
  }
  return CyclicClasses(std::move(classes), sd.dim());
}

std::vector<std::vector<NodeSet>> balcer_veinott_partition(const SpectralData& sd) {
  const std::size_t n = sd.dim();
  const Digraph critical = from_edges(n, sd.critical_edges);
  UnionFind uf(n);

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::vector<std::size_t>> succ(n);
    for (const Edge& e : sd.critical_edges) succ[uf.find(e.first)].push_back(e.second);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t k = 1; k < succ[r].size(); ++k) changed |= uf.unite(succ[r][0], succ[r][k]);
    }
  }

  std::vector<std::vector<NodeSet>> result;
  for (const NodeSet& comp : sd.components) {
    std::vector<std::size_t> root_order;
    std::size_t root = uf.find(comp.front());
    do {
      root_order.push_back(root);
      std::size_t next = root;
      for (std::size_t u : comp) {
        if (uf.find(u) != root || critical.out[u].empty()) continue;
        next = uf.find(critical.out[u].front());
        break;
      }
      root = next;
    } while (root != root_order.front() && root_order.size() <= comp.size());

    std::vector<NodeSet> parts(root_order.size());
    for (std::size_t v : comp) {
      const auto it = std::find(root_order.begin(), root_order.end(), uf.find(v));
      parts[static_cast<std::size_t>(it - root_order.begin())].push_back(v);
    }
    result.push_back(std::move(parts));
  }
  return result;
}

std::optional<std::uint64_t> access(const CyclicClasses& cc, std::size_t i, std::size_t j) {
  const ClassLabel li = cc.checked_label(i);
  const ClassLabel lj = cc.checked_label(j);
  if (li.component != lj.component) return std::nullopt;
  const std::uint64_t g = cc.cyclicity(li.component);
  return (lj.shift + g - li.shift) % g;
}

const NodeSet& class_shift(const CyclicClasses& cc, std::size_t i, std::int64_t m) {
  const ClassLabel l = cc.checked_label(i);
  return cc.class_at(l.component, static_cast<std::int64_t>(l.shift) - m);
}

}  // namespace maxplus
