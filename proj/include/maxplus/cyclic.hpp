#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "maxplus/spectral.hpp"

namespace maxplus {

struct ClassLabel {
  std::size_t component;  // index into SpectralData::components
  std::uint64_t shift;    // s, with 0 <= s < cyclicity of the component
  friend bool operator==(const ClassLabel&, const ClassLabel&) = default;
};

// Cyclic classes of every critical component. Class s of a component holds
// the nodes whose BFS level from the smallest node is s modulo the
// cyclicity, so edges of C(A) go from class s to class s+1.
class CyclicClasses {
 public:
  CyclicClasses() = default;
  CyclicClasses(std::vector<std::vector<NodeSet>> classes, std::size_t n);

  std::size_t component_count() const noexcept { return classes_.size(); }
  std::uint64_t cyclicity(std::size_t component) const { return classes_.at(component).size(); }
  const std::vector<NodeSet>& classes(std::size_t component) const { return classes_.at(component); }
  const std::vector<std::vector<NodeSet>>& all() const noexcept { return classes_; }

  // Number of cyclic classes over all components.
  std::size_t class_count() const noexcept;

  std::optional<ClassLabel> label(std::size_t node) const { return labels_.at(node); }
  // Throws NonCriticalNode.
  ClassLabel checked_label(std::size_t node) const;
  const NodeSet& class_of(std::size_t node) const;
  const NodeSet& class_at(std::size_t component, std::int64_t shift) const;

 private:
  std::vector<std::vector<NodeSet>> classes_;
  std::vector<std::optional<ClassLabel>> labels_;
};

CyclicClasses cyclic_classes(const SpectralData& sd);

// Balcer-Veinott condensation: merge the successors of every condensed node
// until each condensed node has a single successor. Returns, per component,
// the classes in cycle order starting from the class of the smallest node.
std::vector<std::vector<NodeSet>> balcer_veinott_partition(const SpectralData& sd);

// The l with [i] ->_l [j], or nothing when i and j lie in different
// components. Throws NonCriticalNode.
std::optional<std::uint64_t> access(const CyclicClasses& cc, std::size_t i, std::size_t j);

// The class [k] with [k] ->_m [i], i.e. the class of i shifted back by m.
const NodeSet& class_shift(const CyclicClasses& cc, std::size_t i, std::int64_t m);

}  // namespace maxplus
