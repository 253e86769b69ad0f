#include <doctest.h>

#include <random>

#include "maxplus/cyclic.hpp"
#include "support/golden.hpp"
#include "support/oracles.hpp"

using namespace maxplus;

namespace {

// Six-cycle 1->2->...->6->1 with the chord 1->4 (0-based below).
Matrix six_cycle_with_chord() {
  Matrix a(6, 6, Scalar(-5));
  for (std::size_t i = 0; i < 6; ++i) a(i, (i + 1) % 6) = kUnit;
  a(0, 3) = kUnit;
  return a;
}

std::vector<std::vector<NodeSet>> sorted_partition(std::vector<std::vector<NodeSet>> p) {
  for (auto& comp : p) std::sort(comp.begin(), comp.end());
  return p;
}

}  // namespace

TEST_CASE("six-cycle with a chord has two classes") {
  const SpectralData sd = critical_graph(six_cycle_with_chord());
  const CyclicClasses cc = cyclic_classes(sd);
  REQUIRE(cc.component_count() == 1);
  CHECK(cc.classes(0) == std::vector<NodeSet>{{0, 2, 4}, {1, 3, 5}});
  CHECK(balcer_veinott_partition(sd) == cc.all());
}

TEST_CASE("classes of the 9x9 example") {
  const CyclicClasses cc = cyclic_classes(critical_graph(golden::ex71()));
  CHECK(cc.classes(0) == std::vector<NodeSet>{{0, 2}, {1, 3}});
  CHECK(cc.classes(1) == std::vector<NodeSet>{{4}, {5}, {6}});
  CHECK(cc.class_count() == 5);
}

TEST_CASE("single loop has one class") {
  const CyclicClasses cc = cyclic_classes(critical_graph(Matrix::from_rows({{0}})));
  CHECK(cc.classes(0) == std::vector<NodeSet>{{0}});
}

TEST_CASE("access relation") {
  const CyclicClasses cc = cyclic_classes(critical_graph(golden::ex71()));
  CHECK(access(cc, 2, 2) == 0);
  CHECK(access(cc, 0, 1) == 1);
  CHECK(access(cc, 0, 4) == std::nullopt);
  CHECK(access(cc, 5, 4) == 2);
  CHECK_THROWS_AS(access(cc, 0, 7), Error);
}

TEST_CASE("class shift") {
  const CyclicClasses cc = cyclic_classes(critical_graph(golden::ex73()));
  CHECK(class_shift(cc, 0, 0) == NodeSet{0});
  CHECK(class_shift(cc, 0, 3) == NodeSet{0});
  CHECK(class_shift(cc, 0, 1) == NodeSet{2});
  CHECK(class_shift(cc, 0, -1) == NodeSet{1});
  CHECK_THROWS_AS(class_shift(cc, 4, 1), Error);
}

TEST_CASE("critical edges advance the class by one") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const SpectralData sd = critical_graph(oracle::random_visualized(rng, 7));
    const CyclicClasses cc = cyclic_classes(sd);
    for (const Edge& e : sd.critical_edges) CHECK(access(cc, e.first, e.second) == 1 % cc.cyclicity(*sd.component_of[e.first]));
    for (std::size_t mu = 0; mu < sd.components.size(); ++mu) {
      CHECK(cc.classes(mu).front().front() == sd.components[mu].front());
    }
  }
}

TEST_CASE("Balcer-Veinott condensation agrees with BFS levels") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 300; ++trial) {
    const SpectralData sd = critical_graph(oracle::random_visualized(rng, 8));
    CHECK(sorted_partition(balcer_veinott_partition(sd)) == sorted_partition(cyclic_classes(sd).all()));
  }
}

TEST_CASE("path lengths are congruent modulo the cyclicity") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 5 + trial % 4;
    const SpectralData sd = critical_graph(oracle::random_visualized(rng, n));
    const CyclicClasses cc = cyclic_classes(sd);
    // reach[l][i][j]: a path of length l in the critical graph
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) reach[i][i] = sd.is_critical(i);
    for (std::size_t len = 0; len <= 2 * n; ++len) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (!reach[i][j]) continue;
          const ClassLabel l = cc.checked_label(i);
          CHECK(access(cc, i, j) == len % cc.cyclicity(l.component));
        }
      }
      std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
      for (std::size_t i = 0; i < n; ++i) {
        for (const Edge& e : sd.critical_edges) {
          if (reach[i][e.first]) next[i][e.second] = true;
        }
      }
      reach = std::move(next);
    }
  }
}

TEST_CASE("critical matrix in class order has superdiagonal blocks only") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    const SpectralData sd = critical_graph(oracle::random_visualized(rng, 7));
    const CyclicClasses cc = cyclic_classes(sd);
    for (const Edge& e : sd.critical_edges) {
      const ClassLabel from = cc.checked_label(e.first);
      const ClassLabel to = cc.checked_label(e.second);
      CHECK(from.component == to.component);
      CHECK(to.shift == (from.shift + 1) % cc.cyclicity(from.component));
    }
  }
}
