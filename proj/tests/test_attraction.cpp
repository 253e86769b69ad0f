#include <doctest.h>

#include <numeric>
#include <random>

#include "maxplus/attraction.hpp"
#include "support/golden.hpp"
#include "support/oracles.hpp"

using namespace maxplus;

namespace {

Side side(std::size_t node, std::vector<std::pair<std::size_t, double>> terms) {
  Side s{node, {}};
  for (auto [v, c] : terms) s.terms.push_back({v - 1, Scalar(c)});
  return s;
}

Matrix cycle_permutation(std::size_t n) {
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) a(i, (i + 1) % n) = kUnit;
  return a;
}

struct Instance {
  Matrix a;
  std::uint64_t transient;
};

std::vector<Instance> corpus(std::uint64_t seed, int count, std::size_t nmin, std::size_t nmax,
                             bool strongly_connected_critical = false) {
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  while (static_cast<int>(out.size()) < count) {
    const std::size_t n = nmin + rng() % (nmax - nmin + 1);
    Matrix a = oracle::random_visualized(rng, n);
    if (strongly_connected_critical && critical_graph(a).components.size() != 1) continue;
    const auto pc = oracle::power_cycle(a, 400);
    REQUIRE(pc.has_value());
    out.push_back({std::move(a), pc->transient});
  }
  return out;
}

// M_nu(i) at a residue: nodes of component nu attaining the core star entry.
NodeSet m_set(const PeriodicEngine& e, const CoreMatrix& core, const Matrix& p, std::size_t i, std::size_t nu) {
  NodeSet out;
  const std::size_t mu = core.block_of[i];
  for (std::size_t j : core.blocks[nu]) {
    if (p(i, j) == core.alpha_star(mu, nu)) out.push_back(j);
  }
  (void)e;
  return out;
}

bool union_of_classes(const CyclicClasses& cc, const NodeSet& set) {
  for (std::size_t v : set) {
    for (std::size_t w : cc.class_of(v)) {
      if (!std::binary_search(set.begin(), set.end(), w)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("attraction system of the visualized 9x9 example") {
  const PeriodicEngine e(golden::ex72());
  const AttractionSystem sys = attraction_system(e, 1);
  REQUIRE(sys.chains.size() == 2);
  CHECK(sys.chains[0].sides == std::vector<Side>{side(0, {{1, 0}, {4, 0}, {8, -1}, {9, -1}}),
                                                 side(1, {{2, 0}, {5, 0}, {7, -1}, {9, -1}}),
                                                 side(2, {{3, 0}, {6, 0}, {7, -1}, {8, -1}})});
  CHECK(sys.chains[1].sides == std::vector<Side>{side(6, {{2, -1}, {5, -1}, {7, 0}}),
                                                 side(7, {{3, -1}, {6, -1}, {8, 0}}),
                                                 side(8, {{1, -1}, {4, -1}, {9, 0}})});
  CHECK(to_text(sys) ==
        "x1 (+) x4 (+) (x8 - 1) (+) (x9 - 1) = x2 (+) x5 (+) (x7 - 1) (+) (x9 - 1) = x3 (+) x6 (+) (x7 - 1) (+) (x8 - 1)\n"
        "(x2 - 1) (+) (x5 - 1) (+) x7 = (x3 - 1) (+) (x6 - 1) (+) x8 = (x1 - 1) (+) (x4 - 1) (+) x9\n");
}

TEST_CASE("attraction system of the 6x6 example") {
  const PeriodicEngine e(golden::ex73());
  const AttractionSystem sys = attraction_system(e, 1);
  CHECK(to_text(sys) == "x1 (+) (x5 - 5) = x2 (+) (x6 - 3) = x3 (+) (x4 - 4)\n");
  REQUIRE(sys.index_sets.size() == 3);
  CHECK(sys.index_sets[0].noncritical == std::vector<Term>{{4, Scalar(-5)}});
  CHECK(sys.index_sets[1].noncritical == std::vector<Term>{{5, Scalar(-3)}});
  CHECK(sys.index_sets[2].noncritical == std::vector<Term>{{3, Scalar(-4)}});
}

TEST_CASE("chain cancellation of the raw critical subsystem") {
  const PeriodicEngine e(golden::ex73());
  // Rows of A^9 for the classes in chain order 1, 2, 3.
  const Matrix a9 = golden::ex73_a9();
  RawChain raw{0, {0, 1, 2}, {}};
  for (std::size_t i = 0; i < 3; ++i) raw.rows.push_back(Vector(a9.row(i).begin(), a9.row(i).end()));
  const Chain chain = chain_cancel(raw);
  CHECK(to_text(chain) == "x1 (+) (x5 - 5) = x2 (+) (x6 - 3) = x3 (+) (x4 - 4)");
  CHECK(chain == attraction_system(e, 1).chains.front());
}

TEST_CASE("cancellation leaves identical sides alone") {
  const RawChain raw{0, {0, 1}, {{Scalar(-1), Scalar(0)}, {Scalar(-1), Scalar(0)}}};
  const Chain chain = chain_cancel(raw);
  CHECK(chain.sides[0].terms == chain.sides[1].terms);
  CHECK(chain.sides[0].terms == std::vector<Term>{{0, Scalar(-1)}, {1, Scalar(0)}});
}

TEST_CASE("cancellation with explicit bounds") {
  const RawChain raw{0, {0, 1}, {{Scalar(-1), Scalar(-2)}, {Scalar(-3), Scalar(-2)}}};
  CHECK_NOTHROW(chain_cancel(raw, Vector{Scalar(-1), Scalar(-2)}));
  try {
    chain_cancel(raw, Vector{Scalar(0), Scalar(-2)});
    FAIL("expected CoverageGap");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CoverageGap);
  }
  CHECK_THROWS_AS(chain_cancel(raw, Vector{Scalar(-2), Scalar(-2)}), Error);
}

TEST_CASE("cancellation preserves the solution set") {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<int> d(-3, 1);
  const auto points = oracle::grid(4, {kUnit, Scalar(-1), kZero});
  for (int trial = 0; trial < 200; ++trial) {
    RawChain raw{0, {0, 1, 2}, {}};
    for (int l = 0; l < 3; ++l) {
      Vector row(4);
      for (auto& v : row) {
        const int r = d(rng);
        v = r == 1 ? kZero : Scalar(static_cast<double>(r));
      }
      raw.rows.push_back(row);
    }
    const Chain chain = chain_cancel(raw);
    const AttractionSystem sys{1, 4, {chain}, {}};
    for (const Vector& x : points) {
      Scalar first = kZero;
      bool raw_ok = true;
      for (std::size_t l = 0; l < 3; ++l) {
        Scalar v = kZero;
        for (std::size_t k = 0; k < 4; ++k) v = oplus(v, otimes(raw.rows[l][k], x[k]));
        if (l == 0) first = v;
        raw_ok = raw_ok && v == first;
      }
      CHECK(satisfies(sys, x) == raw_ok);
    }
  }
}

TEST_CASE("pure cycle with t equal to its length gives trivial chains") {
  const PeriodicEngine e(cycle_permutation(3));
  const AttractionSystem sys = attraction_system(e, 3);
  for (const Chain& chain : sys.chains) {
    for (const Side& s : chain.sides) CHECK(s.terms == chain.sides.front().terms);
  }
  CHECK(satisfies(sys, Vector{Scalar(1), Scalar(-4), Scalar(2)}));
  CHECK_THROWS_AS(attraction_system(e, 0), Error);
}

TEST_CASE("extremals of disjoint rows") {
  const CoveringProblem cp{5, {{0, 1}, {2}, {3, 4}}, Vector(5, kUnit)};
  const auto xs = extremals(cp);
  CHECK(xs.size() == 4);
  for (const Extremal& x : xs) CHECK(x.support.size() == 3);
}

TEST_CASE("single row") {
  const CoveringProblem cp{2, {{0, 1}}, Vector(2, kUnit)};
  const auto xs = extremals(cp);
  REQUIRE(xs.size() == 2);
  CHECK(xs[0].support == NodeSet{0});
  CHECK(xs[1].support == NodeSet{1});
}

TEST_CASE("extremals of the 6x6 example") {
  const PeriodicEngine e(golden::ex73());
  const AttractionSystem sys = attraction_system(e, 1);
  const CoveringProblem cp = covering_problem(sys);
  CHECK(cp.rows == std::vector<NodeSet>{{0, 4}, {1, 5}, {2, 3}});
  const auto xs = extremals(cp);
  CHECK(xs.size() == 8);
  std::vector<NodeSet> supports;
  for (const Extremal& x : xs) {
    supports.push_back(x.support);
    CHECK(satisfies(sys, x.unscaled));
  }
  CHECK(supports == oracle::brute_scaled_extremals(cp));
  CHECK(xs.front().unscaled == Vector{kUnit, kUnit, kUnit, kZero, kZero, kZero});
}

TEST_CASE("extremals need a single chain") {
  const PeriodicEngine e(golden::ex72());
  try {
    covering_problem(attraction_system(e, 1));
    FAIL("expected NotStronglyConnectedCritical");
  } catch (const Error& err) {
    CHECK(err.code() == Errc::NotStronglyConnectedCritical);
  }
}

TEST_CASE("nearly minimal coverings against brute force") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3 + rng() % 6;
    const std::size_t m = 1 + rng() % 4;
    CoveringProblem cp{n, {}, Vector(n, kUnit)};
    for (std::size_t r = 0; r < m; ++r) {
      NodeSet row;
      for (std::size_t k = 0; k < n; ++k) {
        if (rng() % 3 == 0) row.push_back(k);
      }
      if (row.empty()) row.push_back(rng() % n);
      cp.rows.push_back(row);
    }
    CHECK(nearly_minimal_coverings(cp) == oracle::brute_nearly_minimal(cp));
    std::vector<NodeSet> supports;
    for (const Extremal& x : extremals(cp)) supports.push_back(x.support);
    CHECK(supports == oracle::brute_scaled_extremals(cp));
  }
}

TEST_CASE("Algorithm 1 on the 6x6 example") {
  const PeriodicEngine e(golden::ex73());
  const Algorithm1State st = algorithm1_state(e);
  CHECK(st.h == Vector{Scalar(-10), Scalar(-7), Scalar(-3)});
  CHECK(st.b == Matrix::from_rows({{-1, -1, -3}, {-2, -4, -1}, {-1, -4, -1}}));
  CHECK(st.b_star == Matrix::from_rows({{0, -1, -2}, {-2, 0, -1}, {-1, -2, 0}}));
  using U = std::vector<std::size_t>;
  CHECK(st.u == std::vector<std::vector<U>>{{U{0}, U{1}, U{2}}, {U{1, 2}, U{0}, U{1}}, {U{1}, U{2}, U{0}}});
  CHECK(st.hb == Vector{Scalar(-4), Scalar(-5), Scalar(-3)});
  CHECK(st.p == std::vector<std::vector<bool>>{{true, false, true}, {false, true, false}, {false, true, false}});
  CHECK(st.w == std::vector<NodeSet>{{5}, {5}, {5}});
  CHECK(st.gt == std::vector<std::vector<bool>>{{false, false, true}, {true, false, false}, {false, true, false}});
  CHECK(st.k == std::vector<NodeSet>{{4}, {5}, {3}});
  const AttractionSystem sys = algorithm1(e);
  CHECK(to_text(sys) == "x1 (+) (x5 - 5) = x2 (+) (x6 - 3) = x3 (+) (x4 - 4)\n");
  CHECK(sys == attraction_system(e, 1));
}

TEST_CASE("Algorithm 1 without non-critical nodes") {
  const PeriodicEngine e(cycle_permutation(4));
  const AttractionSystem sys = algorithm1(e);
  CHECK(sys == attraction_system(e, 1));
  for (const Side& s : sys.chains.front().sides) CHECK(s.terms.size() == 1);
  CHECK_THROWS_AS(algorithm1(PeriodicEngine(golden::ex72())), Error);
}

TEST_CASE("Algorithm 1 agrees with the periodic-power path") {
  for (const Instance& inst : corpus(53, 150, 3, 8, true)) {
    const PeriodicEngine e(inst.a);
    const Algorithm1State st = algorithm1_state(e);
    CHECK(kleene_star(st.b).star == st.b_star);
    for (std::size_t s = 0; s < st.u.size(); ++s) {
      for (std::size_t t = 0; t < st.u.size(); ++t) {
        for (std::size_t m : st.u[s][t]) CHECK(m < st.u.size());
      }
    }
    CHECK(algorithm1(e) == attraction_system(e, 1));
  }
}

TEST_CASE("solution sets equal the attraction cone") {
  for (const Instance& inst : corpus(54, 60, 3, 6)) {
    const PeriodicEngine e(inst.a);
    const std::size_t n = inst.a.rows();
    const Matrix ar = oracle::naive_power(inst.a, inst.transient);
    for (std::uint64_t t = 1; t <= 3; ++t) {
      const AttractionSystem sys = attraction_system(e, t);
      const Matrix art = oracle::naive_power(inst.a, inst.transient + t);
      for (const Vector& x : oracle::grid(n, {kUnit, Scalar(-1), Scalar(-2), kZero})) {
        CHECK(satisfies(sys, x) == (oracle::naive_apply(ar, x) == oracle::naive_apply(art, x)));
      }
    }
  }
}

TEST_CASE("every coefficient is an entry of the core star") {
  for (const Instance& inst : corpus(55, 80, 3, 7)) {
    const PeriodicEngine e(inst.a);
    const CoreMatrix core = core_matrix(e);
    const AttractionSystem sys = attraction_system(e, 1);
    for (const Chain& chain : sys.chains) {
      for (const Side& s : chain.sides) {
        for (const Term& term : s.terms) {
          CHECK(term.coeff == core.alpha_star(core.block_of[s.node], core.block_of[term.var]));
        }
      }
    }
    for (const IndexSets& is : sys.index_sets) {
      for (const Term& term : is.class_terms) CHECK(term.coeff == kUnit);
    }
  }
}

TEST_CASE("M and K sets") {
  for (const Instance& inst : corpus(56, 80, 3, 7)) {
    const PeriodicEngine e(inst.a);
    const CoreMatrix core = core_matrix(e);
    const CyclicClasses& cc = e.classes();
    const std::uint64_t g = e.gamma();
    std::vector<Matrix> powers;
    for (std::uint64_t k = 0; k < g; ++k) powers.push_back(periodic_power(e, k));

    // The index sets of the system are the M and K sets at a multiple of gamma.
    const AttractionSystem sys = attraction_system(e, 1);
    for (const IndexSets& is : sys.index_sets) {
      for (const CrossGroup& group : is.cross) {
        NodeSet vars;
        for (const Term& term : group.terms) vars.push_back(term.var);
        CHECK(vars == m_set(e, core, powers[0], is.node, group.chain));
      }
      for (std::size_t nu = 0; nu < core.critical_blocks; ++nu) {
        if (nu == core.block_of[is.node]) continue;
        const bool listed = std::any_of(is.cross.begin(), is.cross.end(),
                                        [&](const CrossGroup& gr) { return gr.chain == nu; });
        CHECK(listed);
      }
      NodeSet k;
      for (const Term& term : is.noncritical) k.push_back(term.var);
      NodeSet expected;
      for (std::size_t b = core.critical_blocks; b < core.blocks.size(); ++b) {
        const std::size_t v = core.blocks[b].front();
        if (powers[0](is.node, v) == core.alpha_star(core.block_of[is.node], b)) expected.push_back(v);
      }
      CHECK(k == expected);
    }

    for (std::size_t i : e.spectral().critical_nodes) {
      const std::size_t mu = core.block_of[i];
      for (std::size_t nu = 0; nu < core.critical_blocks; ++nu) {
        if (nu == mu) continue;
        const std::uint64_t d = std::gcd(cc.cyclicity(mu), cc.cyclicity(nu));
        for (std::uint64_t k = 0; k < g; ++k) {
          const NodeSet m = m_set(e, core, powers[k], i, nu);
          CHECK_FALSE(m.empty());
          CHECK(union_of_classes(cc, m));
          for (std::size_t p : m) {
            for (std::size_t s : core.blocks[nu]) {
              if (access(cc, p, s) == d % cc.cyclicity(nu)) CHECK(std::binary_search(m.begin(), m.end(), s));
            }
          }
          for (std::size_t j : core.blocks[mu]) {
            const std::uint64_t t = *access(cc, i, j);
            // Shift covariance: M at r+t for i equals M at r for j.
            CHECK(m_set(e, core, powers[(k + t) % g], i, nu) == m_set(e, core, powers[k], j, nu));
            // Pair transport.
            const NodeSet mj = m_set(e, core, powers[k], j, nu);
            for (std::size_t p : core.blocks[nu]) {
              for (std::size_t s : core.blocks[nu]) {
                if (access(cc, p, s) != t % cc.cyclicity(nu)) continue;
                CHECK(std::binary_search(m.begin(), m.end(), p) == std::binary_search(mj.begin(), mj.end(), s));
              }
            }
          }
        }
      }
    }
  }
}

TEST_CASE("extremals generate the solution grid") {
  for (const Instance& inst : corpus(57, 60, 3, 7, true)) {
    const PeriodicEngine e(inst.a);
    const AttractionSystem sys = attraction_system(e, 1);
    const CoveringProblem cp = covering_problem(sys);
    const auto xs = extremals(cp);
    std::vector<Vector> gens;
    std::vector<NodeSet> supports;
    for (const Extremal& x : xs) {
      CHECK(satisfies(sys, x.unscaled));
      gens.push_back(x.unscaled);
      supports.push_back(x.support);
    }
    CHECK(nearly_minimal_coverings(cp) == oracle::brute_nearly_minimal(cp));
    CHECK(supports == oracle::brute_scaled_extremals(cp));
    for (const Vector& x : oracle::grid(inst.a.rows(), {kUnit, Scalar(-1), kZero})) {
      if (satisfies(sys, x)) CHECK(oracle::generated_by(x, gens));
    }
  }
}

TEST_CASE("scaled solutions with an interior coordinate are not extremal") {
  for (const Instance& inst : corpus(58, 40, 3, 6, true)) {
    const PeriodicEngine e(inst.a);
    const AttractionSystem sys = attraction_system(e, 1);
    const CoveringProblem cp = covering_problem(sys);
    std::vector<Vector> scaled;
    for (const Extremal& x : extremals(cp)) scaled.push_back(x.scaled);
    const AttractionSystem scaled_sys = [&] {
      AttractionSystem s = sys;
      for (Side& side : s.chains.front().sides) {
        for (Term& term : side.terms) term.coeff = kUnit;
      }
      return s;
    }();
    for (const Vector& y : oracle::grid(inst.a.rows(), {kUnit, Scalar(-1), kZero})) {
      if (!satisfies(scaled_sys, y)) continue;
      const bool interior = std::find(y.begin(), y.end(), Scalar(-1)) != y.end();
      if (interior) CHECK(std::find(scaled.begin(), scaled.end(), y) == scaled.end());
      CHECK(oracle::generated_by(y, scaled));
    }
  }
}
