#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "maxplus/periodic.hpp"

namespace maxplus {

// coeff ⊗ x_var
struct Term {
  std::size_t var;
  Scalar coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

// One max-linear form, attached to the cyclic class of `node`.
struct Side {
  std::size_t node;          // smallest node of the class
  std::vector<Term> terms;   // sorted by variable
  friend bool operator==(const Side&, const Side&) = default;
};

// side_0 = side_1 = ... ; one chain per s.c.c. of the critical graph of A^t.
struct Chain {
  std::size_t component;
  std::vector<Side> sides;
  friend bool operator==(const Chain&, const Chain&) = default;
};

struct CrossGroup {
  std::size_t chain;
  std::vector<Term> terms;
  friend bool operator==(const CrossGroup&, const CrossGroup&) = default;
};

// Terms of the side of a critical node split by origin: the node's own
// class, critical variables of other chains (the M sets) and non-critical
// variables (the K set).
struct IndexSets {
  std::size_t node;
  std::vector<Term> class_terms;
  std::vector<CrossGroup> cross;
  std::vector<Term> noncritical;
  friend bool operator==(const IndexSets&, const IndexSets&) = default;
};

struct AttractionSystem {
  std::uint64_t t = 1;
  std::size_t n = 0;
  std::vector<Chain> chains;
  std::vector<IndexSets> index_sets;  // one per critical node, ascending
  friend bool operator==(const AttractionSystem&, const AttractionSystem&) = default;
};

// Critical rows of a power A^r with r a multiple of gamma, grouped into one
// chain: rows[l] is the row for nodes[l].
struct RawChain {
  std::size_t component;
  std::vector<std::size_t> nodes;
  std::vector<Vector> rows;
};

// Attraction cone Attr(A, t) as a system of chained max-linear equations.
AttractionSystem attraction_system(const PeriodicEngine& e, std::uint64_t t);

// Keeps in each side only the terms whose coefficient attains the column
// maximum over the chain. Variables with an all -inf column disappear.
Chain chain_cancel(const RawChain& raw, double eps = kDefaultEps);
// Same, against explicit bounds: throws CoverageGap when a row exceeds a
// bound or a finite bound is attained by no row.
Chain chain_cancel(const RawChain& raw, std::span<const Scalar> bounds, double eps = kDefaultEps);

// Value of one side at x.
Scalar evaluate(const Side& side, std::span<const Scalar> x);
bool satisfies(const AttractionSystem& sys, std::span<const Scalar> x, double eps = kDefaultEps);

// Rewrites a system for X^{-1} A X in the coordinates of A, where x is the
// scaling diagonal: coefficient c of x_k becomes c - x_k.
AttractionSystem unscale(const AttractionSystem& sys, std::span<const Scalar> scaling);

// Scaled covering form y_k = a_k + x_k of a single-chain system: side l
// becomes the max of y over rows[l].
struct CoveringProblem {
  std::size_t n = 0;
  std::vector<NodeSet> rows;
  Vector scale;  // a_k, 0 for variables absent from the system
};

// Throws NotStronglyConnectedCritical unless the system has one chain.
CoveringProblem covering_problem(const AttractionSystem& sys);

// Coverings with at most one proper subcovering, as sorted node sets.
// Exponential in n; n <= 64.
std::vector<NodeSet> nearly_minimal_coverings(const CoveringProblem& cp);

struct Extremal {
  NodeSet support;
  Vector scaled;    // 0 on the support, -inf elsewhere
  Vector unscaled;  // -a_k on the support
};

// All extremal generators of the solution cone: one per nearly minimal
// covering plus a unit vector per variable that no side mentions.
std::vector<Extremal> extremals(const CoveringProblem& cp);

struct Algorithm1State {
  NodeSet critical;
  NodeSet noncritical;
  Vector h;                               // per non-critical t
  std::vector<NodeSet> h_argmax;          // critical nodes attaining h_t
  Vector g;                               // per non-critical s
  Matrix b;
  Matrix b_star;
  std::vector<std::vector<std::vector<std::size_t>>> u;  // u[s][t]: path lengths m with (B^m)_st = b*_st
  std::vector<std::vector<bool>> p;       // p[t][i], i over critical
  Vector hb;                              // h ⊗ B*
  std::vector<NodeSet> w;                 // winning non-critical nodes per t
  std::vector<std::vector<bool>> gt;      // G_t(i)
  std::vector<NodeSet> k;                 // K(i) per critical i, non-critical nodes
};

// Requires a strongly connected critical graph (NotStronglyConnectedCritical).
Algorithm1State algorithm1_state(const PeriodicEngine& e);
AttractionSystem algorithm1(const PeriodicEngine& e);

// `x1 (+) (x5 - 5) = x2 (+) (x6 - 3)`, one line per chain, 1-based.
std::string to_text(const Chain& chain);
std::string to_text(const AttractionSystem& sys);

}  // namespace maxplus
