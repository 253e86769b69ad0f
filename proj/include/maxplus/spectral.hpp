#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "maxplus/graph.hpp"
#include "maxplus/matrix.hpp"

namespace maxplus {

// Tolerance for equality tests between computed path weights (criticality,
// argmax sets). Matrix entries themselves are compared exactly.
inline constexpr double kDefaultEps = 1e-9;

// λ(A) and the critical graph C(A) with its strongly connected components.
struct SpectralData {
  Scalar lambda;
  NodeSet critical_nodes;            // sorted
  std::vector<Edge> critical_edges;  // sorted, each inside one component
  std::vector<NodeSet> components;   // s.c.c. of C(A), ordered by smallest node
  std::vector<std::uint64_t> cyclicities;
  std::uint64_t gamma = 1;           // lcm of cyclicities
  std::size_t c = 0;                 // |N_c(A)|
  std::size_t cbar = 0;              // number of non-critical nodes
  std::vector<std::optional<std::size_t>> component_of;  // per node

  std::size_t dim() const noexcept { return c + cbar; }
  bool is_critical(std::size_t node) const noexcept { return component_of[node].has_value(); }
  NodeSet noncritical_nodes() const;
};

struct KleeneStar {
  Matrix star;
};

struct VisualizedMatrix {
  Matrix matrix;   // X^{-1} A X, i.e. a_ij - x_i + x_j
  Vector scaling;  // the diagonal x
  bool strict = false;
};

// Maximum cycle mean by Karp's algorithm on each s.c.c. of D(A); -inf when
// D(A) is acyclic.
Scalar max_cycle_mean(const Matrix& a);

bool is_irreducible(const Matrix& a);

// A - λ(A) on finite entries. Throws AcyclicMatrix when λ(A) = -inf.
Matrix definite_form(const Matrix& a);

// A* = I ⊕ A ⊕ ... ⊕ A^{n-1} via a Floyd-Warshall closure. Throws
// DivergentStar when some cycle has weight > eps.
KleeneStar kleene_star(const Matrix& a, double eps = kDefaultEps);

// Critical graph of A. Edge (i,j) is critical iff b_ij + b*_ji >= -eps for
// the definite form B of A.
SpectralData critical_graph(const Matrix& a, double eps = kDefaultEps);

// q_ij = max over critical k of a*_ik + a*_kj. Requires a definite matrix.
Matrix spectral_projector(const Matrix& a, double eps = kDefaultEps);

// Columns of A* for the smallest node of every critical component.
std::vector<Vector> eigencone_basis(const Matrix& a, double eps = kDefaultEps);
// eigencone_basis plus the columns of all non-critical nodes, in node order.
std::vector<Vector> subeigencone_basis(const Matrix& a, double eps = kDefaultEps);

// Diagonal similarity scaling X^{-1} A X.
Matrix diagonal_similarity(const Matrix& a, std::span<const Scalar> x);

// Visualization scaling of a definite matrix. The plain vector is the row-wise
// max of A*; the strict vector is the row-wise log-sum-exp of A*, which lies
// in the relative interior of the subeigencone.
VisualizedMatrix visualize(const Matrix& a, bool strict, double eps = kDefaultEps);

// λ(A) = 0, every entry <= 0 and every critical edge = 0, all within eps.
bool is_visualized(const Matrix& a, const SpectralData& sd, double eps = kDefaultEps);

// Boolean critical matrix A^[C] restricted to critical nodes (c x c, in the
// order of sd.critical_nodes): 0 on critical edges, -inf elsewhere.
Matrix critical_matrix(const SpectralData& sd);

// A^[C] as an n x n Boolean matrix.
Matrix critical_matrix_full(const SpectralData& sd);

}  // namespace maxplus
