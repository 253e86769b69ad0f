#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "maxplus/cyclic.hpp"
#include "maxplus/spectral.hpp"

namespace maxplus {

// Periodic regime of a visualized irreducible matrix. Construction squares A
// up to r0 = the least power of two >= n^2, which bounds the transient, and
// keeps A^{r0}. Every later power A^r with r >= r0 is produced from that one
// cache by permuting critical rows and columns according to the cyclic
// classes, plus one rectangular product for the non-critical columns.
class PeriodicEngine {
 public:
  // Throws NotIrreducible, NotVisualized, AcyclicMatrix.
  explicit PeriodicEngine(Matrix a, double eps = kDefaultEps);

  const Matrix& matrix() const noexcept { return a_; }
  const SpectralData& spectral() const noexcept { return sd_; }
  const CyclicClasses& classes() const noexcept { return cc_; }
  std::size_t dim() const noexcept { return a_.rows(); }
  std::uint64_t gamma() const noexcept { return sd_.gamma; }
  std::uint64_t r0() const noexcept { return r0_; }
  const Matrix& cached_power() const noexcept { return cache_; }
  std::size_t construction_products() const noexcept { return squarings_; }
  double eps() const noexcept { return eps_; }

  // Node whose A^{r0} column (row) equals column j (row i) of A^r for every
  // r >= r0 with r = residue mod gamma.
  std::size_t column_source(std::size_t j, std::uint64_t residue) const;
  std::size_t row_source(std::size_t i, std::uint64_t residue) const;

  Vector critical_column(std::size_t j, std::uint64_t residue) const;
  Vector critical_row(std::size_t i, std::uint64_t residue) const;

 private:
  std::int64_t shift_for(std::uint64_t residue) const;

  Matrix a_;
  double eps_;
  SpectralData sd_;
  CyclicClasses cc_;
  Matrix cache_;
  std::uint64_t r0_ = 1;
  std::size_t squarings_ = 0;
};

// A^r for any r >= T(A) with r = residue mod gamma. Exactly one product.
Matrix periodic_power(const PeriodicEngine& e, std::uint64_t residue);

// Ultimate period of the orbit {A^t x}.
std::uint64_t orbit_period(const PeriodicEngine& e, std::span<const Scalar> x);

// A^r x = A^{r+t} x for large r.
bool attraction_member(const PeriodicEngine& e, std::span<const Scalar> x, std::uint64_t t);

// Core matrix: critical components first, then non-critical nodes.
struct CoreMatrix {
  Matrix alpha;
  Matrix alpha_star;
  std::vector<NodeSet> blocks;
  std::size_t critical_blocks = 0;
  std::vector<std::size_t> block_of;  // per node
};
CoreMatrix core_matrix(const PeriodicEngine& e);

// A^r = C S^l R for r >= T(A), r = l mod gamma.
struct CsrDecomposition {
  Matrix c;  // n x c, critical columns of A^r at residue 0
  Matrix s;  // c x c Boolean critical matrix
  Matrix r;  // c x n, critical rows of A^r at residue 0
  NodeSet critical_nodes;
  std::uint64_t gamma = 1;
};
CsrDecomposition csr(const PeriodicEngine& e);
Matrix csr_reconstruct(const CsrDecomposition& d, std::uint64_t l);

// Power with one representative row and column per cyclic class.
struct ReducedPower {
  Matrix reduced;
  std::vector<NodeSet> groups;     // classes per component, then non-critical singletons
  std::vector<std::size_t> representatives;
  std::vector<std::size_t> group_block;  // core-matrix block index of each group
  std::size_t class_count = 0;     // number of critical groups
};
ReducedPower reduced_power(const PeriodicEngine& e, std::uint64_t residue);
// Expands back to n x n by copying each representative entry over its groups.
Matrix expand(const ReducedPower& rp, std::size_t n);

// Least T with A^{T+gamma} = A^T, by iterating products. Throws CapExceeded
// when T > cap. Requires an irreducible matrix with lambda = 0.
std::uint64_t transient_oracle(const Matrix& a, std::uint64_t cap, double eps = kDefaultEps);

// Block is a rectangular circulant: b_{i+1, j+1} = b_ij with indices taken
// modulo the number of rows and columns.
bool is_rectangular_circulant(const Matrix& block, double eps = kDefaultEps);

// Each row of the block repeats with period d, i.e. b_{i, j+d} = b_ij.
bool is_d_periodic(const Matrix& block, std::uint64_t d, double eps = kDefaultEps);

}  // namespace maxplus
