#include "maxplus/periodic.hpp"

#include <bit>
#include <deque>
#include <string>

#include "maxplus/error.hpp"

namespace maxplus {

namespace {

std::size_t period_of(const Vector& values, double eps) {
  const std::size_t g = values.size();
  for (std::size_t p = 1; p < g; ++p) {
    if (g % p != 0) continue;
    bool ok = true;
    for (std::size_t s = 0; s < g && ok; ++s) ok = approx_equal(values[(s + p) % g], values[s], eps);
    if (ok) return p;
  }
  return g;
}

// Values of A^{r0} x on the class representatives of each component.
std::vector<Vector> class_values(const PeriodicEngine& e, std::span<const Scalar> x) {
  if (x.size() != e.dim()) {
    throw Error(Errc::DimensionMismatch, "vector has length " + std::to_string(x.size()) +
                                             ", matrix has dimension " + std::to_string(e.dim()));
  }
  const Vector y = matvec(e.cached_power(), x);
  std::vector<Vector> out;
  for (const auto& comp : e.classes().all()) {
    Vector v;
    for (const NodeSet& cls : comp) v.push_back(y[cls.front()]);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

PeriodicEngine::PeriodicEngine(Matrix a, double eps) : a_(std::move(a)), eps_(eps) {
  const std::size_t n = a_.dim();
  if (n == 0) throw Error(Errc::InvalidArgument, "empty matrix");
  if (!is_irreducible(a_)) throw Error(Errc::NotIrreducible, "matrix is reducible");
  sd_ = critical_graph(a_, eps_);
  if (!is_visualized(a_, sd_, eps_)) {
    throw Error(Errc::NotVisualized, "matrix is not visualized (lambda = 0, entries <= 0, critical entries = 0)");
  }
  cc_ = cyclic_classes(sd_);
  PowerTable table = power_residues(a_, static_cast<std::uint64_t>(n) * n);
  cache_ = std::move(table.power);
  r0_ = table.exponent;
  squarings_ = table.squarings;
}

std::int64_t PeriodicEngine::shift_for(std::uint64_t residue) const {
  return static_cast<std::int64_t>(residue % sd_.gamma) - static_cast<std::int64_t>(r0_ % sd_.gamma);
}

std::size_t PeriodicEngine::column_source(std::size_t j, std::uint64_t residue) const {
  return class_shift(cc_, j, shift_for(residue)).front();
}

std::size_t PeriodicEngine::row_source(std::size_t i, std::uint64_t residue) const {
  return class_shift(cc_, i, -shift_for(residue)).front();
}

Vector PeriodicEngine::critical_column(std::size_t j, std::uint64_t residue) const {
  return cache_.column(column_source(j, residue));
}

Vector PeriodicEngine::critical_row(std::size_t i, std::uint64_t residue) const {
  const auto r = cache_.row(row_source(i, residue));
  return Vector(r.begin(), r.end());
}

Matrix periodic_power(const PeriodicEngine& e, std::uint64_t residue) {
  const std::size_t n = e.dim();
  const SpectralData& sd = e.spectral();
  const Matrix& cache = e.cached_power();
  const NodeSet& crit = sd.critical_nodes;
  const NodeSet rest = sd.noncritical_nodes();

  Matrix cols(n, crit.size());
  for (std::size_t p = 0; p < crit.size(); ++p) {
    const std::size_t src = e.column_source(crit[p], residue);
    for (std::size_t i = 0; i < n; ++i) cols(i, p) = cache(i, src);
  }

  Matrix out(n, n);
  for (std::size_t p = 0; p < crit.size(); ++p) {
    for (std::size_t i = 0; i < n; ++i) out(i, crit[p]) = cols(i, p);
  }
  if (rest.empty()) return out;

  // A^r_{.t} = max over critical k of A^r_{.k} + a_kt, a_kt from a power divisible by gamma.
  Matrix rows(crit.size(), rest.size());
  for (std::size_t p = 0; p < crit.size(); ++p) {
    const std::size_t src = e.row_source(crit[p], 0);
    for (std::size_t q = 0; q < rest.size(); ++q) rows(p, q) = cache(src, rest[q]);
  }
  const Matrix tail = matmul(cols, rows);
  for (std::size_t q = 0; q < rest.size(); ++q) {
    for (std::size_t i = 0; i < n; ++i) out(i, rest[q]) = tail(i, q);
  }
  return out;
}

std::uint64_t orbit_period(const PeriodicEngine& e, std::span<const Scalar> x) {
  std::uint64_t period = 1;
  for (const Vector& v : class_values(e, x)) period = checked_lcm(period, period_of(v, e.eps()));
  return period;
}

bool attraction_member(const PeriodicEngine& e, std::span<const Scalar> x, std::uint64_t t) {
  if (t == 0) throw Error(Errc::InvalidArgument, "t must be at least 1");
  for (const Vector& v : class_values(e, x)) {
    const std::size_t g = v.size();
    for (std::size_t s = 0; s < g; ++s) {
      if (!approx_equal(v[(s + t) % g], v[s], e.eps())) return false;
    }
  }
  return true;
}

CoreMatrix core_matrix(const PeriodicEngine& e) {
  const SpectralData& sd = e.spectral();
  const Matrix& a = e.matrix();
  CoreMatrix core;
  core.blocks = sd.components;
  core.critical_blocks = core.blocks.size();
  for (std::size_t v : sd.noncritical_nodes()) core.blocks.push_back({v});
  core.block_of.assign(e.dim(), 0);
  for (std::size_t b = 0; b < core.blocks.size(); ++b) {
    for (std::size_t v : core.blocks[b]) core.block_of[v] = b;
  }
  const std::size_t m = core.blocks.size();
  core.alpha = Matrix(m, m);
  for (std::size_t i = 0; i < e.dim(); ++i) {
    for (std::size_t j = 0; j < e.dim(); ++j) {
      Scalar& cell = core.alpha(core.block_of[i], core.block_of[j]);
      cell = oplus(cell, a(i, j));
    }
  }
  core.alpha_star = kleene_star(core.alpha, e.eps()).star;
  return core;
}

CsrDecomposition csr(const PeriodicEngine& e) {
  const SpectralData& sd = e.spectral();
  const Matrix& cache = e.cached_power();
  const std::size_t n = e.dim();
  CsrDecomposition d;
  d.critical_nodes = sd.critical_nodes;
  d.gamma = sd.gamma;
  d.c = Matrix(n, sd.c);
  d.r = Matrix(sd.c, n);
  for (std::size_t p = 0; p < sd.c; ++p) {
    const std::size_t col = e.column_source(sd.critical_nodes[p], 0);
    const std::size_t row = e.row_source(sd.critical_nodes[p], 0);
    for (std::size_t i = 0; i < n; ++i) {
      d.c(i, p) = cache(i, col);
      d.r(p, i) = cache(row, i);
    }
  }
  d.s = critical_matrix(sd);
  return d;
}

Matrix csr_reconstruct(const CsrDecomposition& d, std::uint64_t l) {
  return matmul(matmul(d.c, power(d.s, l % d.gamma)), d.r);
}

ReducedPower reduced_power(const PeriodicEngine& e, std::uint64_t residue) {
  const Matrix full = periodic_power(e, residue);
  ReducedPower rp;
  const auto& all = e.classes().all();
  for (std::size_t mu = 0; mu < all.size(); ++mu) {
    for (const NodeSet& cls : all[mu]) {
      rp.groups.push_back(cls);
      rp.group_block.push_back(mu);
    }
  }
  rp.class_count = rp.groups.size();
  std::size_t block = all.size();
  for (std::size_t v : e.spectral().noncritical_nodes()) {
    rp.groups.push_back({v});
    rp.group_block.push_back(block++);
  }
  for (const NodeSet& g : rp.groups) rp.representatives.push_back(g.front());
  const std::size_t m = rp.groups.size();
  rp.reduced = Matrix(m, m);
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t h = 0; h < m; ++h) rp.reduced(g, h) = full(rp.representatives[g], rp.representatives[h]);
  }
  return rp;
}

Matrix expand(const ReducedPower& rp, std::size_t n) {
  Matrix out(n, n);
  for (std::size_t g = 0; g < rp.groups.size(); ++g) {
    for (std::size_t h = 0; h < rp.groups.size(); ++h) {
      for (std::size_t i : rp.groups[g]) {
        for (std::size_t j : rp.groups[h]) out(i, j) = rp.reduced(g, h);
      }
    }
  }
  return out;
}

std::uint64_t transient_oracle(const Matrix& a, std::uint64_t cap, double eps) {
  if (!is_irreducible(a)) throw Error(Errc::NotIrreducible, "matrix is reducible");
  const SpectralData sd = critical_graph(a, eps);
  if (std::fabs(sd.lambda.value()) > eps) {
    throw Error(Errc::NotDefinite, "lambda = " + std::to_string(sd.lambda.value()) + " is not 0");
  }
  const std::uint64_t gamma = sd.gamma;
  std::deque<Matrix> window{a};  // A^{k-gamma}, ..., A^k
  for (std::uint64_t k = 1;; ++k) {
    if (k > gamma && approx_equal(window.back(), window.front(), eps)) return k - gamma;
    if (k >= gamma && k + 1 - gamma > cap) break;
    window.push_back(matmul(window.back(), a));
    if (window.size() > gamma + 1) window.pop_front();
  }
  throw Error(Errc::CapExceeded, "transient exceeds " + std::to_string(cap));
}

bool is_rectangular_circulant(const Matrix& block, double eps) {
  const std::size_t m = block.rows();
  const std::size_t p = block.cols();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (!approx_equal(block((i + 1) % m, (j + 1) % p), block(i, j), eps)) return false;
    }
  }
  return true;
}

bool is_d_periodic(const Matrix& block, std::uint64_t d, double eps) {
  const std::size_t p = block.cols();
  if (p == 0) return true;
  for (std::size_t i = 0; i < block.rows(); ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (!approx_equal(block(i, (j + d) % p), block(i, j), eps)) return false;
    }
  }
  return true;
}

}  // namespace maxplus
