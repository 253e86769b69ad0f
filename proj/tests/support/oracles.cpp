#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

namespace oracle {

using maxplus::kUnit;
using maxplus::kZero;

Matrix naive_product(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Scalar best = kZero;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
        const Scalar v = Scalar::from_raw(a(i, k).value() + b(k, j).value());
        if (best < v) best = v;
      }
      c(i, j) = best;
    }
  }
  return c;
}

Matrix naive_power(const Matrix& a, std::uint64_t k) {
  Matrix p = Matrix::identity(a.rows());
  for (std::uint64_t s = 0; s < k; ++s) p = naive_product(p, a);
  return p;
}

Vector naive_apply(const Matrix& a, const Vector& x) {
  Vector y(a.rows(), kZero);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero() || x[k].is_zero()) continue;
      y[i] = std::max(y[i], Scalar::from_raw(a(i, k).value() + x[k].value()));
    }
  }
  return y;
}

std::vector<NodeSet> simple_cycles(const Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<NodeSet> cycles;
  NodeSet path;
  std::vector<bool> on(n, false);
  // Cycles are reported from their smallest node.
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t start, std::size_t u) {
    for (std::size_t v = start; v < n; ++v) {
      if (a(u, v).is_zero()) continue;
      if (v == start) {
        cycles.push_back(path);
      } else if (!on[v]) {
        on[v] = true;
        path.push_back(v);
        dfs(start, v);
        path.pop_back();
        on[v] = false;
      }
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    path = {s};
    on.assign(n, false);
    on[s] = true;
    dfs(s, s);
  }
  return cycles;
}

namespace {

double cycle_weight(const Matrix& a, const NodeSet& c) {
  double w = 0;
  for (std::size_t q = 0; q < c.size(); ++q) w += a(c[q], c[(q + 1) % c.size()]).value();
  return w;
}

}  // namespace

Scalar brute_cycle_mean(const Matrix& a) {
  Scalar best = kZero;
  for (const NodeSet& c : simple_cycles(a)) {
    best = std::max(best, Scalar::from_raw(cycle_weight(a, c) / static_cast<double>(c.size())));
  }
  return best;
}

std::vector<std::pair<std::size_t, std::size_t>> brute_critical_edges(const Matrix& a, double eps) {
  const Scalar lambda = brute_cycle_mean(a);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const NodeSet& c : simple_cycles(a)) {
    if (std::fabs(cycle_weight(a, c) / static_cast<double>(c.size()) - lambda.value()) > eps) continue;
    for (std::size_t q = 0; q < c.size(); ++q) edges.emplace_back(c[q], c[(q + 1) % c.size()]);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

Matrix series_star(const Matrix& a) {
  Matrix acc = Matrix::identity(a.rows());
  Matrix p = acc;
  for (std::size_t k = 1; k < a.rows(); ++k) {
    p = naive_product(p, a);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.rows(); ++j) acc(i, j) = std::max(acc(i, j), p(i, j));
    }
  }
  return acc;
}

bool reachability_irreducible(const Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    r[i][i] = true;
    for (std::size_t j = 0; j < n; ++j) r[i][j] = r[i][j] || a(i, j).is_finite();
  }
  for (std::size_t round = 0; (std::size_t{1} << round) < 2 * n; ++round) {
    auto next = r;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!r[i][k]) continue;
        for (std::size_t j = 0; j < n; ++j) next[i][j] = next[i][j] || r[k][j];
      }
    }
    r = std::move(next);
  }
  for (const auto& row : r) {
    if (std::find(row.begin(), row.end(), false) != row.end()) return false;
  }
  return true;
}

std::optional<PowerCycle> power_cycle(const Matrix& a, std::uint64_t cap) {
  PowerCycle pc{0, 0, {Matrix::identity(a.rows())}};
  for (std::uint64_t k = 1; k <= cap; ++k) {
    pc.powers.push_back(naive_product(pc.powers.back(), a));
    for (std::uint64_t j = 1; j < k; ++j) {
      if (pc.powers[j] == pc.powers[k]) {
        pc.transient = j;
        pc.period = k - j;
        return pc;
      }
    }
  }
  return std::nullopt;
}

OrbitCycle brent_orbit(const Matrix& a, const Vector& x) {
  std::uint64_t power = 1;
  std::uint64_t lam = 1;
  Vector tortoise = x;
  Vector hare = naive_apply(a, x);
  while (tortoise != hare) {
    if (power == lam) {
      tortoise = hare;
      power *= 2;
      lam = 0;
    }
    hare = naive_apply(a, hare);
    ++lam;
  }
  tortoise = x;
  hare = x;
  for (std::uint64_t i = 0; i < lam; ++i) hare = naive_apply(a, hare);
  std::uint64_t mu = 0;
  while (tortoise != hare) {
    tortoise = naive_apply(a, tortoise);
    hare = naive_apply(a, hare);
    ++mu;
  }
  return {lam, mu};
}

std::vector<Vector> grid(std::size_t n, const std::vector<Scalar>& values) {
  std::vector<Vector> out;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = values[idx[i]];
    out.push_back(std::move(v));
    std::size_t p = 0;
    while (p < n && ++idx[p] == values.size()) idx[p++] = 0;
    if (p == n) break;
  }
  return out;
}

namespace {

std::vector<std::uint64_t> row_masks(const maxplus::CoveringProblem& cp) {
  std::vector<std::uint64_t> rows;
  for (const NodeSet& row : cp.rows) {
    std::uint64_t m = 0;
    for (std::size_t k : row) m |= std::uint64_t{1} << k;
    rows.push_back(m);
  }
  return rows;
}

bool is_cover(std::uint64_t k, const std::vector<std::uint64_t>& rows) {
  for (std::uint64_t r : rows) {
    if ((r & k) == 0) return false;
  }
  return true;
}

NodeSet to_nodes(std::uint64_t m) {
  NodeSet out;
  for (std::size_t k = 0; k < 64; ++k) {
    if ((m >> k) & 1U) out.push_back(k);
  }
  return out;
}

}  // namespace

std::vector<NodeSet> brute_nearly_minimal(const maxplus::CoveringProblem& cp) {
  const auto rows = row_masks(cp);
  std::uint64_t universe = 0;
  for (std::uint64_t r : rows) universe |= r;
  std::vector<NodeSet> out;
  // Enumerate subsets of the universe.
  for (std::uint64_t k = universe;; k = (k - 1) & universe) {
    if (k != 0 && is_cover(k, rows)) {
      int proper = 0;
      for (std::uint64_t s = (k - 1) & k;; s = (s - 1) & k) {
        if (s != 0 && is_cover(s, rows)) ++proper;
        if (s == 0) break;
      }
      if (proper <= 1) out.push_back(to_nodes(k));
    }
    if (k == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeSet> brute_scaled_extremals(const maxplus::CoveringProblem& cp) {
  const auto rows = row_masks(cp);
  const std::uint64_t all = cp.n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cp.n) - 1;
  auto solves = [&](std::uint64_t y) {
    bool any_hit = false;
    bool any_miss = false;
    for (std::uint64_t r : rows) ((r & y) ? any_hit : any_miss) = true;
    return !(any_hit && any_miss);
  };
  std::vector<NodeSet> out;
  for (std::uint64_t y = 1; y <= all; ++y) {
    if (!solves(y)) continue;
    std::uint64_t below = 0;
    for (std::uint64_t z = (y - 1) & y; z != 0; z = (z - 1) & y) {
      if (solves(z)) below |= z;
    }
    if (below != y) out.push_back(to_nodes(y));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool generated_by(const Vector& x, const std::vector<Vector>& generators, double eps) {
  Vector z(x.size(), kZero);
  for (const Vector& g : generators) {
    bool bounded = false;
    double coeff = 0;
    bool feasible = true;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (g[k].is_zero()) continue;
      if (x[k].is_zero()) {
        feasible = false;
        break;
      }
      const double c = x[k].value() - g[k].value();
      coeff = bounded ? std::min(coeff, c) : c;
      bounded = true;
    }
    if (!feasible || !bounded) continue;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (g[k].is_finite()) z[k] = std::max(z[k], Scalar::from_raw(g[k].value() + coeff));
    }
  }
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!maxplus::approx_equal(z[k], x[k], eps)) return false;
  }
  return true;
}

namespace {

Scalar draw_entry(std::mt19937_64& rng, double p_inf) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = u(rng);
  if (r < p_inf) return kZero;
  if (r < p_inf + 0.15) return kUnit;
  return Scalar(-static_cast<double>(std::uniform_int_distribution<int>(1, 9)(rng)));
}

}  // namespace

Matrix random_matrix(std::mt19937_64& rng, std::size_t n, double p_inf) {
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = draw_entry(rng, p_inf);
  }
  return a;
}

Matrix random_visualized(std::mt19937_64& rng, std::size_t n) {
  Matrix a = random_matrix(rng, n);
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (std::size_t q = 0; q < n; ++q) {
    Scalar& e = a(perm[q], perm[(q + 1) % n]);
    if (e.is_zero()) e = Scalar(-static_cast<double>(std::uniform_int_distribution<int>(1, 9)(rng)));
  }
  const int planted = std::uniform_int_distribution<int>(1, 2)(rng);
  for (int c = 0; c < planted; ++c) {
    std::shuffle(perm.begin(), perm.end(), rng);
    const std::size_t len = std::uniform_int_distribution<std::size_t>(1, n)(rng);
    for (std::size_t q = 0; q < len; ++q) a(perm[q], perm[(q + 1) % len]) = kUnit;
  }
  return a;
}

Vector random_vector(std::mt19937_64& rng, std::size_t n) {
  Vector v(n);
  std::uniform_int_distribution<int> d(-6, 3);
  for (std::size_t i = 0; i < n; ++i) {
    const int r = d(rng);
    v[i] = r == 3 ? kZero : Scalar(static_cast<double>(r));
  }
  return v;
}

Vector random_scaling(std::mt19937_64& rng, std::size_t n) {
  Vector v(n);
  std::uniform_int_distribution<int> d(-5, 5);
  for (std::size_t i = 0; i < n; ++i) v[i] = Scalar(static_cast<double>(d(rng)));
  return v;
}

}  // namespace oracle
