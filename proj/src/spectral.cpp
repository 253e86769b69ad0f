#include "maxplus/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maxplus/error.hpp"

namespace maxplus {

namespace {

// Karp on one strongly connected node set.
Scalar karp_component(const Matrix& a, const NodeSet& nodes) {
  const std::size_t m = nodes.size();
  std::vector<Vector> d(m + 1, Vector(m, kZero));
  d[0][0] = kUnit;
  for (std::size_t k = 1; k <= m; ++k) {
    for (std::size_t v = 0; v < m; ++v) {
      Scalar best = kZero;
      for (std::size_t u = 0; u < m; ++u) {
        best = oplus(best, otimes(d[k - 1][u], a(nodes[u], nodes[v])));
      }
      d[k][v] = best;
    }
  }
  Scalar lambda = kZero;
  for (std::size_t v = 0; v < m; ++v) {
    if (d[m][v].is_zero()) continue;
    double worst = 0.0;
    bool any = false;
    for (std::size_t k = 0; k < m; ++k) {
      if (d[k][v].is_zero()) continue;
      const double mean = (d[m][v].value() - d[k][v].value()) / static_cast<double>(m - k);
      if (!any || mean < worst) worst = mean;
      any = true;
    }
    if (any) lambda = oplus(lambda, Scalar::from_raw(worst));
  }
  return lambda;
}

// Closure A+ = A ⊕ A^2 ⊕ ... without the identity.
Matrix plus_closure(const Matrix& a, double eps) {
  const std::size_t n = a.dim();
  Matrix d = a;
  for (std::size_t k = 0; k < n; ++k) {
    if (d(k, k).is_finite() && d(k, k).value() > eps) {
      throw Error(Errc::DivergentStar, "cycle through node " + std::to_string(k + 1) +
                                           " has positive weight " + std::to_string(d(k, k).value()));
    }
    const auto row_k = d.row(k);
    for (std::size_t i = 0; i < n; ++i) {
      const Scalar dik = d(i, k);
      if (dik.is_zero()) continue;
      auto row_i = d.row(i);
      for (std::size_t j = 0; j < n; ++j) {
        if (row_k[j].is_zero()) continue;
        const Scalar cand = Scalar::from_raw(dik.value() + row_k[j].value());
        if (row_i[j] < cand) row_i[j] = cand;
      }
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (d(k, k).is_finite() && d(k, k).value() > eps) {
      throw Error(Errc::DivergentStar, "cycle through node " + std::to_string(k + 1) +
                                           " has positive weight " + std::to_string(d(k, k).value()));
    }
  }
  return d;
}

Scalar require_definite(const Matrix& a, double eps) {
  const Scalar lambda = max_cycle_mean(a);
  if (lambda.is_zero()) throw Error(Errc::AcyclicMatrix, "the digraph of the matrix has no cycle");
  if (lambda.value() > eps) {
    throw Error(Errc::DivergentStar, "lambda = " + std::to_string(lambda.value()) + " > 0");
  }
  if (lambda.value() < -eps) {
    throw Error(Errc::NotDefinite, "lambda = " + std::to_string(lambda.value()) + " < 0");
  }
  return lambda;
}

}  // namespace

NodeSet SpectralData::noncritical_nodes() const {
  NodeSet out;
  for (std::size_t v = 0; v < component_of.size(); ++v) {
    if (!component_of[v]) out.push_back(v);
  }
  return out;
}

Scalar max_cycle_mean(const Matrix& a) {
  a.dim();
  Scalar lambda = kZero;
  for (const NodeSet& comp : strongly_connected_components(support_graph(a))) {
    lambda = oplus(lambda, karp_component(a, comp));
  }
  return lambda;
}

bool is_irreducible(const Matrix& a) { return is_strongly_connected(support_graph(a)); }

Matrix definite_form(const Matrix& a) {
  const Scalar lambda = max_cycle_mean(a);
  if (lambda.is_zero()) throw Error(Errc::AcyclicMatrix, "the digraph of the matrix has no cycle");
  Matrix out = a;
  if (lambda.value() == 0.0) return out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_finite()) out(i, j) = Scalar::from_raw(a(i, j).value() - lambda.value());
    }
  }
  return out;
}

KleeneStar kleene_star(const Matrix& a, double eps) {
  Matrix star = plus_closure(a, eps);
  for (std::size_t i = 0; i < star.rows(); ++i) star(i, i) = kUnit;
  return {std::move(star)};
}

SpectralData critical_graph(const Matrix& a, double eps) {
  const std::size_t n = a.dim();
  SpectralData sd;
  sd.lambda = max_cycle_mean(a);
  if (sd.lambda.is_zero()) throw Error(Errc::AcyclicMatrix, "the digraph of the matrix has no cycle");

  const Matrix b = definite_form(a);
  const Matrix star = plus_closure(b, eps);  // diagonal holds the best cycle weights

  std::vector<Edge> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar back = i == j ? kUnit : star(j, i);
      if (b(i, j).is_zero() || back.is_zero()) continue;
      if (b(i, j).value() + back.value() >= -eps) candidates.emplace_back(i, j);
    }
  }

  const Digraph cg = from_edges(n, candidates);
  sd.component_of.assign(n, std::nullopt);
  for (NodeSet& comp : strongly_connected_components(cg)) {
    const bool has_edge = std::any_of(comp.begin(), comp.end(), [&](std::size_t u) {
      return std::any_of(cg.out[u].begin(), cg.out[u].end(),
                         [&](std::size_t v) { return std::binary_search(comp.begin(), comp.end(), v); });
    });
    if (!has_edge) continue;
    for (std::size_t v : comp) sd.component_of[v] = sd.components.size();
    sd.components.push_back(std::move(comp));
  }
  for (const Edge& e : candidates) {
    if (sd.component_of[e.first] && sd.component_of[e.first] == sd.component_of[e.second]) {
      sd.critical_edges.push_back(e);
    }
  }
  std::sort(sd.critical_edges.begin(), sd.critical_edges.end());

  const Digraph critical = from_edges(n, sd.critical_edges);
  sd.gamma = 1;
  for (const NodeSet& comp : sd.components) {
    const std::uint64_t period = bfs_levelling(critical, comp, comp.front()).period;
    sd.cyclicities.push_back(period);
    sd.gamma = checked_lcm(sd.gamma, period);
    sd.critical_nodes.insert(sd.critical_nodes.end(), comp.begin(), comp.end());
  }
  std::sort(sd.critical_nodes.begin(), sd.critical_nodes.end());
  sd.c = sd.critical_nodes.size();
  sd.cbar = n - sd.c;
  return sd;
}

Matrix spectral_projector(const Matrix& a, double eps) {
  require_definite(a, eps);
  const SpectralData sd = critical_graph(a, eps);
  const Matrix star = kleene_star(a, eps).star;
  const std::size_t n = a.dim();
  Matrix q(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Scalar acc = kZero;
      for (std::size_t k : sd.critical_nodes) acc = oplus(acc, otimes(star(i, k), star(k, j)));
      q(i, j) = acc;
    }
  }
  return q;
}

std::vector<Vector> eigencone_basis(const Matrix& a, double eps) {
  require_definite(a, eps);
  const SpectralData sd = critical_graph(a, eps);
  const Matrix star = kleene_star(a, eps).star;
  std::vector<Vector> basis;
  for (const NodeSet& comp : sd.components) basis.push_back(star.column(comp.front()));
  return basis;
}

std::vector<Vector> subeigencone_basis(const Matrix& a, double eps) {
  require_definite(a, eps);
  const SpectralData sd = critical_graph(a, eps);
  const Matrix star = kleene_star(a, eps).star;
  NodeSet indices;
  for (const NodeSet& comp : sd.components) indices.push_back(comp.front());
  const NodeSet rest = sd.noncritical_nodes();
  indices.insert(indices.end(), rest.begin(), rest.end());
  std::sort(indices.begin(), indices.end());
  std::vector<Vector> basis;
  for (std::size_t k : indices) basis.push_back(star.column(k));
  return basis;
}

Matrix diagonal_similarity(const Matrix& a, std::span<const Scalar> x) {
  const std::size_t n = a.dim();
  if (x.size() != n) throw Error(Errc::DimensionMismatch, "scaling vector length differs from matrix");
  for (Scalar s : x) {
    if (s.is_zero()) throw Error(Errc::InvalidArgument, "scaling vector must be finite");
  }
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j).is_finite()) {
        out(i, j) = Scalar::from_raw(a(i, j).value() - x[i].value() + x[j].value());
      }
    }
  }
  return out;
}

VisualizedMatrix visualize(const Matrix& a, bool strict, double eps) {
  require_definite(a, eps);
  const SpectralData sd = critical_graph(a, eps);
  const Matrix star = kleene_star(a, eps).star;
  const std::size_t n = a.dim();

  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    Scalar top = kZero;
    for (std::size_t k = 0; k < n; ++k) top = oplus(top, star(i, k));
    if (!strict) {
      x[i] = top;
      continue;
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (star(i, k).is_finite()) sum += std::exp(star(i, k).value() - top.value());
    }
    x[i] = Scalar::from_raw(top.value() + std::log(sum));
  }

  VisualizedMatrix out{diagonal_similarity(a, x), std::move(x), strict};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Scalar& v = out.matrix(i, j);
      if (v.is_finite() && v.value() > 0.0) v = kUnit;
    }
  }
  for (const Edge& e : sd.critical_edges) out.matrix(e.first, e.second) = kUnit;
  return out;
}

bool is_visualized(const Matrix& a, const SpectralData& sd, double eps) {
  if (sd.lambda.is_zero() || std::fabs(sd.lambda.value()) > eps) return false;
  for (Scalar v : a.data()) {
    if (v.is_finite() && v.value() > eps) return false;
  }
  for (const Edge& e : sd.critical_edges) {
    if (!approx_equal(a(e.first, e.second), kUnit, eps)) return false;
  }
  return true;
}

Matrix critical_matrix(const SpectralData& sd) {
  std::vector<std::size_t> position(sd.dim(), 0);
  for (std::size_t p = 0; p < sd.critical_nodes.size(); ++p) position[sd.critical_nodes[p]] = p;
  Matrix s(sd.c, sd.c);
  for (const Edge& e : sd.critical_edges) s(position[e.first], position[e.second]) = kUnit;
  return s;
}

Matrix critical_matrix_full(const SpectralData& sd) {
  Matrix s(sd.dim(), sd.dim());
  for (const Edge& e : sd.critical_edges) s(e.first, e.second) = kUnit;
  return s;
}

}  // namespace maxplus
