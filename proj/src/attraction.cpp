#include "maxplus/attraction.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <map>
#include <numeric>
#include <string>
#include <unordered_set>

#include "maxplus/error.hpp"

namespace maxplus {

namespace {

std::vector<IndexSets> build_index_sets(const std::vector<Chain>& chains, const PeriodicEngine& e) {
  const SpectralData& sd = e.spectral();
  const CyclicClasses& cc = e.classes();

  std::map<std::pair<std::size_t, std::uint64_t>, std::size_t> chain_of_class;
  for (std::size_t ch = 0; ch < chains.size(); ++ch) {
    for (const Side& side : chains[ch].sides) {
      const ClassLabel l = cc.checked_label(side.node);
      chain_of_class[{l.component, l.shift}] = ch;
    }
  }

  std::vector<IndexSets> out;
  for (const Chain& chain : chains) {
    for (const Side& side : chain.sides) {
      const ClassLabel own = cc.checked_label(side.node);
      IndexSets base{side.node, {}, {}, {}};
      std::map<std::size_t, std::vector<Term>> cross;
      for (const Term& term : side.terms) {
        const auto l = cc.label(term.var);
        if (!sd.is_critical(term.var)) {
          base.noncritical.push_back(term);
        } else if (*l == own) {
          base.class_terms.push_back(term);
        } else {
          cross[chain_of_class.at({l->component, l->shift})].push_back(term);
        }
      }
      for (auto& [ch, terms] : cross) base.cross.push_back({ch, std::move(terms)});
      for (std::size_t node : cc.class_of(side.node)) {
        base.node = node;
        out.push_back(base);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const IndexSets& a, const IndexSets& b) { return a.node < b.node; });
  return out;
}

std::string format_coeff(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

bool covers(std::uint64_t k, const std::vector<std::uint64_t>& rows) {
  return std::all_of(rows.begin(), rows.end(), [k](std::uint64_t r) { return (r & k) != 0; });
}

NodeSet mask_nodes(std::uint64_t mask) {
  NodeSet out;
  while (mask != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

void minimal_coverings(std::uint64_t k, const std::vector<std::uint64_t>& rows,
                       std::unordered_set<std::uint64_t>& seen, std::vector<std::uint64_t>& found) {
  if (!seen.insert(k).second) return;
  const auto open = std::find_if(rows.begin(), rows.end(), [k](std::uint64_t r) { return (r & k) == 0; });
  if (open == rows.end()) {
    for (std::uint64_t rest = k; rest != 0; rest &= rest - 1) {
      if (covers(k & ~(rest & -rest), rows)) return;
    }
    found.push_back(k);
    return;
  }
  for (std::uint64_t choices = *open; choices != 0; choices &= choices - 1) {
    minimal_coverings(k | (choices & -choices), rows, seen, found);
  }
}

}  // namespace

AttractionSystem attraction_system(const PeriodicEngine& e, std::uint64_t t) {
  if (t == 0) throw Error(Errc::InvalidArgument, "t must be at least 1");
  const CyclicClasses& cc = e.classes();
  std::vector<Chain> chains;
  for (std::size_t mu = 0; mu < cc.component_count(); ++mu) {
    const std::uint64_t period = cc.cyclicity(mu);
    const std::uint64_t step = t % period;
    const std::uint64_t g = std::gcd(t, period);
    for (std::uint64_t s0 = 0; s0 < g; ++s0) {
      RawChain raw{chains.size(), {}, {}};
      for (std::uint64_t k = 0; k < period / g; ++k) {
        const std::size_t node = cc.class_at(mu, static_cast<std::int64_t>((s0 + k * step) % period)).front();
        raw.nodes.push_back(node);
        raw.rows.push_back(e.critical_row(node, 0));
      }
      chains.push_back(chain_cancel(raw, e.eps()));
    }
  }
  AttractionSystem sys{t, e.dim(), std::move(chains), {}};
  sys.index_sets = build_index_sets(sys.chains, e);
  return sys;
}

Chain chain_cancel(const RawChain& raw, double eps) {
  if (raw.rows.empty()) return Chain{raw.component, {}};
  Vector bounds(raw.rows.front().size(), kZero);
  for (const Vector& row : raw.rows) {
    if (row.size() != bounds.size()) throw Error(Errc::DimensionMismatch, "ragged chain rows");
    for (std::size_t k = 0; k < row.size(); ++k) bounds[k] = oplus(bounds[k], row[k]);
  }
  return chain_cancel(raw, bounds, eps);
}

Chain chain_cancel(const RawChain& raw, std::span<const Scalar> bounds, double eps) {
  if (raw.nodes.size() != raw.rows.size()) throw Error(Errc::DimensionMismatch, "one row per side expected");
  Chain out{raw.component, {}};
  for (std::size_t node : raw.nodes) out.sides.push_back({node, {}});
  for (const Vector& row : raw.rows) {
    if (row.size() != bounds.size()) throw Error(Errc::DimensionMismatch, "row length differs from bounds");
  }
  for (std::size_t k = 0; k < bounds.size(); ++k) {
    bool attained = bounds[k].is_zero();
    for (std::size_t l = 0; l < raw.rows.size(); ++l) {
      const Scalar v = raw.rows[l][k];
      if (v.is_zero()) continue;
      if (bounds[k].is_zero() || v.value() > bounds[k].value() + eps) {
        throw Error(Errc::CoverageGap, "coefficient of x" + std::to_string(k + 1) + " exceeds its bound");
      }
      if (approx_equal(v, bounds[k], eps)) {
        out.sides[l].terms.push_back({k, bounds[k]});
        attained = true;
      }
    }
    if (!attained) {
      throw Error(Errc::CoverageGap, "bound of x" + std::to_string(k + 1) + " is attained on no side");
    }
  }
  return out;
}

Scalar evaluate(const Side& side, std::span<const Scalar> x) {
  Scalar acc = kZero;
  for (const Term& term : side.terms) acc = oplus(acc, otimes(term.coeff, x[term.var]));
  return acc;
}

bool satisfies(const AttractionSystem& sys, std::span<const Scalar> x, double eps) {
  if (x.size() != sys.n) throw Error(Errc::DimensionMismatch, "vector length differs from system");
  for (const Chain& chain : sys.chains) {
    if (chain.sides.empty()) continue;
    const Scalar first = evaluate(chain.sides.front(), x);
    for (const Side& side : chain.sides) {
      if (!approx_equal(evaluate(side, x), first, eps)) return false;
    }
  }
  return true;
}

AttractionSystem unscale(const AttractionSystem& sys, std::span<const Scalar> scaling) {
  if (scaling.size() != sys.n) throw Error(Errc::DimensionMismatch, "scaling length differs from system");
  auto fix = [&](std::vector<Term>& terms) {
    for (Term& term : terms) {
      term.coeff = Scalar::from_raw(term.coeff.value() - scaling[term.var].value());
    }
  };
  AttractionSystem out = sys;
  for (Chain& chain : out.chains) {
    for (Side& side : chain.sides) fix(side.terms);
  }
  for (IndexSets& is : out.index_sets) {
    fix(is.class_terms);
    fix(is.noncritical);
    for (CrossGroup& group : is.cross) fix(group.terms);
  }
  return out;
}

CoveringProblem covering_problem(const AttractionSystem& sys) {
  if (sys.chains.size() != 1) {
    throw Error(Errc::NotStronglyConnectedCritical,
                "extremals need a single chain, the system has " + std::to_string(sys.chains.size()));
  }
  CoveringProblem cp{sys.n, {}, Vector(sys.n, kUnit)};
  for (const Side& side : sys.chains.front().sides) {
    NodeSet row;
    for (const Term& term : side.terms) {
      row.push_back(term.var);
      cp.scale[term.var] = term.coeff;
    }
    cp.rows.push_back(std::move(row));
  }
  return cp;
}

std::vector<NodeSet> nearly_minimal_coverings(const CoveringProblem& cp) {
  if (cp.n > 64) throw Error(Errc::InvalidArgument, "covering enumeration supports at most 64 variables");
  std::vector<std::uint64_t> rows;
  std::uint64_t universe = 0;
  for (const NodeSet& row : cp.rows) {
    std::uint64_t mask = 0;
    for (std::size_t k : row) mask |= std::uint64_t{1} << k;
    if (mask == 0) throw Error(Errc::InvalidArgument, "covering problem has an empty row");
    rows.push_back(mask);
    universe |= mask;
  }

  std::unordered_set<std::uint64_t> seen;
  std::vector<std::uint64_t> minimal;
  minimal_coverings(0, rows, seen, minimal);

  std::vector<std::uint64_t> result(minimal.begin(), minimal.end());
  for (std::uint64_t m : minimal) {
    for (std::uint64_t extra = universe & ~m; extra != 0; extra &= extra - 1) {
      const std::uint64_t k = m | (extra & -extra);
      bool only = true;
      for (std::uint64_t rest = m; rest != 0 && only; rest &= rest - 1) {
        only = !covers(k & ~(rest & -rest), rows);
      }
      if (only) result.push_back(k);
    }
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());

  std::vector<NodeSet> out;
  for (std::uint64_t k : result) out.push_back(mask_nodes(k));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Extremal> extremals(const CoveringProblem& cp) {
  std::vector<NodeSet> supports = nearly_minimal_coverings(cp);
  std::vector<bool> mentioned(cp.n, false);
  for (const NodeSet& row : cp.rows) {
    for (std::size_t k : row) mentioned[k] = true;
  }
  for (std::size_t k = 0; k < cp.n; ++k) {
    if (!mentioned[k]) supports.push_back({k});
  }
  std::sort(supports.begin(), supports.end());

  std::vector<Extremal> out;
  for (NodeSet& support : supports) {
    Extremal x{std::move(support), Vector(cp.n, kZero), Vector(cp.n, kZero)};
    for (std::size_t k : x.support) {
      x.scaled[k] = kUnit;
      x.unscaled[k] = Scalar::from_raw(-cp.scale[k].value());
    }
    out.push_back(std::move(x));
  }
  return out;
}

Algorithm1State algorithm1_state(const PeriodicEngine& e) {
  const SpectralData& sd = e.spectral();
  const CyclicClasses& cc = e.classes();
  const Matrix& a = e.matrix();
  const double eps = e.eps();
  if (sd.components.size() != 1) {
    throw Error(Errc::NotStronglyConnectedCritical,
                "critical graph has " + std::to_string(sd.components.size()) + " components");
  }

  Algorithm1State st;
  st.critical = sd.critical_nodes;
  st.noncritical = sd.noncritical_nodes();
  const std::size_t cbar = st.noncritical.size();
  std::vector<std::size_t> pos(sd.dim(), 0);
  for (std::size_t p = 0; p < st.critical.size(); ++p) pos[st.critical[p]] = p;

  st.h.assign(cbar, kZero);
  st.h_argmax.assign(cbar, {});
  st.g.assign(cbar, kZero);
  for (std::size_t t = 0; t < cbar; ++t) {
    for (std::size_t k : st.critical) {
      st.h[t] = oplus(st.h[t], a(k, st.noncritical[t]));
      st.g[t] = oplus(st.g[t], a(st.noncritical[t], k));
    }
    for (std::size_t k : st.critical) {
      if (st.h[t].is_finite() && approx_equal(a(k, st.noncritical[t]), st.h[t], eps)) st.h_argmax[t].push_back(k);
    }
  }

  st.b = a.submatrix(st.noncritical, st.noncritical);
  std::vector<Matrix> powers;
  Matrix bm = Matrix::identity(cbar);
  st.b_star = bm;
  for (std::size_t m = 0; m < cbar; ++m) {
    if (m > 0) {
      bm = matmul(bm, st.b);
      st.b_star = oplus(st.b_star, bm);
    }
    powers.push_back(bm);
  }
  st.u.assign(cbar, std::vector<std::vector<std::size_t>>(cbar));
  for (std::size_t s = 0; s < cbar; ++s) {
    for (std::size_t t = 0; t < cbar; ++t) {
      if (st.b_star(s, t).is_zero()) continue;
      for (std::size_t m = 0; m < cbar; ++m) {
        if (approx_equal(powers[m](s, t), st.b_star(s, t), eps)) st.u[s][t].push_back(m);
      }
    }
  }

  st.p.assign(cbar, std::vector<bool>(st.critical.size(), false));
  for (std::size_t t = 0; t < cbar; ++t) {
    for (std::size_t p = 0; p < st.critical.size(); ++p) {
      for (std::size_t j : class_shift(cc, st.critical[p], 1)) {
        if (std::binary_search(st.h_argmax[t].begin(), st.h_argmax[t].end(), j)) st.p[t][p] = true;
      }
    }
  }

  st.hb.assign(cbar, kZero);
  st.w.assign(cbar, {});
  std::vector<std::vector<std::size_t>> winners(cbar);
  for (std::size_t t = 0; t < cbar; ++t) {
    for (std::size_t s = 0; s < cbar; ++s) st.hb[t] = oplus(st.hb[t], otimes(st.h[s], st.b_star(s, t)));
    for (std::size_t s = 0; s < cbar; ++s) {
      if (st.hb[t].is_finite() && approx_equal(otimes(st.h[s], st.b_star(s, t)), st.hb[t], eps)) {
        st.w[t].push_back(st.noncritical[s]);
        winners[t].push_back(s);
      }
    }
  }

  st.gt.assign(cbar, std::vector<bool>(st.critical.size(), false));
  st.k.assign(st.critical.size(), {});
  for (std::size_t t = 0; t < cbar; ++t) {
    for (std::size_t p = 0; p < st.critical.size(); ++p) {
      bool hit = false;
      for (std::size_t s : winners[t]) {
        for (std::size_t m : st.u[s][t]) {
          const std::size_t j = class_shift(cc, st.critical[p], static_cast<std::int64_t>(m)).front();
          hit = hit || st.p[s][pos[j]];
        }
      }
      st.gt[t][p] = hit;
      if (hit) st.k[p].push_back(st.noncritical[t]);
    }
  }
  return st;
}

AttractionSystem algorithm1(const PeriodicEngine& e) {
  const Algorithm1State st = algorithm1_state(e);
  const CyclicClasses& cc = e.classes();
  std::vector<std::size_t> pos(e.dim(), 0);
  for (std::size_t p = 0; p < st.critical.size(); ++p) pos[st.critical[p]] = p;
  std::vector<std::size_t> nc_pos(e.dim(), 0);
  for (std::size_t q = 0; q < st.noncritical.size(); ++q) nc_pos[st.noncritical[q]] = q;

  Chain chain{0, {}};
  for (const NodeSet& cls : cc.classes(0)) {
    Side side{cls.front(), {}};
    for (std::size_t v : cls) side.terms.push_back({v, kUnit});
    for (std::size_t t : st.k[pos[cls.front()]]) side.terms.push_back({t, st.hb[nc_pos[t]]});
    std::sort(side.terms.begin(), side.terms.end(), [](const Term& x, const Term& y) { return x.var < y.var; });
    chain.sides.push_back(std::move(side));
  }
  AttractionSystem sys{1, e.dim(), {std::move(chain)}, {}};
  sys.index_sets = build_index_sets(sys.chains, e);
  return sys;
}

std::string to_text(const Chain& chain) {
  std::string out;
  for (std::size_t l = 0; l < chain.sides.size(); ++l) {
    if (l > 0) out += " = ";
    const Side& side = chain.sides[l];
    if (side.terms.empty()) out += "-inf";
    for (std::size_t q = 0; q < side.terms.size(); ++q) {
      if (q > 0) out += " (+) ";
      const Term& term = side.terms[q];
      const std::string var = "x" + std::to_string(term.var + 1);
      const double c = term.coeff.value();
      if (c == 0.0) {
        out += var;
      } else {
        out += "(" + var + (c < 0 ? " - " : " + ") + format_coeff(std::fabs(c)) + ")";
      }
    }
  }
  return out;
}

std::string to_text(const AttractionSystem& sys) {
  std::string out;
  for (const Chain& chain : sys.chains) out += to_text(chain) + "\n";
  return out;
}

}  // namespace maxplus
