#include "maxplus/report.hpp"

#include <openssl/evp.h>

#include <cstdio>

namespace maxplus {

namespace {

Json terms_json(const std::vector<Term>& terms) {
  Json out = Json::array();
  for (const Term& t : terms) out.push_back(Json::array({t.var + 1, to_json(t.coeff)}));
  return out;
}

void dump_into(const Json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent >= 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent >= 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent >= 0 ? "\n" : "";
  const char* colon = indent >= 0 ? ": " : ":";
  switch (j.type()) {
    case Json::value_t::number_float: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
      out += buf;
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      bool first = true;
      for (const Json& item : j) {
        if (!first) out += std::string(",") + nl;
        first = false;
        out += pad;
        dump_into(item, indent, depth + 1, out);
      }
      out += nl + close + "]";
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += std::string(",") + nl;
        first = false;
        out += pad + Json(it.key()).dump() + colon;
        dump_into(it.value(), indent, depth + 1, out);
      }
      out += nl + close + "}";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

Json to_json(Scalar s) {
  if (s.is_zero()) return "-inf";
  return s.value() + 0.0;  // no -0
}

Json to_json(std::span<const Scalar> v) {
  Json out = Json::array();
  for (Scalar s : v) out.push_back(to_json(s));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

Json nodes_json(const NodeSet& nodes) {
  Json out = Json::array();
  for (std::size_t v : nodes) out.push_back(v + 1);
  return out;
}

Json to_json(const SpectralData& sd) {
  Json edges = Json::array();
  for (const Edge& e : sd.critical_edges) edges.push_back(Json::array({e.first + 1, e.second + 1}));
  Json comps = Json::array();
  for (std::size_t mu = 0; mu < sd.components.size(); ++mu) {
    comps.push_back(Json{{"nodes", nodes_json(sd.components[mu])}, {"cyclicity", sd.cyclicities[mu]}});
  }
  return Json{{"lambda", to_json(sd.lambda)},
              {"critical_nodes", nodes_json(sd.critical_nodes)},
              {"critical_edges", std::move(edges)},
              {"components", std::move(comps)},
              {"gamma", sd.gamma},
              {"c", sd.c},
              {"cbar", sd.cbar}};
}

Json to_json(const CyclicClasses& cc) {
  Json comps = Json::array();
  for (std::size_t mu = 0; mu < cc.component_count(); ++mu) {
    Json classes = Json::array();
    for (const NodeSet& cls : cc.classes(mu)) classes.push_back(nodes_json(cls));
    comps.push_back(Json{{"cyclicity", cc.cyclicity(mu)}, {"classes", std::move(classes)}});
  }
  return Json{{"components", std::move(comps)}};
}

Json to_json(const VisualizedMatrix& vm) {
  return Json{{"strict", vm.strict}, {"scaling", to_json(vm.scaling)}, {"matrix", to_json(vm.matrix)}};
}

Json to_json(const CoreMatrix& core) {
  Json blocks = Json::array();
  for (const NodeSet& b : core.blocks) blocks.push_back(nodes_json(b));
  return Json{{"blocks", std::move(blocks)},
              {"critical_blocks", core.critical_blocks},
              {"alpha", to_json(core.alpha)},
              {"alpha_star", to_json(core.alpha_star)}};
}

Json to_json(const CsrDecomposition& d) {
  return Json{{"gamma", d.gamma},
              {"critical_nodes", nodes_json(d.critical_nodes)},
              {"C", to_json(d.c)},
              {"S", to_json(d.s)},
              {"R", to_json(d.r)}};
}

Json to_json(const ReducedPower& rp) {
  Json groups = Json::array();
  for (const NodeSet& g : rp.groups) groups.push_back(nodes_json(g));
  return Json{{"groups", std::move(groups)}, {"class_count", rp.class_count}, {"reduced", to_json(rp.reduced)}};
}

Json to_json(const AttractionSystem& sys) {
  Json chains = Json::array();
  for (const Chain& chain : sys.chains) {
    Json sides = Json::array();
    for (const Side& side : chain.sides) {
      sides.push_back(Json{{"class_node", side.node + 1}, {"terms", terms_json(side.terms)}});
    }
    chains.push_back(Json{{"component", chain.component}, {"sides", std::move(sides)}});
  }
  Json sets = Json::array();
  for (const IndexSets& is : sys.index_sets) {
    Json cross = Json::array();
    for (const CrossGroup& g : is.cross) cross.push_back(Json{{"chain", g.chain}, {"terms", terms_json(g.terms)}});
    sets.push_back(Json{{"node", is.node + 1},
                        {"class_terms", terms_json(is.class_terms)},
                        {"cross", std::move(cross)},
                        {"noncritical", terms_json(is.noncritical)}});
  }
  return Json{{"t", sys.t}, {"n", sys.n}, {"chains", std::move(chains)}, {"index_sets", std::move(sets)}};
}

Json to_json(const std::vector<Extremal>& xs) {
  Json out = Json::array();
  for (const Extremal& x : xs) {
    out.push_back(Json{{"support", nodes_json(x.support)}, {"scaled", to_json(x.scaled)}, {"vector", to_json(x.unscaled)}});
  }
  return out;
}

Json to_json(const Algorithm1State& st) {
  auto bools = [](const std::vector<std::vector<bool>>& rows) {
    Json out = Json::array();
    for (const auto& row : rows) {
      Json r = Json::array();
      for (bool b : row) r.push_back(b ? 1 : 0);
      out.push_back(std::move(r));
    }
    return out;
  };
  auto sets = [](const std::vector<NodeSet>& xs) {
    Json out = Json::array();
    for (const NodeSet& x : xs) out.push_back(nodes_json(x));
    return out;
  };
  Json u = Json::array();
  for (const auto& row : st.u) {
    Json r = Json::array();
    for (const auto& cell : row) r.push_back(cell);
    u.push_back(std::move(r));
  }
  return Json{{"critical", nodes_json(st.critical)},
              {"noncritical", nodes_json(st.noncritical)},
              {"h", to_json(st.h)},
              {"g", to_json(st.g)},
              {"B", to_json(st.b)},
              {"B_star", to_json(st.b_star)},
              {"U", std::move(u)},
              {"P", bools(st.p)},
              {"hB_star", to_json(st.hb)},
              {"W", sets(st.w)},
              {"G", bools(st.gt)},
              {"K", sets(st.k)}};
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

Json make_report(std::string_view command, const std::vector<InputDigest>& inputs, Semiring semiring,
                 Json result) {
  Json in = Json::array();
  for (const InputDigest& d : inputs) in.push_back(Json{{"path", d.path}, {"sha256", d.sha256}});
  return Json{{"command", command},
              {"inputs", std::move(in)},
              {"semiring", to_string(semiring)},
              {"result", std::move(result)}};
}

std::string dump(const Json& j, int indent) {
  std::string out;
  dump_into(j, indent, 0, out);
  return out;
}

}  // namespace maxplus
