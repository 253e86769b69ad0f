#include "maxplus/cli.hpp"

#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "maxplus/attraction.hpp"
#include "maxplus/io.hpp"
#include "maxplus/report.hpp"

namespace maxplus::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "text";
  double eps = kDefaultEps;
  bool assume_visualized = false;
  std::string matrix_path;
  std::string vector_path;
  std::uint64_t t = 1;
  std::optional<std::uint64_t> residue;
  bool strict = false;
  std::string algo = "auto";
  std::uint64_t cap = 100000;
};

struct Output {
  Json result;
  std::string text;
};

struct Context {
  const Options& opt;
  Semiring semiring = Semiring::MaxPlus;
  std::vector<InputDigest> inputs;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Matrix load_matrix(Context& ctx) {
  const std::string text = slurp(ctx.opt.matrix_path);
  ctx.inputs.push_back({ctx.opt.matrix_path, sha256_hex(text)});
  MatrixFile file;
  try {
    file = read_matrix(text);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw UsageError(ctx.opt.matrix_path + ": " + e.what());
  }
  ctx.semiring = file.semiring;
  return std::move(file.matrix);
}

Vector load_vector(Context& ctx, std::size_t n) {
  const std::string text = slurp(ctx.opt.vector_path);
  ctx.inputs.push_back({ctx.opt.vector_path, sha256_hex(text)});
  Vector v = read_vector(text).vector;
  if (v.size() != n) {
    throw Error(Errc::DimensionMismatch,
                "vector has length " + std::to_string(v.size()) + ", matrix has dimension " + std::to_string(n));
  }
  return v;
}

// Definite form, then a strict visualization unless the matrix is already
// visualized or the caller vouches for it.
struct Prepared {
  Scalar lambda;
  Vector scaling;
  std::unique_ptr<PeriodicEngine> engine;
};

Prepared prepare(const Matrix& a, const Options& opt) {
  Prepared p;
  p.lambda = max_cycle_mean(a);
  const Matrix b = definite_form(a);
  p.scaling.assign(b.dim(), kUnit);
  if (opt.assume_visualized) {
    p.engine = std::make_unique<PeriodicEngine>(b, opt.eps);
    return p;
  }
  if (!is_irreducible(b)) throw Error(Errc::NotIrreducible, "matrix is reducible");
  if (is_visualized(b, critical_graph(b, opt.eps), opt.eps)) {
    p.engine = std::make_unique<PeriodicEngine>(b, opt.eps);
    return p;
  }
  VisualizedMatrix vm = visualize(b, true, opt.eps);
  p.scaling = std::move(vm.scaling);
  p.engine = std::make_unique<PeriodicEngine>(std::move(vm.matrix), opt.eps);
  return p;
}

// X M X^{-1}: back from visualized to original coordinates.
Matrix unscale_matrix(const Matrix& m, const Vector& x) {
  Matrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).is_finite()) out(i, j) = Scalar::from_raw(m(i, j).value() + x[i].value() - x[j].value());
    }
  }
  return out;
}

Vector to_visualized(const Vector& v, const Vector& x) {
  Vector out = v;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_finite()) out[i] = Scalar::from_raw(v[i].value() - x[i].value());
  }
  return out;
}

// Rectangular matrices have no file form; print bare rows.
std::string rows_text(const Matrix& m, Semiring semiring) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? " " : "") + format_scalar(m(i, j), semiring);
    out += "\n";
  }
  return out;
}

std::string vector_text(const Vector& v, Semiring semiring) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + format_scalar(v[i], semiring);
  return out;
}

std::string nodes_text(const NodeSet& nodes) {
  std::string out = "{";
  for (std::size_t q = 0; q < nodes.size(); ++q) out += (q ? "," : "") + std::to_string(nodes[q] + 1);
  return out + "}";
}

Output cmd_lambda(Context& ctx) {
  const Scalar lambda = max_cycle_mean(load_matrix(ctx));
  return {Json{{"lambda", to_json(lambda)}}, "lambda: " + format_scalar(lambda, ctx.semiring) + "\n"};
}

Output cmd_star(Context& ctx) {
  const Matrix star = kleene_star(load_matrix(ctx), ctx.opt.eps).star;
  return {Json{{"star", to_json(star)}}, write_matrix(star, ctx.semiring)};
}

Output cmd_critical(Context& ctx) {
  const SpectralData sd = critical_graph(load_matrix(ctx), ctx.opt.eps);
  std::string text = "lambda: " + format_scalar(sd.lambda, ctx.semiring) + "\ncritical nodes: " + nodes_text(sd.critical_nodes) +
                     "\ncritical edges:";
  for (const Edge& e : sd.critical_edges) {
    text += " " + std::to_string(e.first + 1) + "->" + std::to_string(e.second + 1);
  }
  text += "\n";
  for (std::size_t mu = 0; mu < sd.components.size(); ++mu) {
    text += "component " + std::to_string(mu + 1) + ": " + nodes_text(sd.components[mu]) +
            " cyclicity " + std::to_string(sd.cyclicities[mu]) + "\n";
  }
  text += "gamma: " + std::to_string(sd.gamma) + "\n";
  return {to_json(sd), text};
}

Output cmd_classes(Context& ctx) {
  const CyclicClasses cc = cyclic_classes(critical_graph(load_matrix(ctx), ctx.opt.eps));
  std::string text;
  for (std::size_t mu = 0; mu < cc.component_count(); ++mu) {
    text += "component " + std::to_string(mu + 1) + " (cyclicity " + std::to_string(cc.cyclicity(mu)) + "):";
    for (const NodeSet& cls : cc.classes(mu)) text += " " + nodes_text(cls);
    text += "\n";
  }
  return {to_json(cc), text};
}

Output cmd_visualize(Context& ctx) {
  const Matrix a = load_matrix(ctx);
  const Scalar lambda = max_cycle_mean(a);
  const VisualizedMatrix vm = visualize(definite_form(a), ctx.opt.strict, ctx.opt.eps);
  Json result{{"lambda", to_json(lambda)}};
  const Json body = to_json(vm);
  for (const auto& [key, value] : body.items()) result[key] = value;
  std::string text = "lambda: " + format_scalar(lambda, ctx.semiring) + "\nscaling: " + vector_text(vm.scaling, ctx.semiring) + "\n" +
                     write_matrix(vm.matrix, ctx.semiring);
  return {result, text};
}

Output cmd_power(Context& ctx) {
  const Prepared p = prepare(load_matrix(ctx), ctx.opt);
  const std::uint64_t residue = ctx.opt.residue.value_or(0) % p.engine->gamma();
  const Matrix power = unscale_matrix(periodic_power(*p.engine, residue), p.scaling);
  Json result{{"lambda", to_json(p.lambda)},
              {"gamma", p.engine->gamma()},
              {"residue", residue},
              {"matrix", to_json(power)}};
  return {result, "gamma: " + std::to_string(p.engine->gamma()) + "\nresidue: " + std::to_string(residue) + "\n" +
                      write_matrix(power, ctx.semiring)};
}

Output cmd_orbit_period(Context& ctx) {
  const Prepared p = prepare(load_matrix(ctx), ctx.opt);
  const Vector x = load_vector(ctx, p.engine->dim());
  const std::uint64_t period = orbit_period(*p.engine, to_visualized(x, p.scaling));
  return {Json{{"period", period}}, "period: " + std::to_string(period) + "\n"};
}

Output cmd_attr_member(Context& ctx) {
  const Prepared p = prepare(load_matrix(ctx), ctx.opt);
  const Vector x = load_vector(ctx, p.engine->dim());
  const bool member = attraction_member(*p.engine, to_visualized(x, p.scaling), ctx.opt.t);
  return {Json{{"t", ctx.opt.t}, {"member", member}}, std::string("member: ") + (member ? "true" : "false") + "\n"};
}

Output cmd_attr_system(Context& ctx) {
  const Prepared p = prepare(load_matrix(ctx), ctx.opt);
  std::string algo = ctx.opt.algo;
  if (algo == "auto") {
    algo = ctx.opt.t == 1 && p.engine->spectral().components.size() == 1 ? "algorithm1" : "periodic";
  }
  if (algo == "algorithm1" && ctx.opt.t != 1) throw UsageError("--algo algorithm1 requires --t 1");
  const AttractionSystem sys =
      unscale(algo == "algorithm1" ? algorithm1(*p.engine) : attraction_system(*p.engine, ctx.opt.t), p.scaling);
  Json result{{"algorithm", algo}};
  const Json body = to_json(sys);
  for (const auto& [key, value] : body.items()) result[key] = value;
  return {result, to_text(sys)};
}

Output cmd_extremals(Context& ctx) {
  const Prepared p = prepare(load_matrix(ctx), ctx.opt);
  const AttractionSystem sys = unscale(attraction_system(*p.engine, 1), p.scaling);
  const std::vector<Extremal> xs = extremals(covering_problem(sys));
  std::string text;
  for (const Extremal& x : xs) text += nodes_text(x.support) + ": " + vector_text(x.unscaled, ctx.semiring) + "\n";
  return {Json{{"extremals", to_json(xs)}}, text};
}

Output cmd_csr(Context& ctx) {
  const Prepared p = prepare(load_matrix(ctx), ctx.opt);
  const CsrDecomposition d = csr(*p.engine);
  Json result = to_json(d);
  result["scaling"] = to_json(p.scaling);
  std::string text = "gamma: " + std::to_string(d.gamma) + "\ncritical nodes: " + nodes_text(d.critical_nodes) +
                     "\nC:\n" + rows_text(d.c, ctx.semiring) + "S:\n" + rows_text(d.s, ctx.semiring) + "R:\n" + rows_text(d.r, ctx.semiring);
  if (ctx.opt.residue) {
    const std::uint64_t l = *ctx.opt.residue % d.gamma;
    const Matrix power = unscale_matrix(csr_reconstruct(d, l), p.scaling);
    result["residue"] = l;
    result["power"] = to_json(power);
    text += "power (residue " + std::to_string(l) + "):\n" + write_matrix(power, ctx.semiring);
  }
  return {result, text};
}

Output cmd_core(Context& ctx) {
  const Prepared p = prepare(load_matrix(ctx), ctx.opt);
  const CoreMatrix core = core_matrix(*p.engine);
  std::string text = "blocks:";
  for (const NodeSet& b : core.blocks) text += " " + nodes_text(b);
  text += "\nalpha:\n" + write_matrix(core.alpha, ctx.semiring) + "alpha*:\n" + write_matrix(core.alpha_star, ctx.semiring);
  return {to_json(core), text};
}

Output cmd_transient(Context& ctx) {
  const Matrix a = definite_form(load_matrix(ctx));
  const std::uint64_t t = transient_oracle(a, ctx.opt.cap, ctx.opt.eps);
  return {Json{{"transient", t}}, "transient: " + std::to_string(t) + "\n"};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Max-plus matrix analysis: spectra, periodic powers, attraction cones", "maxplus"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--eps", opt.eps, "Tolerance for path-weight equality")->check(CLI::NonNegativeNumber);
  app.add_flag("--assume-visualized", opt.assume_visualized, "Skip the visualization scaling");

  using Handler = std::function<Output(Context&)>;
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const char* name, const char* help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("matrix", opt.matrix_path, "Matrix file")->required();
    commands.emplace_back(sub, std::move(h));
    return sub;
  };

  add("lambda", "Maximum cycle mean", cmd_lambda);
  add("star", "Kleene star", cmd_star);
  add("critical", "Critical graph", cmd_critical);
  add("classes", "Cyclic classes of the critical graph", cmd_classes);
  add("visualize", "Visualization scaling", cmd_visualize)
      ->add_flag("--strict", opt.strict, "Strict visualization");
  add("power", "Periodic power A^r, r = K mod gamma", cmd_power)
      ->add_option("--residue", opt.residue, "Residue K")
      ->required();
  auto* orbit = add("orbit-period", "Ultimate period of the orbit of a vector", cmd_orbit_period);
  orbit->add_option("--vec", opt.vector_path, "Vector file")->required();
  auto* member = add("attr-member", "Membership in the attraction cone Attr(A, t)", cmd_attr_member);
  member->add_option("--vec", opt.vector_path, "Vector file")->required();
  member->add_option("--t", opt.t, "Period t")->required()->check(CLI::PositiveNumber);
  auto* system = add("attr-system", "Equation system of Attr(A, t)", cmd_attr_system);
  system->add_option("--t", opt.t, "Period t")->required()->check(CLI::PositiveNumber);
  system->add_option("--algo", opt.algo, "Method")->check(CLI::IsMember({"auto", "algorithm1", "periodic"}));
  add("extremals", "Extremal generators of Attr(A, 1)", cmd_extremals);
  add("csr", "CSR factors of the periodic powers", cmd_csr)->add_option("--residue", opt.residue, "Residue l");
  add("core", "Core matrix and its star", cmd_core);
  add("transient", "Transient by iterated products", cmd_transient)
      ->add_option("--cap", opt.cap, "Largest transient tried");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  Context ctx{opt, Semiring::MaxPlus, {}};
  for (auto& [sub, handler] : commands) {
    if (!sub->parsed()) continue;
    try {
      Output o = handler(ctx);
      if (opt.format == "json") {
        out << dump(make_report(sub->get_name(), ctx.inputs, ctx.semiring, std::move(o.result))) << "\n";
      } else {
        out << o.text;
      }
      return kOk;
    } catch (const UsageError& e) {
      err << "error: " << e.what() << "\n";
      return kUsageError;
    } catch (const ParseError& e) {
      err << "error: " << e.what() << "\n";
      return kUsageError;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kDomainError;
    }
  }
  return kUsageError;
}

}  // namespace maxplus::cli
