#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "poissonkit/cli/cli.hpp"
#include "poissonkit/dirac/dirac.hpp"
#include "poissonkit/error.hpp"
#include "poissonkit/exactlin/json.hpp"
#include "poissonkit/morita/json.hpp"
#include "poissonkit/multivec/json.hpp"
#include "poissonkit/nctorus/json.hpp"
#include "poissonkit/nctorus/sonn.hpp"
#include "poissonkit/tss/json.hpp"

namespace poissonkit::cli {

using nlohmann::json;

namespace {

json read_json(const std::string& file, std::istream& in) {
  std::string text;
  if (file == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else {
    std::ifstream f(file);
    if (!f) throw Error(ErrorCode::Parse, "cannot read input file '" + file + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("input is not valid JSON: ") + e.what());
  }
}

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw Error(ErrorCode::Schema, std::string("missing '") + key + "'", "");
  return doc[key];
}

// ---- dirac -----------------------------------------------------------------

json dirac_json(const dirac::DiracSubspace& l) {
  const auto c = dirac::certify(l.space(), l.v_dim());
  return {{"dirac", {{"v_dim", l.v_dim()}, {"basis", exactlin::to_json(l.basis())}}},
          {"certificate",
           {{"maximal", c.maximal}, {"isotropic", c.isotropic}, {"dim", c.dim}, {"text", c.describe()}}}};
}

dirac::DiracSubspace dirac_from_json(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("v_dim") || !j["v_dim"].is_number_unsigned() || !j.contains("basis"))
    throw Error(ErrorCode::Schema, "Dirac subspace needs 'v_dim' and 'basis'", path);
  const std::size_t n = j["v_dim"].get<std::size_t>();
  const auto b = exactlin::matrix_from_json(j["basis"], path + "/basis");
  try {
    return dirac::DiracSubspace::from_generators(n, b);
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), path + "/basis");
  }
}

json subspace_json(const exactlin::ExactSubspace& s) {
  return {{"ambient_dim", s.ambient_dim()}, {"dim", s.dim()}, {"basis", exactlin::to_json(s.basis())}};
}

json run_dirac(const std::string& op, const json& doc) {
  if (op == "from-bivector") return dirac_json(dirac::from_bivector(exactlin::matrix_from_json(field(doc, "pi"), "/pi")));
  if (op == "from-two-form")
    return dirac_json(dirac::from_two_form(exactlin::matrix_from_json(field(doc, "omega"), "/omega")));
  if (op == "from-pair") {
    if (!field(doc, "v_dim").is_number_unsigned()) throw Error(ErrorCode::Schema, "'v_dim' must be a count", "/v_dim");
    const std::size_t n = doc["v_dim"].get<std::size_t>();
    const auto r = exactlin::matrix_from_json(field(doc, "range"), "/range");
    if (r.cols() != n && !r.empty()) throw Error(ErrorCode::DimensionMismatch, "range generators need v_dim columns", "/range");
    dirac::DiracPair p{exactlin::ExactSubspace::span(n, r), exactlin::matrix_from_json(field(doc, "theta"), "/theta")};
    return dirac_json(dirac::from_pair(p, n));
  }
  if (op == "certify") {
    if (!field(doc, "v_dim").is_number_unsigned()) throw Error(ErrorCode::Schema, "'v_dim' must be a count", "/v_dim");
    const std::size_t n = doc["v_dim"].get<std::size_t>();
    const auto b = exactlin::matrix_from_json(field(doc, "basis"), "/basis");
    if (b.cols() != 2 * n && !b.empty()) throw Error(ErrorCode::DimensionMismatch, "basis needs 2*v_dim columns", "/basis");
    const auto c = dirac::certify(exactlin::ExactSubspace::span(2 * n, b), n);
    return {{"maximal", c.maximal}, {"isotropic", c.isotropic}, {"dim", c.dim}, {"text", c.describe()}};
  }
  const auto l = dirac_from_json(field(doc, "dirac"), "/dirac");
  if (op == "to-pair") {
    const auto p = dirac::to_pair(l);
    return {{"range", subspace_json(p.range)}, {"theta", exactlin::to_json(p.theta)}};
  }
  if (op == "gauge") return dirac_json(dirac::gauge(l, exactlin::matrix_from_json(field(doc, "b"), "/b")));
  if (op == "range") return subspace_json(dirac::range(l));
  if (op == "kernel") return subspace_json(dirac::kernel(l));
  throw Error(ErrorCode::Usage, "unknown dirac operation '" + op + "'");
}

// ---- poisson ---------------------------------------------------------------

std::size_t doc_n_vars(const json& doc) {
  if (doc.is_object() && doc.contains("n_vars")) return multivec::n_vars_from_json(doc, "");
  if (doc.is_object() && doc.contains("lie_poisson")) return multivec::structure_constants_from_json(doc["lie_poisson"], "/lie_poisson").n;
  throw Error(ErrorCode::Schema, "missing 'n_vars'", "");
}

multivec::PolyBivector doc_pi(const json& doc, std::size_t n) {
  if (doc.contains("lie_poisson")) return multivec::lie_poisson(multivec::structure_constants_from_json(doc["lie_poisson"], "/lie_poisson"));
  return multivec::tensor_from_json<multivec::Variance::Contravariant, 2>(field(doc, "pi"), n, "/pi");
}

std::vector<exactlin::Scalar> doc_point(const json& doc, std::size_t n) {
  const json& p = field(doc, "point");
  if (!p.is_array() || p.size() != n) throw Error(ErrorCode::Schema, "'point' needs n_vars scalars", "/point");
  std::vector<exactlin::Scalar> x;
  for (std::size_t k = 0; k < n; ++k) x.push_back(exactlin::scalar_from_json(p[k], "/point/" + std::to_string(k)));
  return x;
}

json run_poisson(const std::string& verb, const json& doc) {
  const std::size_t n = doc_n_vars(doc);
  const auto pi = doc_pi(doc, n);
  if (verb == "bracket") {
    const auto f = multivec::poly_from_json(field(doc, "f"), n, "/f");
    const auto g = multivec::poly_from_json(field(doc, "g"), n, "/g");
    return {{"bracket", multivec::to_json(multivec::poisson_bracket(f, g, pi))}};
  }
  if (verb == "jacobi") {
    const auto r = multivec::jacobi_check(pi);
    return {{"poisson", r.holds}, {"schouten_square", multivec::to_json(r.residual)}};
  }
  if (verb == "twisted") {
    const auto phi = doc.contains("phi") ? multivec::tensor_from_json<multivec::Variance::Covariant, 3>(doc["phi"], n, "/phi")
                                         : multivec::PolyThreeForm(n);
    const auto r = multivec::twisted_poisson_check(pi, phi);
    const auto c = multivec::graph_closure_check(pi, phi);
    return {{"twisted_poisson", r.holds},
            {"residual", multivec::to_json(r.residual)},
            {"graph_closed", c.closed},
            {"checks_agree", r.holds == c.closed}};
  }
  if (verb == "gauge-at") {
    const auto b = multivec::tensor_from_json<multivec::Variance::Covariant, 2>(field(doc, "b"), n, "/b");
    const auto x = doc_point(doc, n);
    const auto m = multivec::gauge_bivector_at(pi, b, x);
    if (!m) return {{"defined", false}, {"reason", "1 + B pi is singular at the point"}};
    return {{"defined", true}, {"pi", exactlin::to_json(*m)}};
  }
  if (verb == "leaf-rank") return {{"rank", multivec::leaf_rank(pi, doc_point(doc, n))}};
  throw Error(ErrorCode::Usage, "unknown poisson verb '" + verb + "'");
}

// ---- torus -----------------------------------------------------------------

json run_torus(const std::string& verb, const json& doc, const Config& cfg) {
  using namespace nctorus;
  const SkewParam pi = skew_param_from_json(doc, "");
  if (verb == "product") {
    const auto f = torus_element_from_json(field(doc, "f"), "/f");
    const auto g = torus_element_from_json(field(doc, "g"), "/g");
    double hbar = 1;
    if (doc.contains("hbar")) {
      if (!doc["hbar"].is_number()) throw Error(ErrorCode::Schema, "'hbar' must be a number", "/hbar");
      hbar = doc["hbar"].get<double>();
    }
    return {{"product", to_json(twisted_product(f, g, pi, hbar))}};
  }
  if (verb == "relations") {
    const auto r = generator_relation_check(pi, cfg.tol("relation"));
    return {{"passed", r.passed}, {"max_deviation", r.max_deviation}, {"worst", {r.worst_j, r.worst_k}},
            {"tolerance", cfg.tol("relation")}};
  }
  if (verb == "orbit") {
    const SkewParam target = skew_param_from_json(field(doc, "target"), "/target");
    std::size_t depth = cfg.cap("orbit_depth");
    if (doc.contains("depth")) {
      if (!doc["depth"].is_number_unsigned()) throw Error(ErrorCode::Schema, "'depth' must be a count", "/depth");
      depth = doc["depth"].get<std::size_t>();
    }
    const auto r = orbit_bfs(pi, target, depth, cfg.cap("orbit_nodes"));
    json out = {{"status", r.status == OrbitStatus::Equivalent ? "equivalent" : "unknown"},
                {"visited", r.visited},
                {"capped", r.capped},
                {"depth", depth}};
    if (r.status == OrbitStatus::Equivalent) {
      out["word"] = r.word;
      const auto end = replay(pi, r.word);
      out["replay_matches"] = end.has_value() && end->matches(target);
    }
    return out;
  }
  throw Error(ErrorCode::Usage, "unknown torus verb '" + verb + "'");
}

json run_decide2(const std::string& t1, const std::string& t2) {
  using namespace nctorus;
  QuadraticScalar a, b;
  try {
    a = QuadraticScalar::parse(t1);
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), "--theta1");
  }
  try {
    b = QuadraticScalar::parse(t2);
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), "--theta2");
  }
  const auto d = n2_decide(a, b);
  return {{"theta1", to_json(a)},
          {"theta2", to_json(b)},
          {"verdict", d.verdict == N2Verdict::Equivalent ? "equivalent" : "inequivalent"},
          {"reason", d.reason}};
}

// ---- tss -------------------------------------------------------------------

tss::TraceParams trace_params(const Config& cfg) {
  tss::TraceParams p;
  p.grid = cfg.cap("grid");
  p.curve_tol = cfg.tol("curve");
  p.gradient_min = cfg.tol("gradient_min");
  return p;
}

json run_tss(const json& doc, const Config& cfg, tss::TSSGraph* graph_out) {
  const auto f = tss::torus_function_from_json(doc, "");
  const auto g = tss::build_graph(f, trace_params(cfg));
  if (graph_out) *graph_out = g;
  json out = {{"graph", tss::to_json(g)}, {"grid", cfg.cap("grid")}};
  try {
    const auto v = tss::regularized_volume(f, tss::default_eps_sequence(), cfg.cap("volume_grid"), cfg.tol("volume"));
    out["volume"] = {{"value", v.value}, {"regularization", v.regularization}};
  } catch (const Error& e) {
    out["volume"] = {{"error", {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}}}};
  }
  return out;
}

json run_tss_compare(const json& a, const json& b, const Config& cfg) {
  const auto g1 = tss::build_graph(tss::torus_function_from_json(a, "/first"), trace_params(cfg));
  const auto g2 = tss::build_graph(tss::torus_function_from_json(b, "/second"), trace_params(cfg));
  json out = tss::to_json(tss::graphs_isomorphic(g1, g2, cfg.tol("period")));
  out["period_tolerance"] = cfg.tol("period");
  return out;
}

// ---- finite ----------------------------------------------------------------

json run_finite(const std::string& group, std::istream& in, const Config& cfg) {
  morita::FiniteGroup g;
  if (group == "-" || std::filesystem::is_regular_file(group))
    g = morita::group_from_json(read_json(group, in), "");
  else
    g = morita::FiniteGroup::preset(group);
  auto ptr = std::make_shared<const morita::FiniteGroup>(std::move(g));
  json out = morita::to_json(morita::picard_group(ptr, cfg.cap("picard_order")));
  out["group"] = {{"name", ptr->name()}, {"order", ptr->order()}};
  return out;
}

// ---- output ----------------------------------------------------------------

void write_text(const json& j, std::ostream& out, const std::string& prefix = "") {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_object()) {
        write_text(v, out, prefix + k + ".");
      } else {
        out << prefix << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else {
    out << prefix << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const json& result, const Config& cfg, std::ostream& out) {
  if (cfg.output_format == "text")
    write_text(result, out);
  else
    out << result.dump(2) << "\n";
}

int report(const Error& e, std::ostream& out, std::ostream& err) {
  const json j = {{"error", {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}, {"path", e.path()}}}};
  out << j.dump(2) << "\n";
  err << "poissonkit: " << error_code_name(e.code()) << ": " << e.what();
  if (!e.path().empty()) err << " (at " << e.path() << ")";
  err << "\n";
  return e.code() == ErrorCode::DomainRejection ? 2 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Poisson, Dirac and Morita computations"};
  app.name("poissonkit");
  app.require_subcommand(1);

  std::string config_path;
  std::string format;
  std::uint64_t seed = 0;
  std::vector<std::string> tols;
  app.add_option("--config", config_path, "JSON config file (default: $POISSONKIT_CONFIG)");
  auto* format_opt = app.add_option("--format", format, "json, dot or text");
  auto* seed_opt = app.add_option("--seed", seed, "seed for randomized suites");
  app.add_option("--tol", tols, "NAME=VAL tolerance override (repeatable)");

  auto* dirac_cmd = app.add_subcommand("dirac", "linear Dirac structures");
  std::string dirac_op, dirac_file;
  dirac_cmd->add_option("op", dirac_op, "from-bivector|from-two-form|from-pair|to-pair|gauge|range|kernel|certify")
      ->required();
  dirac_cmd->add_option("file", dirac_file, "input JSON, - for stdin")->required();

  auto* poisson_cmd = app.add_subcommand("poisson", "polynomial Poisson structures");
  std::string poisson_verb, poisson_file;
  poisson_cmd->add_option("verb", poisson_verb, "bracket|jacobi|twisted|gauge-at|leaf-rank")->required();
  poisson_cmd->add_option("file", poisson_file, "input JSON, - for stdin")->required();

  auto* torus_cmd = app.add_subcommand("torus", "quantum tori and the SO(n,n|Z) action");
  std::string torus_verb, torus_file, theta1, theta2;
  torus_cmd->add_option("verb", torus_verb, "product|relations|orbit|decide2")->required();
  torus_cmd->add_option("file", torus_file, "input JSON, - for stdin (not used by decide2)");
  torus_cmd->add_option("--theta1", theta1, "first parameter for decide2, e.g. sqrt2");
  torus_cmd->add_option("--theta2", theta2, "second parameter for decide2, e.g. 1+sqrt2");

  auto* tss_cmd = app.add_subcommand("tss", "topologically stable structures on the 2-torus");
  std::string tss_file;
  std::size_t grid = 0;
  double curve_tol = 0, period_tol = 0;
  tss_cmd->add_option("file", tss_file, "Fourier coefficients JSON, - for stdin");
  auto* grid_opt = tss_cmd->add_option("--grid", grid, "marching-squares grid size");
  auto* curve_opt = tss_cmd->add_option("--curve-tol", curve_tol, "root polishing tolerance");
  auto* period_opt = tss_cmd->add_option("--period-tol", period_tol, "period label comparison tolerance");
  auto* compare_cmd = tss_cmd->add_subcommand("compare", "Morita verdict for two structures");
  std::string cmp1, cmp2;
  compare_cmd->add_option("first", cmp1)->required();
  compare_cmd->add_option("second", cmp2)->required();

  auto* finite_cmd = app.add_subcommand("finite", "Picard group of a finite group");
  std::string group;
  finite_cmd->add_option("group", group, "preset (cyclic:n, dihedral:n, s3, q8, klein, AxB) or JSON file")->required();

  auto* selftest_cmd = app.add_subcommand("selftest", "run the invariant battery");

  for (auto* sub : {dirac_cmd, poisson_cmd, torus_cmd, tss_cmd, finite_cmd, selftest_cmd}) sub->fallthrough();
  compare_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    return report(Error(ErrorCode::Usage, e.what()), out, err);
  }

  Config cfg;
  try {
    cfg = load_config(config_path.empty() ? std::nullopt : std::optional<std::string>(config_path));
    if (*format_opt) cfg.set_format(format, "--format");
    if (*seed_opt) cfg.seed = seed;
    for (const auto& t : tols) cfg.apply_tol_flag(t);
    if (*grid_opt) cfg.set_cap("grid", grid, "--grid");
    if (*curve_opt) cfg.set_tolerance("curve", curve_tol, "--curve-tol");
    if (*period_opt) cfg.set_tolerance("period", period_tol, "--period-tol");
  } catch (const Error& e) {
    return report(e, out, err);
  }

  try {
    if (cfg.output_format == "dot" && !tss_cmd->parsed())
      throw Error(ErrorCode::Config, "dot output is only available for tss", "--format");
    if (dirac_cmd->parsed()) {
      emit(run_dirac(dirac_op, read_json(dirac_file, in)), cfg, out);
    } else if (poisson_cmd->parsed()) {
      emit(run_poisson(poisson_verb, read_json(poisson_file, in)), cfg, out);
    } else if (torus_cmd->parsed()) {
      if (torus_verb == "decide2") {
        if (theta1.empty() || theta2.empty()) throw Error(ErrorCode::Usage, "decide2 needs --theta1 and --theta2");
        const json r = run_decide2(theta1, theta2);
        if (cfg.output_format == "text")
          out << r["verdict"].get<std::string>() << "\n" << r["reason"].get<std::string>() << "\n";
        else
          emit(r, cfg, out);
      } else {
        if (torus_file.empty()) throw Error(ErrorCode::Usage, "torus " + torus_verb + " needs an input file");
        emit(run_torus(torus_verb, read_json(torus_file, in), cfg), cfg, out);
      }
    } else if (compare_cmd->parsed()) {
      if (cmp1 == "-" && cmp2 == "-") throw Error(ErrorCode::Usage, "only one input can come from stdin");
      const json a = read_json(cmp1, in), b = read_json(cmp2, in);
      if (cfg.output_format == "dot") throw Error(ErrorCode::Config, "tss compare has no dot output", "--format");
      emit(run_tss_compare(a, b, cfg), cfg, out);
    } else if (tss_cmd->parsed()) {
      if (tss_file.empty()) throw Error(ErrorCode::Usage, "tss needs an input file");
      tss::TSSGraph g;
      const json r = run_tss(read_json(tss_file, in), cfg, &g);
      if (cfg.output_format == "dot")
        out << tss::to_dot(g);
      else
        emit(r, cfg, out);
    } else if (finite_cmd->parsed()) {
      emit(run_finite(group, in, cfg), cfg, out);
    } else if (selftest_cmd->parsed()) {
      const auto rows = selftest(cfg);
      bool all = true;
      for (const auto& r : rows) all = all && r.passed;
      if (cfg.output_format == "text") {
        std::size_t w1 = 5, w2 = 5;
        for (const auto& r : rows) {
          w1 = std::max(w1, r.suite.size());
          w2 = std::max(w2, r.check.size());
        }
        for (const auto& r : rows) {
          out << r.suite << std::string(w1 + 2 - r.suite.size(), ' ') << r.check << std::string(w2 + 2 - r.check.size(), ' ')
              << (r.passed ? "PASS" : "FAIL");
          if (!r.detail.empty()) out << "  " << r.detail;
          out << "\n";
        }
        out << (all ? "all checks passed" : "some checks FAILED") << "\n";
      } else {
        json suites = json::object();
        for (const auto& r : rows) suites[r.suite][r.check] = {{"passed", r.passed}, {"detail", r.detail}};
        emit({{"seed", cfg.seed}, {"suites", suites}, {"passed", all}}, cfg, out);
      }
      return all ? 0 : 1;
    }
  } catch (const Error& e) {
    return report(e, out, err);
  } catch (const std::exception& e) {
    out << json{{"error", {{"code", "internal_error"}, {"message", e.what()}, {"path", ""}}}}.dump(2) << "\n";
    err << "poissonkit: internal_error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace poissonkit::cli
