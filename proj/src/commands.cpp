#include "l2h/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "l2h/fw_constructor.hpp"

namespace l2h {
namespace {

using json = nlohmann::ordered_json;

std::string exact(const Rational& x) { return to_string(x); }

json element_json(const Group& g, const GroupRingElement& x) { return format_element(g, x); }

json matrix_json(const Group& g, const GroupRingMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(element_json(g, m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

json presentation_json(const Presentation& p) {
  json rel = json::array();
  for (const auto& r : p.relators) rel.push_back(format_letters(r, p.generator_names()));
  return {{"name", p.name}, {"generators", p.generator_names()}, {"relators", std::move(rel)}};
}

json homology_json(const std::vector<AbelianGroup>& h) {
  json out = json::array();
  for (const auto& a : h) out.push_back(a.to_string());
  return out;
}

json complex_json(const ChainComplex& c) {
  json b = json::array();
  for (std::size_t k = 1; k <= c.top_degree(); ++k)
    b.push_back({{"degree", k}, {"matrix", matrix_json(*c.group, c.boundary(k))}});
  return {{"ranks", c.ranks},
          {"euler_characteristic", c.euler_characteristic()},
          {"cell_labels", c.cell_labels},
          {"boundaries", std::move(b)}};
}

json certificate_json(const SpectralCertificate& c, bool timing) {
  json j = {{"degree", c.degree},
            {"status", status_name(c.status)},
            {"gap_lower", c.gap_lower ? json(exact(*c.gap_lower)) : json(nullptr)},
            {"gap_lower_approx", c.gap_lower ? json(c.gap_lower->get_d()) : json(nullptr)},
            {"lambda_min_upper", exact(c.lambda_min_upper)},
            {"method", c.method},
            {"profile", c.profile},
            {"shift", exact(c.c)},
            {"norm_upper", exact(c.norm_upper)},
            {"power", c.n},
            {"radius", c.radius},
            {"lambda_max_upper", exact(c.lambda_max_upper)},
            {"lambda_min_approx", c.lambda_min_approx},
            {"lambda_max_approx", c.lambda_max_approx},
            {"solver", c.solver},
            {"notes", c.notes}};
  j["runtime_ms"] = timing ? c.runtime_ms : 0;
  return j;
}

json estimate_json(const LuckEstimate& e) {
  return {{"degree", e.degree},
          {"betti", e.betti},
          {"order", e.quotient_order},
          {"value", exact(e.value)},
          {"value_approx", e.value.get_d()},
          {"rank_method", e.rank_method}};
}

json quotient_json(const FiniteQuotient& q) {
  return {{"label", q.label}, {"order", q.order}, {"points", q.m}, {"transitive", q.transitive}};
}

SpectralBudget budget_of(const RunConfig& c) {
  SpectralBudget b;
  b.max_power = c.max_power;
  b.max_radius = c.max_radius;
  b.epsilon_zero = c.epsilon_zero;
  b.record_timing = c.timing;
  if (c.support_cap) b.limits.support_cap = *c.support_cap;
  return b;
}

std::string read_input(const RunConfig& c) {
  if (c.input_path.empty()) return c.input_text;
  std::ifstream in(c.input_path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot read " + c.input_path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Context {
  const RunConfig& config;
  Presentation p;
  GroupPtr g;
  std::ostringstream summary;
  int exit_code = exit_ok;
};

std::pair<std::size_t, std::size_t> degree_range(const Context& ctx, std::size_t top) {
  auto r = ctx.config.degrees.value_or(std::make_pair<std::size_t, std::size_t>(0, std::size_t(top)));
  if (r.second > top)
    throw Error(ErrorCode::degree_out_of_range,
                "degree " + std::to_string(r.second) + " above the complex (top " + std::to_string(top) + ")");
  return r;
}

json cmd_parse(Context& ctx) {
  ctx.summary << ctx.p.name << ": " << ctx.p.generators.size() << " generators, " << ctx.p.relators.size()
              << " relators, " << group_kind_name(ctx.g->kind()) << "\n";
  return {{"presentation", presentation_json(ctx.p)},
          {"canonical", format_presentation(ctx.p)},
          {"group", {{"kind", group_kind_name(ctx.g->kind())}, {"generators", ctx.g->num_generators()}}}};
}

json cmd_complex(Context& ctx) {
  ChainComplex c = wedge_spheres(presentation_complex(ctx.p, ctx.g), ctx.config.wedge_count);
  verify_complex(c);
  json fox = json::array();
  for (std::size_t r = 0; r < ctx.p.relators.size(); ++r) fox.push_back(fundamental_formula_holds(ctx.p, r));
  auto h = integral_homology(c);
  ctx.summary << "ranks";
  for (auto r : c.ranks) ctx.summary << " " << r;
  ctx.summary << ", Euler characteristic " << c.euler_characteristic() << "\n";
  return {{"complex", complex_json(c)},
          {"checks", {{"boundary_square_zero", true}, {"fundamental_formula", std::move(fox)}}},
          {"integral_homology", homology_json(h)}};
}

json cmd_certify(Context& ctx) {
  ChainComplex c = wedge_spheres(presentation_complex(ctx.p, ctx.g), ctx.config.wedge_count);
  auto [lo, hi] = degree_range(ctx, c.top_degree());
  SpectralBudget budget = budget_of(ctx.config);
  json certs = json::array();
  bool all_certified = true;
  for (std::size_t k = lo; k <= hi; ++k) {
    LaplacianOperator lap = laplacian(c, k, budget.limits);
    SpectralCertificate cert = certify_gap(*ctx.g, lap.matrix, ctx.config.method, budget, k);
    all_certified = all_certified && cert.status == CertificateStatus::certified_invertible;
    ctx.summary << "degree " << k << ": " << status_name(cert.status);
    if (cert.gap_lower) ctx.summary << ", gap >= " << cert.gap_lower->get_d() << " (" << cert.method << ")";
    ctx.summary << ", lambda_min <= " << cert.lambda_min_upper.get_d() << "\n";
    certs.push_back(certificate_json(cert, ctx.config.timing));
  }
  if (!all_certified && ctx.config.require_certified) ctx.exit_code = exit_inconclusive;
  return {{"degrees", {lo, hi}}, {"certificates", std::move(certs)}};
}

json estimates_table(const ChainComplex& c, const std::vector<FiniteQuotient>& qs, std::ostringstream& summary) {
  json out = json::array();
  for (const auto& q : qs) {
    auto est = luck_estimates(c, q);
    json e = json::array();
    summary << q.label << " (order " << q.order << "):";
    for (const auto& x : est) {
      e.push_back(estimate_json(x));
      summary << " " << exact(x.value);
    }
    summary << "\n";
    out.push_back({{"quotient", quotient_json(q)}, {"estimates", std::move(e)}});
  }
  return out;
}

json cmd_betti(Context& ctx) {
  ChainComplex c = wedge_spheres(presentation_complex(ctx.p, ctx.g), ctx.config.wedge_count);
  QuotientOptions opts;
  opts.budget = ctx.config.quotients;
  opts.seed = ctx.config.seed;
  auto chain = nested_cyclic_chain(ctx.p, ctx.g, ctx.config.quotients, 2);
  auto library = quotient_library(ctx.p, ctx.g, opts);
  return {{"chain", estimates_table(c, chain, ctx.summary)}, {"library", estimates_table(c, library, ctx.summary)}};
}

json cmd_hopf(Context& ctx) {
  ChainComplex c = presentation_complex(ctx.p, ctx.g);
  QuotientOptions opts;
  opts.budget = std::max<std::size_t>(1, ctx.config.quotients);
  opts.seed = ctx.config.seed;
  auto library = quotient_library(ctx.p, ctx.g, opts);
  if (library.empty()) throw Error(ErrorCode::unsupported_group, "no finite quotient for the coefficient module");
  CoefficientModule v = regular_module(library.front());
  HopfReport r = hopf_check(c, v, ctx.config.max_radius);
  ctx.summary << "image " << r.image_dim << ", H_2(Z,V) " << r.dim_h2_z << ", H_2(G,V) "
              << (r.dim_h2_g ? std::to_string(*r.dim_h2_g) : std::string("n/a")) << ": "
              << (r.passed ? "passed" : "failed") << "\n";
  return {{"module", v.description},
          {"quotient", quotient_json(library.front())},
          {"image_dim", r.image_dim},
          {"dim_h2_g", r.dim_h2_g ? json(*r.dim_h2_g) : json(nullptr)},
          {"dim_h2_z", r.dim_h2_z},
          {"kernel_generators", r.kernel_generators},
          {"kernel_search", r.kernel_search},
          {"resolution", r.resolution},
          {"exact", r.exact},
          {"surjective", r.surjective},
          {"kernel_search_inconclusive", r.kernel_search_inconclusive},
          {"passed", r.passed}};
}

json hypothesis_json(const HypothesisReport& h, bool timing) {
  json degrees = json::array();
  for (const auto& d : h.degrees) {
    json est = json::array();
    for (const auto& e : d.estimates) est.push_back(estimate_json(e));
    degrees.push_back({{"degree", d.degree},
                       {"verdict", d.verdict},
                       {"reason", d.reason},
                       {"complex", d.complex},
                       {"certificate", d.certificate ? certificate_json(*d.certificate, timing) : json(nullptr)},
                       {"estimates", std::move(est)}});
  }
  return {{"verdict", verdict_name(h.verdict)},
          {"violating_degree", h.violating_degree ? json(*h.violating_degree) : json(nullptr)},
          {"quotients", h.quotient_labels},
          {"degrees", std::move(degrees)}};
}

json cmd_construct(Context& ctx) {
  ConstructionParams params;
  params.wedge_count = ctx.config.wedge_count;
  params.quotients = std::max<std::size_t>(3, ctx.config.quotients);
  params.method = ctx.config.method;
  params.budget = budget_of(ctx.config);
  params.high_budget.record_timing = ctx.config.timing;
  params.force = ctx.config.force;
  ConstructionRecord rec = construct(ctx.p, ctx.g, params);

  const bool timing = ctx.config.timing;
  json out = {{"status", rec.status}, {"hypothesis", hypothesis_json(rec.hypothesis, timing)}, {"notes", rec.notes}};
  ctx.summary << "hypothesis: " << verdict_name(rec.hypothesis.verdict) << "\n";
  for (const auto& d : rec.hypothesis.degrees)
    ctx.summary << "  degree " << d.degree << ": " << d.verdict << " (" << d.reason << ")\n";
  if (rec.status != "Constructed") {
    ctx.exit_code = exit_hypothesis;
    return out;
  }

  json cycles = json::array();
  for (auto i : rec.selection.indices) {
    const auto& k = rec.candidates[i];
    json col = json::array();
    for (const auto& e : k.column) col.push_back(element_json(*ctx.g, e));
    cycles.push_back({{"candidate", i}, {"support", k.support}, {"scalar", exact(k.scalar)}, {"boundary", std::move(col)}});
  }
  json diag = json::array();
  for (const auto& d : rec.selection.diagnostics)
    diag.push_back({{"label", d.label},
                    {"order", d.order},
                    {"domain", d.domain},
                    {"rank", d.rank},
                    {"kernel_dim", d.kernel_dim},
                    {"cokernel", d.cokernel},
                    {"defect", d.defect},
                    {"rank_method", d.rank_method}});
  json table = json::array();
  for (const auto& row : rec.betti_table) {
    json norm = json::array();
    for (const auto& v : row.normalized) norm.push_back(exact(v));
    table.push_back({{"label", row.label},
                     {"order", row.order},
                     {"before", row.before},
                     {"after", row.after},
                     {"normalized", std::move(norm)},
                     {"rank_method", row.rank_method}});
  }
  json certs = json::array();
  bool all_certified = true;
  for (const auto& c : rec.certificates) {
    certs.push_back(certificate_json(c, timing));
    all_certified = all_certified && c.status == CertificateStatus::certified_invertible;
  }
  out["wedge_count"] = rec.wedge_count;
  out["support_radius"] = rec.support_radius;
  out["candidates"] = rec.candidates.size();
  out["selection"] = {{"considered", rec.selection.considered},
                      {"selected", rec.selection.indices.size()},
                      {"cycles", std::move(cycles)},
                      {"diagnostics", std::move(diag)}};
  out["complex"] = complex_json(rec.complex);
  out["certificates"] = std::move(certs);
  out["betti_table"] = std::move(table);
  out["integral_homology"] = homology_json(rec.integral_homology);
  out["checks"] = {{"boundary_square_zero", rec.boundary_square_zero},
                   {"low_degrees_unchanged", rec.low_degrees_unchanged},
                   {"betti_trend", rec.betti_trend_ok}};
  out["evidence_grade"] = all_certified ? "certified" : "evidence";

  ctx.summary << "attached " << rec.selection.indices.size() << " of " << rec.candidates.size()
              << " kernel cycles (L=" << rec.support_radius << ")\n";
  for (const auto& row : rec.betti_table) {
    ctx.summary << "  " << row.label << ":";
    for (const auto& v : row.normalized) ctx.summary << " " << exact(v);
    ctx.summary << "\n";
  }
  ctx.summary << "checks: b^2=0 " << rec.boundary_square_zero << ", low degrees " << rec.low_degrees_unchanged
              << ", trend " << rec.betti_trend_ok << "\n";
  if (ctx.config.require_certified && !all_certified) ctx.exit_code = exit_inconclusive;
  return out;
}

json config_json(const RunConfig& c) {
  json j = {{"max_power", c.max_power},
            {"max_radius", c.max_radius},
            {"quotients", c.quotients},
            {"method", method_name(c.method)},
            {"epsilon_zero", exact(c.epsilon_zero)},
            {"wedge_count", c.wedge_count},
            {"require_certified", c.require_certified},
            {"force", c.force}};
  j["degrees"] = c.degrees ? json({c.degrees->first, c.degrees->second}) : json(nullptr);
  j["support_cap"] = c.support_cap ? json(*c.support_cap) : json(nullptr);
  return j;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ok: return exit_ok;
    case ErrorCode::syntax:
    case ErrorCode::unknown_generator:
    case ErrorCode::duplicate_generator: return exit_parse;
    case ErrorCode::hypothesis_not_satisfied: return exit_hypothesis;
    case ErrorCode::support_cap_exceeded:
    case ErrorCode::ball_too_large: return exit_resource;
    default: return exit_failure;
  }
}

std::pair<std::size_t, std::size_t> parse_degree_range(const std::string& text) {
  auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorCode::invalid_argument, "bad degree range '" + text + "'");
    return static_cast<std::size_t>(std::stoul(s));
  };
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    auto d = number(text);
    return {d, d};
  }
  auto lo = number(text.substr(0, dots)), hi = number(text.substr(dots + 2));
  if (lo > hi) throw Error(ErrorCode::invalid_argument, "empty degree range '" + text + "'");
  return {lo, hi};
}

void validate(const RunConfig& c) {
  static const char* const commands[] = {"parse", "complex", "certify", "betti", "hopf", "construct"};
  if (std::find(std::begin(commands), std::end(commands), c.command) == std::end(commands))
    throw Error(ErrorCode::invalid_argument, "unknown command '" + c.command + "'");
  if (c.max_power == 0) throw Error(ErrorCode::invalid_argument, "max power must be positive");
  if (c.quotients == 0) throw Error(ErrorCode::invalid_argument, "quotient budget must be positive");
  if (c.epsilon_zero <= 0) throw Error(ErrorCode::invalid_argument, "epsilon_zero must be positive");
  if (c.support_cap && *c.support_cap == 0) throw Error(ErrorCode::invalid_argument, "support cap must be positive");
  if (c.degrees && c.degrees->first > c.degrees->second) throw Error(ErrorCode::invalid_argument, "empty degree range");
}

RunResult run_command(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  json report = {{"tool", "l2h"}, {"format", 1}, {"command", config.command}, {"input", config.input_path},
                 {"seed", config.seed}, {"config", config_json(config)}};
  RunResult out;
  Context ctx{config, {}, {}, {}, exit_ok};
  try {
    validate(config);
    ctx.p = parse_presentation(read_input(config));
    ctx.g = infer_group(ctx.p);
    report["group"] = {{"name", ctx.p.name}, {"kind", group_kind_name(ctx.g->kind())}};
    json result;
    if (config.command == "parse") result = cmd_parse(ctx);
    else if (config.command == "complex") result = cmd_complex(ctx);
    else if (config.command == "certify") result = cmd_certify(ctx);
    else if (config.command == "betti") result = cmd_betti(ctx);
    else if (config.command == "hopf") result = cmd_hopf(ctx);
    else result = cmd_construct(ctx);
    report["status"] = "ok";
    report["result"] = std::move(result);
    out.exit_code = ctx.exit_code;
  } catch (const Error& e) {
    report["status"] = "error";
    report["error"] = {{"code", error_code_name(e.code())}, {"message", e.what()}};
    out.exit_code = exit_code_for(e.code());
    ctx.summary << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
  } catch (const std::exception& e) {
    report["status"] = "error";
    report["error"] = {{"code", "Internal"}, {"message", e.what()}};
    out.exit_code = exit_failure;
    ctx.summary << "error: " << e.what() << "\n";
  }
  report["exit_code"] = out.exit_code;
  std::int64_t ms = 0;
  if (config.timing)
    ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  report["runtime_ms"] = ms;
  out.json = report.dump(2) + "\n";
  out.summary = ctx.summary.str();
  return out;
}

}  // namespace l2h
