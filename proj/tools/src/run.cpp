#include "momentkit/cli/run.hpp"

#include "momentkit/cli/instance.hpp"
#include "momentkit/cli/model.hpp"

#include <momentkit/errors.hpp>
#include <momentkit/linalg.hpp>

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

namespace momentkit::cli {

using json = nlohmann::ordered_json;

nlohmann::ordered_json to_json(const RunReport &r)
{
  json j;
  j["schema"] = 1;
  j["command"] = r.command;
  j["passed"] = r.passed;
  json checks = json::array();
  for (const auto &c : r.checks) {
    json cj;
    cj["name"] = c.check;
    cj["passed"] = c.passed;
    json ws = json::array();
    for (const auto &w : c.witnesses)
      ws.push_back(json{{"at", w.at}, {"residual", w.residual}});
    cj["witnesses"] = std::move(ws);
    if (!c.notes.empty())
      cj["notes"] = c.notes;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  for (const auto &[k, v] : r.details.items())
    j[k] = v;
  if (r.seconds)
    j["seconds"] = *r.seconds;
  return j;
}

std::string to_text(const RunReport &r)
{
  std::ostringstream os;
  os << r.command << ": " << (r.passed ? "PASS" : "FAIL") << "\n";
  for (const auto &c : r.checks) {
    os << "  " << std::left << std::setw(20) << c.check << (c.passed ? "pass" : "FAIL") << "\n";
    for (const auto &w : c.witnesses) {
      os << "    at (";
      for (std::size_t i = 0; i < w.at.size(); ++i)
        os << (i ? ", " : "") << w.at[i];
      os << "): " << w.residual << "\n";
    }
  }
  for (const auto &l : r.lines)
    os << l << "\n";
  if (r.seconds)
    os << "time: " << std::fixed << std::setprecision(3) << *r.seconds << " s\n";
  return os.str();
}

namespace {

ModelFile load_model(const std::string &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot read model file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_model(buf.str());
  } catch (const ParseError &e) {
    throw ParseError(e.line(), e.column(), e.message(), path);
  }
}

void add_checks(RunReport &r, const ReportSet &rs)
{
  for (const auto &c : rs.reports)
    r.checks.push_back(c);
}

void finish(RunReport &r)
{
  for (const auto &c : r.checks)
    if (!c.passed)
      r.passed = false;
}

json lifts_json(const Ring &ring, const std::vector<TPoly> &values)
{
  json j = json::object();
  for (std::size_t i = 0; i < values.size(); ++i)
    j[ring.name(i)] = values[i].to_string();
  return j;
}

// --- commands --------------------------------------------------------------

RunReport cmd_verify(const ModelFile &m)
{
  RunReport r{"verify"};
  if (require_order(m) == 0) {
    // A bare Poisson structure: only the Jacobi identity applies.
    r.checks.push_back(verify_jacobi(structure_of(m)));
    finish(r);
    return r;
  }
  const MomentSystem ms = system_of(m);
  add_checks(r, verify_system(ms));
  r.checks.push_back(verify_tot_jacobi(ms.line()));
  r.checks.push_back(verify_gm_hamiltonian(ms));
  finish(r);
  return r;
}

RunReport cmd_trivialize(const ModelFile &m)
{
  RunReport r{"trivialize"};
  const MomentSystem ms = system_of(m);
  ReportSet rs = verify_system(ms);
  if (!rs.passed()) {
    add_checks(r, rs);
    finish(r);
    r.lines.push_back("system fails verification; no lifts computed");
    return r;
  }
  TrivializationResult tr = trivialize(ms);
  Report alpha{"alpha_vanishes"}, compat{"poisson_compatible"};
  alpha.passed = tr.alpha_vanishes;
  compat.passed = tr.poisson_compatible;
  for (const auto &w : tr.residuals)
    (w.at.front() == "alpha" ? alpha : compat).witnesses.push_back(w);
  r.checks.push_back(alpha);
  r.checks.push_back(compat);
  r.details["lifts"] = lifts_json(*ms.ring(), tr.lifts);
  for (std::size_t i = 0; i < tr.lifts.size(); ++i)
    r.lines.push_back(ms.ring()->name(i) + "' = " + tr.lifts[i].to_string());
  finish(r);
  return r;
}

RunReport cmd_twist(const ModelFile &m, std::optional<std::uint64_t> seed,
                    const std::string &emit, bool json_mode)
{
  RunReport r{"twist"};
  const MomentSystem ms = system_of(m);
  const GaugeTwist g = seed ? random_twist(*seed, m.ring, ms.order(), 2) : gauge_of(m);
  const MomentSystem out = twist(ms, g);
  ModelFile emitted = model_of(out);
  emitted.conformal = m.conformal;
  emitted.points = m.points;
  const std::string text = render_model(emitted);
  add_checks(r, verify_system(out));

  json tj;
  tj["phi"] = lifts_json(*m.ring, g.phi);
  tj["unit"] = g.unit.to_string();
  r.details["twist"] = std::move(tj);
  r.details["model"] = text;
  if (!emit.empty()) {
    std::ofstream f(emit, std::ios::binary);
    if (!f || !(f << text))
      throw Error("cannot write " + emit);
    r.lines.push_back("wrote " + emit);
  } else if (!json_mode) {
    r.lines.push_back(text.substr(0, text.size() ? text.size() - 1 : 0));
  }
  finish(r);
  return r;
}

RunReport cmd_tot(const ModelFile &m, const std::string &left, const std::string &right)
{
  RunReport r{"tot"};
  const MomentSystem ms = system_of(m);
  auto parse_side = [&](const std::string &flag, const std::string &text) {
    try {
      return parse_tot_expression(text, ms.ring(), ms.order());
    } catch (const ParseError &e) {
      throw ParseError(e.line(), e.column(), e.message(), flag);
    }
  };
  const TotElement u = parse_side("--left", left);
  const TotElement v = parse_side("--right", right);
  const TotElement w = tot_bracket(ms.line(), u, v);
  r.details["left"] = u.to_string();
  r.details["right"] = v.to_string();
  r.details["result"] = w.to_string();
  r.lines.push_back("{" + u.to_string() + ", " + v.to_string() + "} = " + w.to_string());
  return r;
}

RunReport cmd_rank(const ModelFile &m, const std::string &point, const std::string &space)
{
  RunReport r{"rank"};
  const PointSpec *ps = m.find_point(point);
  if (!ps)
    throw Error("unknown point " + point);
  const Point pt = ps->point();
  std::size_t rk = 0, dim = 0;
  Rat pf;
  if (space == "tot") {
    const MomentSystem ms = system_of(m);
    const RatMatrix mat = tot_matrix(ms, pt);
    rk = tot_rank(ms, pt);
    dim = mat.rows();
    pf = pfaffian(mat);
  } else {
    const PoissonStructure p = structure_of(m);
    dim = p.arity();
    RatMatrix mat(dim, dim);
    const Rat t = pt.t.value_or(Rat(0));
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j) {
        mat(i, j) = p.entry(i, j).evaluate(pt.coords, t);
        mat(j, i) = -mat(i, j);
      }
    rk = bivector_rank(p, pt);
    pf = pfaffian(mat);
  }
  r.details["space"] = space;
  r.details["point"] = point;
  r.details["rank"] = rk;
  r.details["dimension"] = dim;
  r.details["pfaffian"] = to_string(pf);
  r.details["nondegenerate"] = rk == dim;
  r.lines.push_back("rank " + std::to_string(rk) + " of " + std::to_string(dim) + " at " +
                    point + " (" + space + "), pfaffian " + to_string(pf));
  return r;
}

RunReport cmd_conformal(const ModelFile &m)
{
  RunReport r{"conformal"};
  const ConformalField cf = conformal_of(m);
  const MomentSystem ms = system_of(m);
  Report base = verify_conformal(ms.structure().reduction(), cf);
  r.checks.push_back(base);
  if (!base.passed) {
    finish(r);
    return r;
  }
  ReportSet rs = verify_system(ms);
  if (!rs.passed()) {
    add_checks(r, rs);
    finish(r);
    return r;
  }
  ConformalExtension ext = extend_conformal(ms, cf.xi, cf.weight);
  r.checks.push_back(ext.conformality);

  r.details["weight"] = to_string(ext.weight);
  r.details["mu"] = ext.mu ? json(to_string(*ext.mu)) : json(nullptr);
  r.details["module_weight"] = ext.module_weight ? json(to_string(*ext.module_weight)) : json(nullptr);
  r.details["h_constant_free"] = ext.h_constant_free;
  json hw = json::array();
  for (const auto &w : ext.h_obstruction)
    hw.push_back(json{{"at", w.at}, {"residual", w.residual}});
  r.details["h_obstruction"] = std::move(hw);
  if (ext.field) {
    json fj = lifts_json(*ms.ring(), ext.field->values());
    fj["t"] = ext.field->t_value().to_string();
    r.details["field"] = std::move(fj);
    for (std::size_t i = 0; i < ms.ring()->arity(); ++i)
      r.lines.push_back(m.conformal->name + "(" + ms.ring()->name(i) +
                        ") = " + ext.field->value(i).to_string());
    r.lines.push_back(m.conformal->name + "(t) = " + ext.field->t_value().to_string());
  }
  r.lines.push_back("mu = " + (ext.mu ? to_string(*ext.mu) : std::string("unsolved")));
  r.lines.push_back(std::string("h constant: ") + (ext.h_constant_free ? "free" : "obstructed"));
  r.passed = ext.success;
  finish(r);
  return r;
}

struct CaseResult {
  std::uint64_t seed = 0;
  std::string base;
  std::size_t generators = 0;
  unsigned order = 0;
  bool parse_roundtrip = false;
  bool system_verified = false;
  bool recovered = false;
  std::string error;
};

CaseResult run_case(std::uint64_t seed)
{
  CaseResult c;
  c.seed = seed;
  try {
    Instance inst = random_instance(seed);
    c.base = catalog()[inst.catalog_index].name;
    c.generators = inst.model.ring->arity();
    c.order = *inst.model.order;
    const ModelFile parsed = parse_model(render_model(inst.model));
    c.parse_roundtrip = parsed == inst.model;
    const MomentSystem ms = system_of(parsed);
    c.system_verified = verify_system(ms).passed();
    if (c.system_verified)
      c.recovered = trivialize(ms).verified();
  } catch (const std::exception &e) {
    c.error = e.what();
  }
  return c;
}

RunReport cmd_roundtrip(std::size_t cases, std::uint64_t seed, unsigned jobs)
{
  RunReport r{"roundtrip"};
  std::vector<CaseResult> results(cases);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < cases;)
      results[i] = run_case(seed + i);
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(cases, 1))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j)
      pool.emplace_back(worker);
    for (auto &t : pool)
      t.join();
  }

  Report parse{"parse_roundtrip"}, system{"system"}, recovery{"recovery"};
  std::size_t recovered = 0;
  json cj = json::array();
  for (const auto &c : results) {
    const std::string s = std::to_string(c.seed);
    if (!c.error.empty()) {
      recovery.fail({"seed " + s}, "error: " + c.error);
    } else {
      if (!c.parse_roundtrip)
        parse.fail({"seed " + s}, "parse(render(model)) differs");
      if (!c.system_verified)
        system.fail({"seed " + s}, "verify_system failed");
      else if (!c.recovered)
        recovery.fail({"seed " + s}, "lifts not recovered");
    }
    recovered += c.recovered ? 1 : 0;
    json one;
    one["seed"] = c.seed;
    one["base"] = c.base;
    one["generators"] = c.generators;
    one["order"] = c.order;
    one["recovered"] = c.recovered;
    cj.push_back(std::move(one));
  }
  r.checks = {parse, system, recovery};
  r.details["cases"] = cases;
  r.details["recovered"] = recovered;
  r.details["results"] = std::move(cj);
  r.lines.push_back(std::to_string(recovered) + "/" + std::to_string(cases) +
                    " exact recoveries");
  finish(r);
  return r;
}

} // namespace

int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Exact verification toolkit for Poisson moment systems", "momentkit"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json_mode = false, timing = false;
  app.add_flag("--json", json_mode, "Print a JSON report");
  app.add_flag("--timing", timing, "Include wall-clock time in the report");

  std::string model_path;
  auto add_model = [&](CLI::App *sub) {
    sub->add_option("model", model_path, "Model file")->required();
  };

  auto *verify = app.add_subcommand("verify", "Check the moment-system axioms");
  add_model(verify);
  auto *triv = app.add_subcommand("trivialize", "Compute lifts with alpha = 0");
  add_model(triv);

  auto *tw = app.add_subcommand("twist", "Apply a gauge twist and print the resulting model");
  add_model(tw);
  std::optional<std::uint64_t> twist_seed;
  std::string emit;
  tw->add_option("--seed", twist_seed, "Draw a random twist from this seed");
  tw->add_option("--emit", emit, "Write the twisted model to FILE");

  auto *tot = app.add_subcommand("tot", "Bracket of two Tot expressions");
  add_model(tot);
  std::string left, right;
  tot->add_option("--left", left, "Left operand, e.g. x*s^2")->required();
  tot->add_option("--right", right, "Right operand")->required();

  auto *rk = app.add_subcommand("rank", "Bivector rank at a named point");
  add_model(rk);
  std::string point, space = "base";
  rk->add_option("--point", point, "Point name")->required();
  rk->add_option("--space", space, "base or tot")
      ->check(CLI::IsMember({"base", "tot"}));

  auto *conf = app.add_subcommand("conformal", "Extend the declared conformal field");
  add_model(conf);

  auto *rt = app.add_subcommand("roundtrip", "Twist/trivialize round trips on random instances");
  std::size_t cases = 100;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  rt->add_option("--cases", cases, "Number of cases");
  rt->add_option("--seed", seed, "First seed");
  rt->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::Success &e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsageError;
  }

  const CLI::App *chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  try {
    if (command == "roundtrip") {
      report = cmd_roundtrip(cases, seed, jobs);
    } else {
      const ModelFile m = load_model(model_path);
      if (command == "verify")
        report = cmd_verify(m);
      else if (command == "trivialize")
        report = cmd_trivialize(m);
      else if (command == "twist")
        report = cmd_twist(m, twist_seed, emit, json_mode);
      else if (command == "tot")
        report = cmd_tot(m, left, right);
      else if (command == "rank")
        report = cmd_rank(m, point, space);
      else
        report = cmd_conformal(m);
    }
  } catch (const std::exception &e) {
    if (json_mode)
      out << json{{"schema", 1}, {"command", command}, {"error", e.what()}}.dump(2) << "\n";
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  if (timing)
    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (json_mode)
    out << to_json(report).dump(2) << "\n";
  else
    out << to_text(report);
  return report.passed ? kSuccess : kVerificationFailed;
}

} // namespace momentkit::cli
