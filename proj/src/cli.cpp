#include "xishift/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include "xishift/characters.hpp"
#include "xishift/io.hpp"
#include "xishift/selftest.hpp"
#include "xishift/stats.hpp"
#include "xishift/zeros.hpp"

namespace xishift {

namespace {

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  std::string out_dir = "xishift-out";
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config_path, "key=value config file ('#' comments)")->check(CLI::ExistingFile);
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_option("--jobs", c.jobs, "worker threads for interval-parallel scans")->check(CLI::Range(1, 1024));
  sub->add_option("--out", c.out_dir, "output directory");
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  RunConfig cfg;
  std::filesystem::path out;
  RunManifest manifest;
};

Context make_context(const Common& c, std::vector<std::string> argv) {
  RunConfig cfg;
  if (!c.config_path.empty()) {
    try {
      cfg.apply_file(c.config_path);
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
  }
  if (c.seed) {
    cfg.seed = *c.seed;
    cfg.structure.seed = *c.seed;
  }
  cfg.search.jobs = c.jobs;
  Context ctx{cfg, c.out_dir, RunManifest(std::move(argv), cfg)};
  if (!c.config_path.empty()) ctx.manifest.add_input(c.config_path);
  return ctx;
}

LFunctionTarget target_or_usage(const std::string& spec, const EvalConfig& eval) {
  try {
    return LFunctionTarget::parse(spec, eval);
  } catch (const DomainError& e) {
    throw UsageError(std::string("bad --target: ") + e.what());
  }
}

std::string csv_of(const ZeroList& z) {
  std::ostringstream os;
  write_zero_csv(os, z);
  return os.str();
}

bool records_ok(const ZeroList& z, const ZeroSearchOptions& so) {
  for (const auto& r : z.records)
    if (!(r.residual <= so.residual_tol) || !(r.bracket_width <= so.bracket_width) || r.multiplicity_suspect) return false;
  return !z.certificate || z.certificate->complete();
}

int cmd_zeros(Context& ctx, double h, double theta, double t_lo, double T, const std::string& target_spec,
              const std::string& tag, std::ostream& out) {
  if (h == 0.0)
    throw UsageError("the phase method needs h != 0; for h = 0 use `xishift scan --target " + target_spec + " --T " +
                     std::to_string(T) + "`");
  const auto target = target_or_usage(target_spec, ctx.cfg.eval);
  const DeformationParams p(h, theta);
  ctx.manifest.flag_regime(p.regime());
  const PhaseGrid grid = scan_phase(p, target, t_lo, T, ctx.cfg.eval, ctx.cfg.search);
  bool ok = true;
  std::vector<ZeroList> lists;
  for (FunctionTag t : {FunctionTag::A, FunctionTag::B}) {
    if (tag != "both" && parse_tag(tag) != t) continue;
    lists.push_back(zeros_from_grid(grid, t, ctx.cfg.search));
    const ZeroList& z = lists.back();
    ctx.manifest.write_output(ctx.out, "zeros_" + to_string(t) + ".csv", csv_of(z));
    ctx.manifest.note("zeros_" + to_string(t), z.summary_json());
    ok = ok && records_ok(z, ctx.cfg.search);
    out << to_string(t) << ": " << z.records.size() << " zeros on [" << t_lo << ", " << T << "], certificate "
        << z.certificate->found_count << "/" << z.certificate->phase_increment_count << '\n';
  }
  if (lists.size() == 2) {
    const InterlacingReport il = verify_interlacing(lists[0], lists[1], ctx.cfg.search.deriv_tol);
    ctx.manifest.write_output(ctx.out, "interlacing.json", il.to_json().dump(2) + "\n");
    ok = ok && il.pass();
    out << "interlacing: " << (il.strict() ? "strict" : "violated") << " (" << il.phasing << "), "
        << il.violations.size() << " violations, simple=" << (il.simple() ? "yes" : "no") << '\n';
  }
  out << "regime: " << to_string(p.regime()) << '\n';
  return ok ? kExitOk : kExitVerification;
}

int cmd_scan(Context& ctx, double t_lo, double T, const std::string& target_spec, double step, bool cross_check,
             std::ostream& out) {
  const auto target = target_or_usage(target_spec, ctx.cfg.eval);
  ctx.manifest.flag_regime(Regime::undeformed);
  ZeroList z = locate_zeros_scan(critical_line_function(target, ctx.cfg.eval), t_lo, T, step, ctx.cfg.search);
  z.target = target.spec();
  ctx.manifest.write_output(ctx.out, "zeros.csv", csv_of(z));
  ctx.manifest.note("zeros", z.summary_json());
  out << z.records.size() << " sign changes on [" << t_lo << ", " << T << "]\n";
  if (!cross_check) return kExitOk;
  const auto f = [target, eval = ctx.cfg.eval](cplx s) { return completed(s, target, eval).value(); };
  const WindingResult w = argument_principle(f, Rect{-0.5, 1.5, t_lo, T}, ctx.cfg.contour);
  const std::int64_t inside = z.count_between(w.contour.im_lo, w.contour.im_hi);
  ctx.manifest.note("argument_principle", {{"count", w.count}, {"raw", w.raw}, {"contour", w.contour.to_json()}});
  out << "argument principle: " << w.count << " zeros in the rectangle, scan found " << inside << '\n';
  return w.count == inside ? kExitOk : kExitVerification;
}

int cmd_count(Context& ctx, double h, double theta, double T, const std::string& target_spec, const std::string& tag,
              std::ostream& out) {
  if (h == 0.0) throw UsageError("count uses the phase method and needs h != 0");
  const auto target = target_or_usage(target_spec, ctx.cfg.eval);
  const DeformationParams p(h, theta);
  ctx.manifest.flag_regime(p.regime());
  const CountReport c = count_zeros_compare(p, target, T, parse_tag(tag), ctx.cfg.eval, ctx.cfg.search);
  const auto j = c.to_json();
  ctx.manifest.write_output(ctx.out, "count.json", j.dump(2) + "\n");
  out << j.dump(2) << '\n';
  return c.complete ? kExitOk : kExitVerification;
}

int cmd_spacings(Context& ctx, double h, double theta, double T, const std::string& target_spec, std::size_t k,
                 const std::string& refs, const std::string& norm_s, std::size_t bins, std::ostream& out) {
  const auto target = target_or_usage(target_spec, ctx.cfg.eval);
  const DeformationParams p(h, theta);
  ctx.manifest.flag_regime(p.regime());
  ZeroList z;
  if (h == 0.0) {
    z = locate_zeros_scan(critical_line_function(target, ctx.cfg.eval), 0.01, T, ctx.cfg.scan_step, ctx.cfg.search);
    z.target = target.spec();
  } else {
    z = locate_zeros_phase(p, target, 0.0, T, FunctionTag::A, ctx.cfg.eval, ctx.cfg.search);
  }
  const Normalization norm = parse_normalization(norm_s);
  const auto sp = normalized_spacings(z, norm, T, target.conductor());
  const auto emp = EmpiricalDistribution::from_spacings(sp, T);

  std::ostringstream hist;
  write_histogram_csv(hist, histogram(emp, 0.0, 3.0, bins));
  ctx.manifest.write_output(ctx.out, "histogram.csv", hist.str());

  std::ostringstream vec;
  for (std::size_t j = 1; j <= k; ++j) vec << (j > 1 ? "," : "") << "delta_" << j;
  vec << '\n';
  char buf[32];
  for (const auto& v : consecutive_vectors(sp, k)) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", v[j]);
      vec << (j ? "," : "") << buf;
    }
    vec << '\n';
  }
  ctx.manifest.write_output(ctx.out, "consecutive_k" + std::to_string(k) + ".csv", vec.str());

  DispersionReport rep = spacing_dispersion_report({z}, T, norm, target.conductor());
  nlohmann::json j = rep.to_json();
  j["normalization"] = to_string(norm);
  j["k"] = k;
  j["consecutive_means"] = component_means(consecutive_vectors(sp, k));
  std::stringstream rs(refs);
  for (std::string r; std::getline(rs, r, ',');) {
    Reference ref;
    try {
      ref = parse_reference(r);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    j["distance"][to_string(ref)] = distribution_distance(emp, ref);
  }
  ctx.manifest.write_output(ctx.out, "dispersion.json", j.dump(2) + "\n");
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_structure(Context& ctx, double h, double theta, const std::string& target_spec, const Rect& region,
                  std::ostream& out) {
  const auto target = target_or_usage(target_spec, ctx.cfg.eval);
  const DeformationParams p(h, theta);
  ctx.manifest.flag_regime(p.regime());
  const CheckReport rep = structure_inequality_check(p, target, region, ctx.cfg.structure, ctx.cfg.eval);
  ctx.manifest.write_output(ctx.out, "structure_check.json", rep.to_json().dump(2) + "\n");
  out << "samples " << rep.n << ", failures " << rep.n_failures << ", min margin " << rep.min_margin
      << ", max |margin|/err " << rep.max_margin_to_err << '\n';
  if (h == 0.0) {
    out << (rep.all_within_err() ? "h = 0: margins vanish within error (equality case)\n"
                                 : "h = 0: margins exceed error estimates\n");
    return rep.all_within_err() ? kExitOk : kExitVerification;
  }
  return rep.pass ? kExitOk : kExitVerification;
}

int cmd_characters(Context& ctx, std::int64_t q, std::ostream& out) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : enumerate_characters(q)) arr.push_back(c.to_json());
  ctx.manifest.write_output(ctx.out, "characters_" + std::to_string(q) + ".json", arr.dump(2) + "\n");
  out << arr.dump(2) << '\n';
  return kExitOk;
}

int cmd_selftest(Context& ctx, int only, std::ostream& out) {
  AcceptanceOptions o;
  o.jobs = ctx.cfg.search.jobs;
  o.seed = ctx.cfg.seed;
  std::vector<CriterionResult> res;
  if (only > 0) {
    res.push_back(run_criterion(only, o));
    out << (res[0].pass ? "PASS" : "FAIL") << "  [" << only << "] " << res[0].title << ": " << res[0].detail << '\n';
  } else {
    res = run_acceptance(out, o);
  }
  nlohmann::json j = nlohmann::json::array();
  bool all = true;
  for (const auto& r : res) {
    j.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"data", r.data}});
    all = all && r.pass;
  }
  ctx.manifest.write_output(ctx.out, "acceptance.json", j.dump(2) + "\n");
  return all ? kExitOk : kExitVerification;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"xishift: zeros and spacing statistics of shifted completed L-functions"};
  app.set_version_flag("--version", code_version());
  // -h would clash with --h
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);

  Common common;
  double h = 0.5, theta = 0.0, T = 100.0, t_lo = 0.0, step = 0.05;
  std::string target = "riemann", tag = "both", refs = "trivial,gue", norm = "odlyzko";
  std::size_t k = 1, bins = 40;
  std::int64_t q = 1;
  int only = 0;
  bool no_check = false;
  Rect region{0.501, 3.0, 0.0, 40.0};

  auto* zeros = app.add_subcommand("zeros", "locate zeros of A and/or B by the phase method");
  zeros->add_option("--h", h, "shift h (nonzero)")->required();
  zeros->add_option("--theta", theta, "rotation theta");
  zeros->add_option("--T", T, "upper end of the t range")->required();
  zeros->add_option("--t-lo", t_lo, "lower end of the t range");
  zeros->add_option("--target", target, "riemann or dirichlet:q.label");
  zeros->add_option("--tag", tag, "A, B or both")->check(CLI::IsMember({"A", "B", "both"}));

  auto* scan = app.add_subcommand("scan", "sign-change scan of the completed function on the critical line (h = 0)");
  scan->add_option("--T", T, "upper end of the t range")->required();
  scan->add_option("--t-lo", t_lo, "lower end of the t range (default 0.01)");
  scan->add_option("--target", target, "riemann or dirichlet:q.label");
  scan->add_option("--step", step, "grid step (default from config scan_step)");
  scan->add_flag("--no-check", no_check, "skip the argument-principle cross-check");

  auto* count = app.add_subcommand("count", "compare the zero count on |t| <= T with the main term");
  count->add_option("--h", h, "shift h (nonzero)")->required();
  count->add_option("--theta", theta, "rotation theta");
  count->add_option("--T", T, "height T >= 2")->required();
  count->add_option("--target", target, "riemann or dirichlet:q.label");
  count->add_option("--tag", tag, "A or B")->check(CLI::IsMember({"A", "B"}));

  auto* spacings = app.add_subcommand("spacings", "normalized spacing statistics of A zeros (scan zeros for h = 0)");
  spacings->add_option("--h", h, "shift h")->required();
  spacings->add_option("--theta", theta, "rotation theta");
  spacings->add_option("--T", T, "height")->required();
  spacings->add_option("--target", target, "riemann or dirichlet:q.label");
  spacings->add_option("--k", k, "consecutive window size")->check(CLI::PositiveNumber);
  spacings->add_option("--ref", refs, "comma list of trivial, gue");
  spacings->add_option("--norm", norm, "odlyzko or count_based")->check(CLI::IsMember({"odlyzko", "count_based"}));
  spacings->add_option("--bins", bins, "histogram bins on [0, 3]")->check(CLI::PositiveNumber);

  auto* structure = app.add_subcommand("structure-check", "sample |E(s)| > |E#(s)| on a rectangle in Re s > 1/2");
  structure->add_option("--h", h, "shift h")->required();
  structure->add_option("--theta", theta, "rotation theta");
  structure->add_option("--target", target, "riemann or dirichlet:q.label");
  structure->add_option("--re-lo", region.re_lo);
  structure->add_option("--re-hi", region.re_hi);
  structure->add_option("--im-lo", region.im_lo);
  structure->add_option("--im-hi", region.im_hi);

  auto* characters = app.add_subcommand("characters", "list the Dirichlet characters mod q");
  characters->add_option("--q", q, "modulus")->required()->check(CLI::Range(std::int64_t{1}, std::int64_t{1000000}));

  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_option("--only", only, "run a single criterion")->check(CLI::Range(1, 11));

  for (auto* s : {zeros, scan, count, spacings, structure, characters, selftest}) add_common(s, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int rc = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return rc == 0 ? kExitOk : kExitUsage;
  }

  std::vector<std::string> args(argv, argv + argc);
  int rc = kExitOk;
  std::optional<Context> ctx;
  try {
    ctx.emplace(make_context(common, args));
    Context& c = *ctx;
    if (scan->parsed() && scan->count("--step") == 0) step = c.cfg.scan_step;
    if (scan->parsed() && scan->count("--t-lo") == 0) t_lo = 0.01;
    if (zeros->parsed()) rc = cmd_zeros(c, h, theta, t_lo, T, target, tag, out);
    else if (scan->parsed()) rc = cmd_scan(c, t_lo, T, target, step, !no_check, out);
    else if (count->parsed()) rc = cmd_count(c, h, theta, T, target, tag == "both" ? "A" : tag, out);
    else if (spacings->parsed()) rc = cmd_spacings(c, h, theta, T, target, k, refs, norm, bins, out);
    else if (structure->parsed()) rc = cmd_structure(c, h, theta, target, region, out);
    else if (characters->parsed()) rc = cmd_characters(c, q, out);
    else if (selftest->parsed()) rc = cmd_selftest(c, only, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    rc = kExitRuntime;
  }
  if (ctx) {
    try {
      ctx->manifest.finish(ctx->out, rc);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      rc = kExitRuntime;
    }
  }
  return rc;
}

}  // namespace xishift
