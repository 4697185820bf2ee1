#include "hardylab/cli.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardylab/duality.hpp"
#include "hardylab/dsl.hpp"
#include "hardylab/error.hpp"
#include "hardylab/extremal.hpp"
#include "hardylab/fuzz.hpp"
#include "hardylab/norms.hpp"
#include "hardylab/operators.hpp"
#include "hardylab/serialize.hpp"
#include "hardylab/verify.hpp"

namespace hardylab {

namespace {

using nlohmann::json;

const std::vector<double> kDefaultFuzzPs = {1.1, 1.25, 1.5, 1.75, 2.0, 2.5, 3.0, 4.0, 8.0};
constexpr long kDualityMollifier = 1024;

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::Holds: return kExitHolds;
    case Verdict::Violated: return kExitViolated;
    case Verdict::Inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

// Failures to reach a verdict map to Inconclusive; anything that rejects the
// input itself is a usage error.
int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::NotConverged:
    case ErrorKind::InsufficientData: return kExitInconclusive;
    case ErrorKind::EquivalenceViolated: return kExitViolated;
    default: return kExitUsage;
  }
}

std::string format_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::BadExponent, "p must be a finite number > 1, got " + format_g17(p));
  }
}

struct Options {
  std::string spec;
  double p = 2.0;
  double tol = kDefaultTol;
  std::string op;
  std::string theorem;
  std::string family;
  std::vector<double> grid;
  std::string format = "csv";
  long mollifier = kDualityMollifier;
  std::uint64_t seed = 0;
  std::size_t count = 100;
  bool monotone = false;
  std::vector<double> ps;
};

int cmd_norm(const Options& o, std::ostream& out) {
  check_p(o.p);
  const auto f = parse_function_spec(o.spec);
  const auto r = lp_norm(f, o.p, o.tol);
  out << json{{"p", o.p}, {"norm", r.value}, {"err", r.err}, {"converged", r.converged}, {"tol", o.tol}}
             .dump()
      << '\n';
  return r.converged ? kExitHolds : kExitInconclusive;
}

int cmd_apply(const Options& o, std::ostream& out) {
  const auto f = parse_function_spec(o.spec);
  const PiecewiseFn g = o.op == "hardy" ? hardy(f) : o.op == "dual" ? dual_hardy(f) : hardy_minus_identity(f);
  out << function_to_json(g).dump() << '\n';
  return kExitHolds;
}

int cmd_verify(const Options& o, std::ostream& out) {
  check_p(o.p);
  const auto f = parse_function_spec(o.spec);
  const VerificationReport r = o.theorem == "thm1"    ? verify_theorem1(f, o.p, o.tol)
                               : o.theorem == "thm2"  ? verify_theorem2(f, o.p, o.tol)
                                                      : verify_crude(f, o.p, o.tol);
  out << to_json(r).dump() << '\n';
  return exit_for(combine(r.verdict_lower, r.verdict_upper));
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  check_p(o.p);
  const std::map<std::string, FamilyKind> kinds = {
      {"step", FamilyKind::Step}, {"zero", FamilyKind::ZeroSingular}, {"inf", FamilyKind::InfinitySingular}};
  const FamilyKind kind = kinds.at(o.family);
  const auto grid = o.grid.empty() ? default_eps_grid(kind, o.p) : o.grid;
  const auto records = sweep(kind, o.p, grid, o.tol);

  bool violated = false;
  bool inconclusive = false;
  for (const auto& r : records) {
    if (!r.converged) {
      err << "eps=" << format_g17(r.eps) << ": " << r.error << '\n';
      inconclusive = true;
    } else if (!r.hardy_inside || !r.dual_inside) {
      err << "eps=" << format_g17(r.eps) << ": norm outside its closed-form sandwich\n";
      violated = true;
    }
  }
  std::optional<double> limit;
  try {
    limit = estimate_limit(records);
  } catch (const Error& e) {
    err << e.what() << '\n';
    inconclusive = true;
  }
  const int code = violated ? kExitViolated : inconclusive ? kExitInconclusive : kExitHolds;
  const double expected = limit_ratio(kind, o.p);

  if (o.format == "json") {
    out << json{{"family", std::string(to_string(kind))},
                {"p", o.p},
                {"ratio", ratio_is_dual_over_hardy(kind) ? "norm_Hstar/norm_H" : "norm_H/norm_Hstar"},
                {"records", to_json(records)},
                {"estimated_limit", limit ? json(*limit) : json(nullptr)},
                {"expected_limit", expected}}
               .dump()
        << '\n';
  } else {
    out << sweep_csv(records);
    out << "# estimated_limit=" << (limit ? format_g17(*limit) : "nan")
        << " expected_limit=" << format_g17(expected) << '\n';
  }
  return code;
}

int cmd_duality(const Options& o, std::ostream& out, std::ostream& err) {
  check_p(o.p);
  auto phi = parse_function_spec(o.spec);
  bool mollified = false;
  if (const long jump = find_jump(phi); jump >= 0) {
    err << "warning: phi jumps at x = " << format_g17(phi.interior_breaks()[static_cast<std::size_t>(jump)])
        << "; using its mollification with n = " << o.mollifier << '\n';
    phi = mollify(phi, o.mollifier);
    mollified = true;
  }
  auto r = equivalence_report(phi, o.p, 1e-8, o.tol);
  r.mollified = mollified;
  out << to_json(r).dump() << '\n';
  return exit_for(r.verdict);
}

int cmd_fuzz(const Options& o, std::ostream& out) {
  const auto ps = o.ps.empty() ? kDefaultFuzzPs : o.ps;
  for (double p : ps) check_p(p);
  const auto s = fuzz_campaign(o.seed, o.count, o.monotone, ps, o.tol);
  json j = to_json(s);
  j["seed"] = o.seed;
  j["count"] = o.count;
  j["monotone"] = o.monotone;
  j["p"] = ps;
  out << j.dump() << '\n';
  if (s.fail > 0) return kExitViolated;
  if (s.inconclusive > 0 || s.errors > 0) return kExitInconclusive;
  return kExitHolds;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hardy operator toolkit", "hardylab"};
  app.require_subcommand(1);
  Options o;

  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("-f,--function", o.spec, "function: JSON DSL or chi(l,r)/pow(a,l,r) sums")->required();
  };
  auto add_p = [&](CLI::App* sub) { sub->add_option("-p", o.p, "Lebesgue exponent (> 1)")->required(); };
  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol", o.tol, "relative tolerance on norm^p")->check(CLI::PositiveNumber);
  };

  auto* norm = app.add_subcommand("norm", "L^p norm of a function");
  add_spec(norm);
  add_p(norm);
  add_tol(norm);

  auto* apply = app.add_subcommand("apply", "apply an operator, print the result as DSL JSON");
  apply->add_option("operator", o.op)->required()->check(CLI::IsMember({"hardy", "dual", "diff"}));
  add_spec(apply);

  auto* verify = app.add_subcommand("verify", "check the two-sided norm inequalities");
  verify->add_option("theorem", o.theorem)->required()->check(CLI::IsMember({"thm1", "thm2", "crude"}));
  add_spec(verify);
  add_p(verify);
  add_tol(verify);

  auto* sweep_cmd = app.add_subcommand("sweep", "extremal family sweep");
  sweep_cmd->add_option("--family", o.family)->required()->check(CLI::IsMember({"step", "zero", "inf"}));
  add_p(sweep_cmd);
  sweep_cmd->add_option("--grid", o.grid, "eps values, decreasing")->delimiter(',');
  sweep_cmd->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
  add_tol(sweep_cmd);

  auto* duality = app.add_subcommand("duality", "check the phi <-> f equivalence");
  add_spec(duality);
  add_p(duality);
  add_tol(duality);
  duality->add_option("--mollify", o.mollifier, "mollifier index used for stepped phi")
      ->check(CLI::PositiveNumber);

  auto* fuzz = app.add_subcommand("fuzz", "random campaign over the inequalities");
  fuzz->add_option("--seed", o.seed);
  fuzz->add_option("--count", o.count)->check(CLI::PositiveNumber);
  fuzz->add_flag("--monotone", o.monotone, "generate nonincreasing phi");
  fuzz->add_option("-p", o.ps, "exponents (default grid when omitted)")->delimiter(',');
  add_tol(fuzz);

  std::vector<const char*> argv = {"hardylab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitHolds : kExitUsage;
  }

  try {
    if (*norm) return cmd_norm(o, out);
    if (*apply) return cmd_apply(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*sweep_cmd) return cmd_sweep(o, out, err);
    if (*duality) return cmd_duality(o, out, err);
    return cmd_fuzz(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_for(e);
  }
}

}  // namespace hardylab
