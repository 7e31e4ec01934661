// fph: command-line front end for the fault-prone Hotelling toolkit.
//
// Subcommands: solve, threshold, verify, simulate, efficiency.  Exit codes:
// 0 success/verified, 1 checked-and-failed, 2 usage error.  All floats are
// printed at 12 significant digits so outputs are stable golden files; any
// command is byte-identical across reruns for a fixed seed.

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fph/canonical.hpp"
#include "fph/deviate.hpp"
#include "fph/efficiency.hpp"
#include "fph/montecarlo.hpp"
#include "fph/payoff.hpp"
#include "fph/types.hpp"

namespace {

using nlohmann::json;
using namespace fph;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string txt12(double x) { return std::isfinite(x) ? fmt12(x) : "n/a"; }
std::string csv12(double x) { return std::isfinite(x) ? fmt12(x) : ""; }

// JSON numbers carry the same 12 significant digits; NaN becomes null
json j12(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::strtod(fmt12(x).c_str(), nullptr);
}

json jprofile(const Profile& profile) {
  json arr = json::array();
  for (double x : profile.positions()) arr.push_back(j12(x));
  return arr;
}

std::string iso_utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json make_manifest(const std::string& command, json parameters) {
  return json{{"command", command},
              {"version", kVersion},
              {"parameters", std::move(parameters)}};
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file: " + path);
  f << body;
  if (!f) throw UsageError("failed writing output file: " + path);
}

// stdout, or --out FILE plus FILE.manifest.json; only the sidecar carries a
// timestamp, so the payload stays byte-identical across reruns
void deliver(const std::string& body, const json& manifest, const std::string& out) {
  if (out.empty()) {
    std::fputs(body.c_str(), stdout);
    return;
  }
  write_file(out, body);
  json side = manifest;
  side["timestamp"] = iso_utc_now();
  write_file(out + ".manifest.json", side.dump(2) + "\n");
}

std::uint64_t resolve_seed(bool seed_given, std::uint64_t cli_value) {
  if (seed_given) return cli_value;
  if (const char* env = std::getenv("FPH_SEED")) {
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (errno != 0 || end == env || *end != '\0')
      throw UsageError("FPH_SEED must be a nonnegative integer, got: " + std::string(env));
    return v;
  }
  return cli_value;
}

// ---- range specifications --------------------------------------------------

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

// numeric, or the symbolic endpoints of the equilibrium-existence range
double lambda_token(const std::string& tok, int n) {
  if (tok == "lmin" || tok == "lmax") {
    if (n < 3) throw UsageError("lmin/lmax tokens require n >= 3");
    return tok == "lmin" ? canonical::lambda_min(n) : canonical::lambda_max(n);
  }
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0' || !std::isfinite(v) || v < 0.0)
    throw UsageError("bad lambda value: " + tok);
  return v;
}

// --lambda X | --lambda A..B (inclusive, --lambda-steps points) |
// --lambda-points T1,T2,...   where each token is a number, lmin, or lmax
std::vector<double> resolve_lambdas(const std::string& range_spec,
                                    const std::string& points_spec, int steps, int n) {
  std::vector<double> out;
  if (!points_spec.empty()) {
    for (const auto& tok : split(points_spec, ','))
      out.push_back(lambda_token(tok, n));
    if (out.empty()) throw UsageError("--lambda-points lists no values");
    return out;
  }
  if (range_spec.empty()) throw UsageError("need --lambda or --lambda-points");
  const auto dots = range_spec.find("..");
  if (dots == std::string::npos) {
    out.push_back(lambda_token(range_spec, n));
    return out;
  }
  const double a = lambda_token(range_spec.substr(0, dots), n);
  const double b = lambda_token(range_spec.substr(dots + 2), n);
  if (b < a) throw UsageError("lambda range must be nondecreasing");
  if (steps < 2) throw UsageError("--lambda-steps must be >= 2 for a range");
  for (int k = 0; k < steps; ++k)
    out.push_back(a + (b - a) * k / (steps - 1));
  return out;
}

// "N" or "A..B", integers, inclusive
std::pair<int, int> parse_int_range(const std::string& spec) {
  const auto parse_one = [](const std::string& tok) {
    char* end = nullptr;
    const long v = std::strtol(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0')
      throw UsageError("bad integer: " + tok);
    return static_cast<int>(v);
  };
  const auto dots = spec.find("..");
  if (dots == std::string::npos) {
    const int v = parse_one(spec);
    return {v, v};
  }
  const int a = parse_one(spec.substr(0, dots));
  const int b = parse_one(spec.substr(dots + 2));
  if (b < a) throw UsageError("range must be nondecreasing: " + spec);
  return {a, b};
}

// ---- solve ------------------------------------------------------------------

int cmd_solve(int n, double lambda, bool as_json, const std::string& out) {
  const GameConfig config{n, lambda};
  const auto ne = canonical::nash_equilibrium(config);
  std::optional<canonical::CanonicalPair> pair;
  if (n >= 2) pair = canonical::canonical_pair(config);
  const double lmin =
      n >= 3 ? canonical::lambda_min(n) : std::numeric_limits<double>::quiet_NaN();

  const json manifest =
      make_manifest("solve", json{{"n", n}, {"lambda", j12(lambda)}});
  std::string body;
  if (as_json) {
    json doc = manifest;
    doc["lambda_min"] = j12(lmin);
    if (pair) {
      doc["pair"] = json{{"hinterland", j12(pair->hinterland)},
                         {"spacing", j12(pair->spacing)},
                         {"alpha", j12(lambda * pair->spacing)},
                         {"c", j12(1.0 - pair->hinterland / pair->spacing)}};
    } else {
      doc["pair"] = nullptr;
    }
    doc["exists"] = ne.has_value();
    doc["profile"] = ne ? jprofile(*ne) : json(nullptr);
    body = doc.dump(2) + "\n";
  } else {
    body += "command solve\n";
    body += "n " + std::to_string(n) + "\n";
    body += "lambda " + fmt12(lambda) + "\n";
    if (n >= 3) body += "lambda_min " + fmt12(lmin) + "\n";
    if (pair) {
      body += "H " + fmt12(pair->hinterland) + "\n";
      body += "M " + fmt12(pair->spacing) + "\n";
      body += "alpha " + fmt12(lambda * pair->spacing) + "\n";
      body += "c " + fmt12(1.0 - pair->hinterland / pair->spacing) + "\n";
    }
    if (ne) {
      body += "equilibrium";
      for (double x : ne->positions()) body += " " + fmt12(x);
      body += "\n";
    } else {
      body += "equilibrium NON-EXISTENT\n";
    }
  }
  deliver(body, manifest, out);
  return 0;
}

// ---- threshold ---------------------------------------------------------------

int cmd_threshold(const std::string& nspec, bool as_json, const std::string& out) {
  const auto [n_lo, n_hi] = parse_int_range(nspec);
  if (n_lo < 3) throw UsageError("threshold needs n >= 3");
  if (n_hi > 100000) throw UsageError("threshold range too large");
  const auto& th = canonical::threshold();

  const json manifest =
      make_manifest("threshold", json{{"n_min", n_lo}, {"n_max", n_hi}});
  std::string body;
  if (as_json) {
    json doc = manifest;
    json rows = json::array();
    for (int n = n_lo; n <= n_hi; ++n) {
      rows.push_back(json{{"n", n},
                          {"lambda_min_exact", j12(th.lambda_min(n))},
                          {"lambda_min_linear_approx", j12(0.58813 * n + 1.04931)},
                          {"alpha0", j12(th.alpha0)},
                          {"beta0", j12(th.beta0)}});
    }
    doc["rows"] = rows;
    body = doc.dump(2) + "\n";
  } else {
    body = "n,lambda_min_exact,lambda_min_linear_approx,alpha0,beta0\n";
    for (int n = n_lo; n <= n_hi; ++n) {
      body += std::to_string(n) + "," + fmt12(th.lambda_min(n)) + "," +
              fmt12(0.58813 * n + 1.04931) + "," + fmt12(th.alpha0) + "," +
              fmt12(th.beta0) + "\n";
    }
  }
  deliver(body, manifest, out);
  return 0;
}

// ---- verify -------------------------------------------------------------------

int resolve_n(int n_flag, size_t n_positions) {
  if (n_flag > 0 && n_flag != static_cast<int>(n_positions))
    throw UsageError("--n disagrees with the number of positions given");
  return static_cast<int>(n_positions);
}

int cmd_verify(int n_flag, double lambda, const std::vector<double>& positions,
               double tol, bool grid_oracle, int grid_points, bool as_json,
               const std::string& out) {
  const int n = resolve_n(n_flag, positions.size());
  const Profile profile{positions};
  const GameConfig config{n, lambda};

  const auto analytic = deviate::verify_equilibrium(config, profile, tol);
  std::optional<deviate::VerifyResult> grid;
  if (grid_oracle)
    grid = deviate::verify_equilibrium_grid(config, profile, tol, grid_points);
  const bool ok = analytic.is_equilibrium && (!grid || grid->is_equilibrium);

  json params{{"n", n},           {"lambda", j12(lambda)},
              {"positions", json::array()}, {"tol", j12(tol)},
              {"grid_oracle", grid_oracle}};
  for (double x : positions) params["positions"].push_back(j12(x));
  if (grid_oracle) params["grid_points"] = grid_points;
  const json manifest = make_manifest("verify", std::move(params));

  std::string body;
  if (as_json) {
    json doc = manifest;
    json players = json::array();
    for (size_t i = 0; i < analytic.reports.size(); ++i) {
      const auto& r = analytic.reports[i];
      json p{{"player", r.player},
             {"position", j12(profile.positions()[i])},
             {"current_payoff", j12(r.current_payoff)},
             {"best_point", j12(r.best_point)},
             {"best_payoff", j12(r.best_payoff)},
             {"gain", j12(r.gain)}};
      if (grid) {
        p["grid_best_point"] = j12(grid->reports[i].best_point);
        p["grid_gain"] = j12(grid->reports[i].gain);
      }
      players.push_back(std::move(p));
    }
    doc["players"] = players;
    doc["analytic_equilibrium"] = analytic.is_equilibrium;
    doc["grid_equilibrium"] = grid ? json(grid->is_equilibrium) : json(nullptr);
    doc["is_equilibrium"] = ok;
    body = doc.dump(2) + "\n";
  } else {
    body += "command verify\n";
    body += "n " + std::to_string(n) + "\n";
    body += "lambda " + fmt12(lambda) + "\n";
    body += "tol " + fmt12(tol) + "\n";
    body += "player position current_payoff best_point best_payoff gain";
    if (grid) body += " grid_best_point grid_gain";
    body += "\n";
    for (size_t i = 0; i < analytic.reports.size(); ++i) {
      const auto& r = analytic.reports[i];
      body += std::to_string(r.player) + " " + fmt12(profile.positions()[i]) + " " +
              fmt12(r.current_payoff) + " " + fmt12(r.best_point) + " " +
              fmt12(r.best_payoff) + " " + fmt12(r.gain);
      if (grid)
        body += " " + fmt12(grid->reports[i].best_point) + " " +
                fmt12(grid->reports[i].gain);
      body += "\n";
    }
    body += std::string("analytic_equilibrium ") +
            (analytic.is_equilibrium ? "true" : "false") + "\n";
    if (grid)
      body += std::string("grid_equilibrium ") +
              (grid->is_equilibrium ? "true" : "false") + "\n";
    body += std::string("is_equilibrium ") + (ok ? "true" : "false") + "\n";
  }
  deliver(body, manifest, out);
  return ok ? 0 : 1;
}

// ---- simulate -------------------------------------------------------------------

int cmd_simulate(int n_flag, double lambda, const std::vector<double>& positions,
                 long samples, std::uint64_t seed, bool as_json,
                 const std::string& out) {
  const int n = resolve_n(n_flag, positions.size());
  const Profile profile{positions};
  const GameConfig config{n, lambda};

  const auto estimates = mc::payoffs(config, profile, samples, seed);
  double max_abs_z = 0.0;
  bool any_bad = false;
  std::vector<double> closed(static_cast<size_t>(n)), zs(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    closed[static_cast<size_t>(i)] = payoff::expected_payoff(config, profile, i).total;
    const auto& e = estimates[static_cast<size_t>(i)];
    double z = std::numeric_limits<double>::quiet_NaN();
    if (std::isfinite(e.std_error)) {
      const double diff = e.mean - closed[static_cast<size_t>(i)];
      if (e.std_error > 0.0)
        z = diff / e.std_error;
      else if (std::abs(diff) < 1e-12)
        z = 0.0;  // degenerate zero-variance case (e.g. lambda == 0)
    }
    zs[static_cast<size_t>(i)] = z;
    if (std::isfinite(z)) {
      max_abs_z = std::max(max_abs_z, std::abs(z));
      if (std::abs(z) > 4.0) any_bad = true;
    }
  }

  json params{{"n", n},
              {"lambda", j12(lambda)},
              {"positions", json::array()},
              {"samples", samples},
              {"seed", seed}};
  for (double x : positions) params["positions"].push_back(j12(x));
  const json manifest = make_manifest("simulate", std::move(params));

  std::string body;
  if (as_json) {
    json doc = manifest;
    json players = json::array();
    for (int i = 0; i < n; ++i) {
      const auto& e = estimates[static_cast<size_t>(i)];
      players.push_back(json{{"player", i},
                             {"position", j12(profile.positions()[static_cast<size_t>(i)])},
                             {"closed_form", j12(closed[static_cast<size_t>(i)])},
                             {"mc_mean", j12(e.mean)},
                             {"mc_stderr", j12(e.std_error)},
                             {"z", j12(zs[static_cast<size_t>(i)])}});
    }
    doc["players"] = players;
    doc["max_abs_z"] = j12(max_abs_z);
    doc["consistent"] = !any_bad;
    body = doc.dump(2) + "\n";
  } else {
    body += "command simulate\n";
    body += "n " + std::to_string(n) + "\n";
    body += "lambda " + fmt12(lambda) + "\n";
    body += "samples " + std::to_string(samples) + "\n";
    body += "seed " + std::to_string(seed) + "\n";
    body += "player position closed_form mc_mean mc_stderr z\n";
    for (int i = 0; i < n; ++i) {
      const auto& e = estimates[static_cast<size_t>(i)];
      body += std::to_string(i) + " " +
              fmt12(profile.positions()[static_cast<size_t>(i)]) + " " +
              fmt12(closed[static_cast<size_t>(i)]) + " " + fmt12(e.mean) + " " +
              txt12(e.std_error) + " " + txt12(zs[static_cast<size_t>(i)]) + "\n";
    }
    body += "max_abs_z " + txt12(max_abs_z) + "\n";
    body += std::string("consistent ") + (any_bad ? "false" : "true") + "\n";
  }
  deliver(body, manifest, out);
  return any_bad ? 1 : 0;
}

// ---- efficiency ------------------------------------------------------------------

struct EffRow {
  double lambda;
  std::string profile;
  double value;      // NaN = not defined at this lambda
  double std_error;  // NaN = not a Monte Carlo figure
};

int cmd_efficiency(int n, const std::string& lambda_spec,
                   const std::string& points_spec, int steps,
                   const std::string& metric, std::vector<std::string> profiles,
                   bool use_mc, long samples, std::uint64_t seed,
                   bool reference_optimum, bool as_json, const std::string& out) {
  if (metric != "cfree" && metric != "pos" && metric != "dcfrac")
    throw UsageError("--metric must be one of: cfree, pos, dcfrac");
  if (profiles.empty()) profiles = {"canonical"};
  for (const auto& p : profiles)
    if (p != "canonical" && p != "opt-dc" && p != "faultfree")
      throw UsageError("--profiles entries must be canonical, opt-dc or faultfree");
  if (metric == "pos" && (profiles.size() != 1 || profiles[0] != "canonical"))
    throw UsageError("--metric pos rates the equilibrium itself; use --profiles canonical");

  const std::vector<double> lambdas =
      resolve_lambdas(lambda_spec, points_spec, steps, n);

  // fail fast on unsupported comparison profiles (e.g. faultfree with n = 3)
  std::optional<Profile> faultfree;
  for (const auto& p : profiles)
    if (p == "faultfree" && !faultfree) {
      try {
        faultfree = efficiency::faultfree_ne_profile(n);
      } catch (const efficiency::UnsupportedN& e) {
        throw UsageError(e.what());
      }
    }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<EffRow> rows;
  for (const double lambda : lambdas) {
    const GameConfig config{n, lambda};
    for (const auto& name : profiles) {
      EffRow row{lambda, name, nan, nan};
      if (metric == "pos") {
        try {
          row.value = efficiency::pos_poa(config, reference_optimum).pos;
        } catch (const efficiency::NoEquilibrium&) {
        }
        rows.push_back(row);
        continue;
      }
      std::optional<Profile> prof;
      if (name == "canonical") {
        if (n == 1)
          prof = Profile{{0.5}};
        else
          prof = canonical::canonical_profile(config);  // nullopt below 2 ln 2
      } else if (name == "opt-dc") {
        prof = efficiency::optimal_dc_profile(config);
      } else {
        prof = faultfree;
      }
      if (prof) {
        if (metric == "cfree") {
          row.value = efficiency::c_free(*prof);
        } else {
          const auto est = efficiency::expected_disconnected_fraction(
              config, *prof,
              use_mc ? efficiency::DcMode::kMonteCarlo
                     : efficiency::DcMode::kClosedForm,
              samples, seed);
          row.value = est.mean;
          row.std_error = est.std_error;
        }
      }
      rows.push_back(row);
    }
  }

  json params{{"n", n},
              {"lambdas", json::array()},
              {"metric", metric},
              {"profiles", profiles},
              {"mc", use_mc},
              {"samples", samples},
              {"seed", seed},
              {"reference_optimum", reference_optimum}};
  for (double l : lambdas) params["lambdas"].push_back(j12(l));
  const json manifest = make_manifest("efficiency", std::move(params));

  std::string body;
  if (as_json) {
    json doc = manifest;
    json jrows = json::array();
    for (const auto& r : rows)
      jrows.push_back(json{{"lambda", j12(r.lambda)},
                           {"profile", r.profile},
                           {"metric", metric},
                           {"value", j12(r.value)},
                           {"std_error", j12(r.std_error)}});
    doc["rows"] = jrows;
    body = doc.dump(2) + "\n";
  } else {
    body = "lambda,profile,metric,value,std_error\n";
    for (const auto& r : rows)
      body += fmt12(r.lambda) + "," + r.profile + "," + metric + "," +
              csv12(r.value) + "," + csv12(r.std_error) + "\n";
  }
  deliver(body, manifest, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fault-prone Hotelling games on [0,1]: equilibria, payoffs, efficiency"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "equilibrium profile for (n, lambda)");
  int so_n = 0;
  double so_lambda = 0.0;
  bool so_json = false;
  std::string so_out;
  solve->add_option("--n", so_n, "number of servers")->required()->check(CLI::Range(1, 100000));
  solve->add_option("--lambda", so_lambda, "fault rate (> 0)")->required()->check(CLI::PositiveNumber);
  solve->add_flag("--json", so_json, "emit JSON instead of text");
  solve->add_option("--out", so_out, "write to FILE (+ FILE.manifest.json)");

  // threshold
  auto* threshold = app.add_subcommand("threshold", "existence thresholds lambda_min over a range of n");
  std::string th_nspec;
  bool th_json = false;
  std::string th_out;
  threshold->add_option("--n", th_nspec, "server count or inclusive range A..B (n >= 3)")->required();
  threshold->add_flag("--json", th_json, "emit JSON instead of CSV");
  threshold->add_option("--out", th_out, "write to FILE (+ FILE.manifest.json)");

  // verify
  auto* verify = app.add_subcommand("verify", "check a profile for equilibrium");
  int ve_n = 0;
  double ve_lambda = 0.0;
  std::vector<double> ve_positions;
  double ve_tol = 1e-9;
  bool ve_grid = false;
  int ve_grid_points = 2000;
  bool ve_json = false;
  std::string ve_out;
  verify->add_option("--n", ve_n, "number of servers (inferred from positions)")->check(CLI::Range(1, 100000));
  verify->add_option("--lambda", ve_lambda, "fault rate (>= 0)")->required()->check(CLI::NonNegativeNumber);
  verify->add_option("positions", ve_positions, "server coordinates in [0,1]")->required()->expected(-1);
  verify->add_option("--tol", ve_tol, "improvement tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  verify->add_flag("--grid-oracle", ve_grid, "also scan a deviation grid as an independent check");
  verify->add_option("--grid-points", ve_grid_points, "grid resolution per player")->capture_default_str()->check(CLI::Range(10, 10000000));
  verify->add_flag("--json", ve_json, "emit JSON instead of text");
  verify->add_option("--out", ve_out, "write to FILE (+ FILE.manifest.json)");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo payoffs vs closed form");
  int si_n = 0;
  double si_lambda = 0.0;
  std::vector<double> si_positions;
  long si_samples = 100000;
  std::uint64_t si_seed = 42;
  bool si_json = false;
  std::string si_out;
  simulate->add_option("--n", si_n, "number of servers (inferred from positions)")->check(CLI::Range(1, 100000));
  simulate->add_option("--lambda", si_lambda, "fault rate (>= 0)")->required()->check(CLI::NonNegativeNumber);
  simulate->add_option("positions", si_positions, "server coordinates in [0,1]")->required()->expected(-1);
  simulate->add_option("--samples", si_samples, "Monte Carlo sample count")->capture_default_str()->check(CLI::Range(1L, 2000000000L));
  auto* si_seed_opt = simulate->add_option("--seed", si_seed, "RNG seed (FPH_SEED overrides the default)")->capture_default_str();
  simulate->add_flag("--json", si_json, "emit JSON instead of text");
  simulate->add_option("--out", si_out, "write to FILE (+ FILE.manifest.json)");

  // efficiency
  auto* efficiency = app.add_subcommand("efficiency", "cost/efficiency curves over lambda");
  int ef_n = 0;
  std::string ef_lambda_spec;
  std::string ef_points_spec;
  int ef_steps = 21;
  std::string ef_metric = "cfree";
  std::vector<std::string> ef_profiles{"canonical"};
  bool ef_mc = false;
  long ef_samples = 100000;
  std::uint64_t ef_seed = 42;
  bool ef_reference = false;
  bool ef_json = false;
  std::string ef_out;
  efficiency->add_option("--n", ef_n, "number of servers")->required()->check(CLI::Range(1, 100000));
  auto* ef_range_opt = efficiency->add_option("--lambda", ef_lambda_spec, "fault rate X or range A..B (tokens lmin/lmax allowed)");
  auto* ef_points_opt = efficiency->add_option("--lambda-points", ef_points_spec, "comma list of rates (tokens lmin/lmax allowed)");
  ef_range_opt->excludes(ef_points_opt);
  efficiency->add_option("--lambda-steps", ef_steps, "points in a --lambda range")->capture_default_str()->check(CLI::Range(2, 100000));
  efficiency->add_option("--metric", ef_metric, "cfree | pos | dcfrac")->required();
  efficiency->add_option("--profiles", ef_profiles, "comma list: canonical,opt-dc,faultfree")->delimiter(',')->capture_default_str();
  efficiency->add_flag("--mc", ef_mc, "estimate dcfrac by Monte Carlo (adds std_error)");
  efficiency->add_option("--samples", ef_samples, "Monte Carlo sample count")->capture_default_str()->check(CLI::Range(1L, 2000000000L));
  auto* ef_seed_opt = efficiency->add_option("--seed", ef_seed, "RNG seed (FPH_SEED overrides the default)")->capture_default_str();
  efficiency->add_flag("--reference-optimum", ef_reference, "normalize pos by 1/(2n) instead of the integrated 1/(4n)");
  efficiency->add_flag("--json", ef_json, "emit JSON instead of CSV");
  efficiency->add_option("--out", ef_out, "write to FILE (+ FILE.manifest.json)");

  try {
    app.parse(argc, argv);
    if (app.got_subcommand(solve))
      return cmd_solve(so_n, so_lambda, so_json, so_out);
    if (app.got_subcommand(threshold))
      return cmd_threshold(th_nspec, th_json, th_out);
    if (app.got_subcommand(verify))
      return cmd_verify(ve_n, ve_lambda, ve_positions, ve_tol, ve_grid,
                        ve_grid_points, ve_json, ve_out);
    if (app.got_subcommand(simulate))
      return cmd_simulate(si_n, si_lambda, si_positions, si_samples,
                          resolve_seed(si_seed_opt->count() > 0, si_seed), si_json,
                          si_out);
    if (app.got_subcommand(efficiency))
      return cmd_efficiency(ef_n, ef_lambda_spec, ef_points_spec, ef_steps,
                            ef_metric, ef_profiles, ef_mc, ef_samples,
                            resolve_seed(ef_seed_opt->count() > 0, ef_seed),
                            ef_reference, ef_json, ef_out);
    return 2;  // unreachable: require_subcommand(1)
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 2;
  }
}
