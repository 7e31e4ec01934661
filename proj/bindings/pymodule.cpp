// Python bindings: thin wrappers over the C++ core.  Profiles and fault sets
// cross the boundary as plain lists of floats; n is inferred from them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fph/canonical.hpp"
#include "fph/deviate.hpp"
#include "fph/efficiency.hpp"
#include "fph/faultline.hpp"
#include "fph/montecarlo.hpp"
#include "fph/payoff.hpp"
#include "fph/rng.hpp"
#include "fph/types.hpp"

namespace py = pybind11;
using namespace fph;

namespace {

GameConfig config_for(double lambda, const std::vector<double>& positions) {
  return GameConfig{static_cast<int>(positions.size()), lambda};
}

py::dict report_dict(const deviate::DeviationReport& r) {
  py::dict d;
  d["player"] = r.player;
  d["best_point"] = r.best_point;
  d["best_payoff"] = r.best_payoff;
  d["current_payoff"] = r.current_payoff;
  d["gain"] = r.gain;
  return d;
}

py::dict verify_dict(const deviate::VerifyResult& v) {
  py::dict d;
  d["is_equilibrium"] = v.is_equilibrium;
  py::list reports;
  for (const auto& r : v.reports) reports.append(report_dict(r));
  d["reports"] = reports;
  return d;
}

}  // namespace

PYBIND11_MODULE(fph, m) {
  m.doc() = "fault-prone Hotelling games on [0,1]: equilibria, payoffs, efficiency";
  m.attr("__version__") = kVersion;

  // ---- closed-form payoffs
  m.def("eh", &payoff::eh, py::arg("lam"), py::arg("d"),
        "expected share of a hinterland of length d");
  m.def("em", &payoff::em, py::arg("lam"), py::arg("d"),
        "expected share of an internal region of length d");
  m.def(
      "expected_payoff",
      [](double lam, const std::vector<double>& positions, int i) {
        const Profile p{positions};
        const auto b = payoff::expected_payoff(config_for(lam, positions), p, i);
        py::dict d;
        d["left"] = b.left;
        d["right"] = b.right;
        d["gamma"] = b.gamma;
        d["total"] = b.total;
        return d;
      },
      py::arg("lam"), py::arg("positions"), py::arg("i"),
      "closed-form expected payoff of player i (positions are sorted first)");

  // ---- realized faults and markets
  m.def(
      "sample_faults",
      [](double lam, std::uint64_t seed) {
        RandomStream stream(seed);
        return faultline::sample_faults(lam, stream).points();
      },
      py::arg("lam"), py::arg("seed") = 42, "one draw of the fault point process");
  m.def(
      "realized_market",
      [](const std::vector<double>& positions, int i, const std::vector<double>& faults) {
        const auto mkt = faultline::realized_market(Profile{positions}, i, FaultSet{faults});
        return std::make_pair(mkt.left, mkt.right);
      },
      py::arg("positions"), py::arg("i"), py::arg("faults"),
      "market [L_i, R_i] of player i under a realized fault set");
  m.def(
      "realized_payoffs",
      [](const std::vector<double>& positions, const std::vector<double>& faults) {
        return faultline::realized_payoffs(Profile{positions}, FaultSet{faults});
      },
      py::arg("positions"), py::arg("faults"));
  m.def(
      "disconnected_length",
      [](const std::vector<double>& positions, const std::vector<double>& faults) {
        return faultline::disconnected_length(Profile{positions}, FaultSet{faults});
      },
      py::arg("positions"), py::arg("faults"),
      "total length of fault pieces containing no server");

  // ---- canonical equilibria
  m.def(
      "canonical_pair",
      [](int n, double lam) -> py::object {
        const auto pair = canonical::canonical_pair(GameConfig{n, lam});
        if (!pair) return py::none();
        return py::make_tuple(pair->hinterland, pair->spacing);
      },
      py::arg("n"), py::arg("lam"), "(H, M) or None when lambda <= 2 ln 2");
  m.def(
      "canonical_profile",
      [](int n, double lam) -> py::object {
        const auto p = canonical::canonical_profile(GameConfig{n, lam});
        if (!p) return py::none();
        return py::cast(p->positions());
      },
      py::arg("n"), py::arg("lam"));
  m.def(
      "nash_equilibrium",
      [](int n, double lam) -> py::object {
        const auto p = canonical::nash_equilibrium(GameConfig{n, lam});
        if (!p) return py::none();
        return py::cast(p->positions());
      },
      py::arg("n"), py::arg("lam"), "equilibrium profile or None");
  m.def(
      "ne_exists", [](int n, double lam) { return canonical::ne_exists(GameConfig{n, lam}); },
      py::arg("n"), py::arg("lam"));
  m.def("threshold", [] {
    const auto& th = canonical::threshold();
    py::dict d;
    d["alpha0"] = th.alpha0;
    d["beta0"] = th.beta0;
    return d;
  });
  m.def("lambda_min", &canonical::lambda_min, py::arg("n"),
        "minimal fault rate admitting an equilibrium (n >= 3)");
  m.def("lambda_max", &canonical::lambda_max, py::arg("n"),
        "rate at the spread-maximizing alpha");
  m.def("alpha_max", &canonical::alpha_max);
  m.def(
      "reparam_forward",
      [](double alpha, int n) {
        const auto f = canonical::reparam_forward(alpha, n);
        py::dict d;
        d["c"] = f.c;
        d["spacing"] = f.spacing;
        d["hinterland"] = f.hinterland;
        d["lam"] = f.lambda;
        return d;
      },
      py::arg("alpha"), py::arg("n"));
  m.def(
      "beta_pair",
      [](double alpha) {
        const auto pt = canonical::beta_pair(alpha);
        py::dict d;
        d["alpha"] = pt.alpha;
        d["c"] = pt.c;
        d["beta1"] = pt.beta1 ? py::cast(*pt.beta1) : py::none();
        d["beta2"] = pt.beta2 ? py::cast(*pt.beta2) : py::none();
        return d;
      },
      py::arg("alpha"));

  // ---- deviations
  m.def(
      "best_response",
      [](double lam, const std::vector<double>& positions, int i) {
        const Profile p{positions};
        return report_dict(deviate::best_response(config_for(lam, positions), p, i));
      },
      py::arg("lam"), py::arg("positions"), py::arg("i"));
  m.def(
      "verify_equilibrium",
      [](double lam, const std::vector<double>& positions, double tol) {
        const Profile p{positions};
        return verify_dict(deviate::verify_equilibrium(config_for(lam, positions), p, tol));
      },
      py::arg("lam"), py::arg("positions"), py::arg("tol") = 1e-9);
  m.def(
      "verify_equilibrium_grid",
      [](double lam, const std::vector<double>& positions, double tol, int grid) {
        const Profile p{positions};
        return verify_dict(
            deviate::verify_equilibrium_grid(config_for(lam, positions), p, tol, grid));
      },
      py::arg("lam"), py::arg("positions"), py::arg("tol") = 1e-9,
      py::arg("grid") = 10000);
  m.def(
      "hinterland_optimum",
      [](double lam, double s) {
        const auto o = deviate::hinterland_optimum(lam, s);
        return std::make_pair(o.t, o.payoff);
      },
      py::arg("lam"), py::arg("s"), "(t*, payoff) in a hinterland of length s");
  m.def(
      "internal_optimum",
      [](double lam, double s) {
        const auto o = deviate::internal_optimum(lam, s);
        return std::make_pair(o.t, o.payoff);
      },
      py::arg("lam"), py::arg("s"));

  // ---- Monte Carlo
  m.def(
      "mc_payoffs",
      [](double lam, const std::vector<double>& positions, long samples,
         std::uint64_t seed) {
        const Profile p{positions};
        const auto est = mc::payoffs(config_for(lam, positions), p, samples, seed);
        std::vector<std::pair<double, double>> out;
        out.reserve(est.size());
        for (const auto& e : est) out.emplace_back(e.mean, e.std_error);
        return out;
      },
      py::arg("lam"), py::arg("positions"), py::arg("samples") = 100000,
      py::arg("seed") = 42, "per-player (mean, std_error) over sampled fault sets");

  // ---- efficiency
  m.def(
      "c_free",
      [](const std::vector<double>& positions) { return efficiency::c_free(Profile{positions}); },
      py::arg("positions"), "fault-free transportation cost");
  m.def(
      "social_optimum",
      [](int n) {
        const auto [p, cost] = efficiency::social_optimum(n);
        return std::make_pair(p.positions(), cost);
      },
      py::arg("n"));
  m.def(
      "pos_poa",
      [](int n, double lam, bool reference_normalization) {
        const auto r = efficiency::pos_poa(GameConfig{n, lam}, reference_normalization);
        py::dict d;
        d["c_free"] = r.c_free;
        d["optimum_cost"] = r.optimum_cost;
        d["pos"] = r.pos;
        d["poa"] = r.poa;
        d["optimum_integrated"] = r.optimum_integrated;
        d["optimum_reference"] = r.optimum_reference;
        d["reference_normalization"] = r.reference_normalization;
        return d;
      },
      py::arg("n"), py::arg("lam"), py::arg("reference_normalization") = false);
  m.def(
      "expected_disconnected_fraction",
      [](double lam, const std::vector<double>& positions, const std::string& mode,
         long samples, std::uint64_t seed) {
        if (mode != "closed" && mode != "mc")
          throw std::invalid_argument("mode must be 'closed' or 'mc'");
        const Profile p{positions};
        const auto est = efficiency::expected_disconnected_fraction(
            config_for(lam, positions), p,
            mode == "mc" ? efficiency::DcMode::kMonteCarlo
                         : efficiency::DcMode::kClosedForm,
            samples, seed);
        return std::make_pair(est.mean, est.std_error);
      },
      py::arg("lam"), py::arg("positions"), py::arg("mode") = "closed",
      py::arg("samples") = 100000, py::arg("seed") = 42,
      "(mean, std_error); std_error is NaN in closed mode");
  m.def(
      "optimal_dc_profile",
      [](int n, double lam) {
        return efficiency::optimal_dc_profile(GameConfig{n, lam}).positions();
      },
      py::arg("n"), py::arg("lam"),
      "profile minimizing the expected disconnected fraction");
  m.def(
      "faultfree_ne_profile",
      [](int n) { return efficiency::faultfree_ne_profile(n).positions(); },
      py::arg("n"), "a fault-free equilibrium profile (none exists for n = 3)");
  m.def(
      "access_cost",
      [](const std::vector<double>& positions, const std::vector<double>& faults,
         double psi) {
        const auto c =
            efficiency::access_cost(Profile{positions}, FaultSet{faults}, {psi});
        py::dict d;
        d["total"] = c.total;
        d["transport"] = c.transport;
        d["disconnect"] = c.disconnect;
        return d;
      },
      py::arg("positions"), py::arg("faults"), py::arg("psi") = 100.0);
}
