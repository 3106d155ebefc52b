// symbreak: numerical toolkit for the weighted interpolation-inequality
// families (CKN / WLH): closed-form thresholds, radial optimal constants,
// linearized symmetry analysis, and existence / symmetry region maps.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "symbreak/closed_forms.hpp"
#include "symbreak/cylinder.hpp"
#include "symbreak/params.hpp"
#include "symbreak/radial_opt.hpp"
#include "symbreak/regions.hpp"
#include "symbreak/spectral.hpp"
#include "symbreak/special.hpp"

using namespace symbreak;
using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_inadmissible = 2;
constexpr int exit_nonconvergence = 3;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Flat JSON object with one key per quantity; inapplicable entries are null.
struct FlatJson {
  std::vector<std::pair<std::string, std::optional<double>>> entries;

  void put(const std::string& key, std::optional<double> v) { entries.emplace_back(key, v); }

  void print() const {
    std::printf("{");
    for (size_t i = 0; i < entries.size(); ++i) {
      std::printf("%s\"%s\": %s", i ? ", " : "", entries[i].first.c_str(),
                  entries[i].second ? fmt17(*entries[i].second).c_str() : "null");
    }
    std::printf("}\n");
  }
};

json estimate_to_json(const ConstantEstimate& est) {
  json j;
  j["value"] = est.value;
  j["family"] = to_string(est.family);
  j["grid"] = {{"length", est.grid.length}, {"n", est.grid.n}};
  j["residual"] = est.residual;
  j["iterations"] = est.iterations;
  j["converged"] = est.converged;
  return j;
}

OptimizerOptions options_from(int grid_n, double length, double tol) {
  OptimizerOptions o;
  o.n = grid_n;
  o.length = length;
  o.tol = tol;
  return o;
}

// ── constants ───────────────────────────────────────────────────────────

int run_constants(int d, double a, std::optional<double> b, std::optional<double> p,
                  std::optional<double> theta, std::optional<double> gamma, int grid_n,
                  double tol) {
  ParamSet ps;
  ps.d = d;
  ps.a = a;
  if (b) ps.b = *b;
  if (p) ps.p = *p;
  if (theta) ps.theta = *theta;
  if (gamma) ps.gamma = *gamma;
  const DerivedParams dp = derive(ps);

  if (!p && b) p = dp.p_of_ab;

  FlatJson out;
  out.put("a_c", dp.a_c);
  out.put("Lambda", dp.lambda);
  out.put("vartheta", p ? std::optional<double>(vartheta_of(d, *p)) : std::nullopt);
  out.put("p_ab", b ? std::optional<double>(dp.p_of_ab) : std::nullopt);

  std::optional<double> abar;
  if (p && theta && d >= 2 && *p > 2.0 && 2.0 * (*p) * (*theta) / (*p - 2.0) >= 1.0) {
    abar = a_bar(*theta, *p, d);
  }
  out.put("a_bar", abar);
  out.put("a_tilde",
          (gamma && d >= 2 && *gamma >= 0.25) ? std::optional<double>(a_tilde(*gamma, d))
                                              : std::nullopt);
  out.put("Lambda_SB",
          (gamma && *gamma > 0.25) ? std::optional<double>(lambda_sb(*gamma, d)) : std::nullopt);
  out.put("Lambda_star_WLH",
          d >= 2 ? std::optional<double>(lambda_star_wlh(d)) : std::nullopt);
  out.put("a_star_WLH", d >= 2 ? std::optional<double>(a_star_wlh(d)) : std::nullopt);

  std::optional<double> l0, a0, l1, a1;
  if (p && d >= 3 && *p > 2.0 && *p < two_star_of(d)) {
    const OptimizerOptions o = options_from(grid_n, 40.0, tol);
    const RadialSolution base = ckn_radial_constant(vartheta_of(d, *p), *p, 1.0, d, o);
    const double sd = sobolev_constant(d, o).value;
    if (!base.estimate.converged) return exit_nonconvergence;
    const ExistenceLevel e0 = lambda_0(*p, d, base.estimate.value, sd);
    const AprioriLevel e1 = lambda_1(*p, d, base.estimate.value, sd);
    l0 = e0.lambda;
    a0 = e0.a;
    l1 = e1.lambda;
    a1 = e1.a;
  }
  out.put("Lambda0", l0);
  out.put("a0", a0);
  out.put("Lambda1", l1);
  out.put("a1", a1);
  out.print();
  return exit_ok;
}

// ── radial-constant ─────────────────────────────────────────────────────

int run_radial_constant(const std::string& family, int d, std::optional<double> p,
                        std::optional<double> theta, std::optional<double> gamma,
                        std::optional<double> lambda, std::optional<double> a, int grid_n,
                        double length, double tol) {
  if (!lambda && a) lambda = lambda_of(*a, d);
  const OptimizerOptions o = options_from(grid_n, length, tol);

  ConstantEstimate est;
  if (family == "ckn") {
    if (!p || !theta || !lambda) throw std::invalid_argument("ckn needs --p --theta --lambda|--a");
    est = ckn_radial_constant(*theta, *p, *lambda, d, o).estimate;
  } else if (family == "wlh") {
    if (!gamma || !lambda) throw std::invalid_argument("wlh needs --gamma --lambda|--a");
    est = wlh_radial_constant(*gamma, *lambda, d, o).estimate;
  } else if (family == "gn") {
    if (!p) throw std::invalid_argument("gn needs --p");
    est = gn_constant(*p, d);
  } else if (family == "sobolev") {
    est = sobolev_constant(d, o);
  } else if (family == "logsobolev") {
    est = log_sobolev_constant(d).estimate;
  } else {
    throw std::invalid_argument("unknown family '" + family + "'");
  }
  std::printf("%s\n", estimate_to_json(est).dump(1).c_str());
  return est.converged ? exit_ok : exit_nonconvergence;
}

// ── spectrum / threshold ────────────────────────────────────────────────

int run_spectrum(int d, double p, double theta, double a, int kmax, int grid_n, double tol) {
  SpectralOptions o;
  o.n = grid_n;
  o.k_max = kmax;
  o.tol = std::max(tol, 1e-10);
  const SpectralReport rep = symmetry_verdict(theta, p, lambda_of(a, d), d, o);
  json j;
  j["verdict"] = to_string(rep.verdict);
  j["margin"] = rep.margin;
  j["sector_eigenvalues"] = json::object();
  for (const auto& [k, ev] : rep.sector_eigenvalues) {
    j["sector_eigenvalues"][std::to_string(k)] = ev;
  }
  j["maximizer"] = {{"value", rep.maximizer_value},
                    {"residual", rep.maximizer_residual},
                    {"grid", {{"length", rep.grid.length}, {"n", rep.grid.n}}}};
  std::printf("%s\n", j.dump(1).c_str());
  return exit_ok;
}

int run_threshold(const std::string& which, int d, std::optional<double> p,
                  std::optional<double> theta, std::optional<double> gamma, int grid_n,
                  double tol) {
  double value = 0.0;
  if (which == "a_bar") {
    if (!p || !theta) throw std::invalid_argument("a_bar needs --p --theta");
    value = a_bar(*theta, *p, d);
  } else if (which == "a_tilde") {
    if (!gamma) throw std::invalid_argument("a_tilde needs --gamma");
    value = a_tilde(*gamma, d);
  } else if (which == "a_star_ckn") {
    if (!p) throw std::invalid_argument("a_star_ckn needs --p");
    value = a_star_ckn(*p, d, options_from(grid_n, 40.0, tol));
  } else if (which == "a_star_wlh") {
    value = a_star_wlh(d);
  } else if (which == "a0" || which == "a1") {
    if (!p) throw std::invalid_argument(which + " needs --p");
    const OptimizerOptions o = options_from(grid_n, 40.0, tol);
    const RadialSolution base = ckn_radial_constant(vartheta_of(d, *p), *p, 1.0, d, o);
    if (!base.estimate.converged) return exit_nonconvergence;
    const double sd = sobolev_constant(d, o).value;
    value = (which == "a0") ? lambda_0(*p, d, base.estimate.value, sd).a
                            : lambda_1(*p, d, base.estimate.value, sd).a;
  } else if (which == "spectral") {
    if (!p || !theta) throw std::invalid_argument("spectral needs --p --theta");
    SpectralOptions o;
    o.n = grid_n;
    value = spectral_threshold(*theta, *p, d, o);
  } else {
    throw std::invalid_argument("unknown threshold '" + which + "'");
  }
  std::printf("%.17g\n", value);
  return exit_ok;
}

// ── map ─────────────────────────────────────────────────────────────────

int run_map(int d, bool critical, double x_min, double x_max, double a_min, double a_max, int nx,
            int ny, const std::string& out_prefix, const std::string& formats_csv, int grid_n,
            double tol) {
  MapSpec spec;
  spec.d = d;
  spec.critical = critical;
  spec.x_min = x_min;
  spec.x_max = x_max;
  spec.a_min = a_min;
  spec.a_max = a_max;
  spec.nx = nx;
  spec.ny = ny;
  spec.opt = options_from(grid_n, 40.0, tol);
  spec.cache_path = out_prefix + "_curves_cache.json";

  std::vector<std::string> formats;
  std::stringstream ss(formats_csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) formats.push_back(item);
  }

  const RegionMap map = build_map(spec);
  emit(map, out_prefix, formats);
  std::printf("map written to %s.{csv,json,svg} (%d x %d cells, %zu curve columns)\n",
              out_prefix.c_str(), nx, ny, map.curves.size());
  return exit_ok;
}

// ── verify ──────────────────────────────────────────────────────────────

LineProfile profile_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("verify: cannot open profile file " + path);
  std::vector<double> ss, vv;
  std::string line;
  while (std::getline(in, line)) {
    const size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    double s, v;
    if (!(row >> s >> v)) throw std::invalid_argument("verify: malformed profile row: " + line);
    if (!ss.empty() && !(s > ss.back())) {
      throw std::invalid_argument("verify: profile s-column must be strictly increasing");
    }
    ss.push_back(s);
    vv.push_back(v);
  }
  if (ss.size() < 16) throw std::invalid_argument("verify: profile needs at least 16 samples");

  const double length = std::min(-ss.front(), ss.back());
  if (!(length > 0.0)) {
    throw std::invalid_argument("verify: profile must cover a symmetric window around 0");
  }
  LineGrid g{length, std::max<int>(1024, static_cast<int>(ss.size()))};
  std::vector<double> vals(g.n);
  size_t j = 0;
  for (int i = 0; i < g.n; ++i) {
    const double s = g.s(i);
    while (j + 2 < ss.size() && ss[j + 1] < s) ++j;
    const double t = (s - ss[j]) / (ss[j + 1] - ss[j]);
    vals[i] = vv[j] + t * (vv[j + 1] - vv[j]);
  }
  return make_profile(g, std::move(vals));
}

int run_verify(const std::string& inequality, const std::string& profile, int d, double a,
               std::optional<double> p, std::optional<double> theta, std::optional<double> gamma,
               int grid_n, double tol) {
  const double lambda = lambda_of(a, d);
  if (!(a < a_critical(d))) throw std::invalid_argument("verify: a < a_c required");

  LineProfile v;
  if (profile == "gaussian") {
    v = sample_profile(LineGrid{20.0, grid_n}, [](double s) { return std::exp(-s * s); },
                       [](double s) { return -2.0 * s * std::exp(-s * s); });
  } else if (profile == "sech") {
    v = sample_profile(LineGrid{30.0, grid_n}, [](double s) { return 1.0 / std::cosh(s); },
                       [](double s) {
                         return -std::tanh(s) / std::cosh(s);
                       });
  } else if (profile.rfind("file:", 0) == 0) {
    v = profile_from_file(profile.substr(5));
  } else {
    throw std::invalid_argument("verify: profile must be gaussian|sech|file:PATH");
  }

  const OptimizerOptions o = options_from(grid_n, v.grid.length, tol);
  json j;
  bool satisfied = false;
  if (inequality == "ckn") {
    if (!p || !theta) throw std::invalid_argument("verify ckn needs --p --theta");
    const CylinderFunctionalValue f = eval_ckn_energy(v, *theta, lambda, *p, d);
    const double ratio = f.p_norm_sq / f.energy;
    const double radial = ckn_radial_constant(*theta, *p, lambda, d, o).estimate.value;
    satisfied = ratio <= radial * (1.0 + 1e-8);
    j = {{"inequality", "ckn"},
         {"p_norm_sq", f.p_norm_sq},
         {"grad_sq", f.grad_sq},
         {"mass_sq", f.mass_sq},
         {"energy", f.energy},
         {"ratio", ratio},
         {"radial_constant", radial},
         {"satisfied", satisfied}};
  } else if (inequality == "wlh") {
    if (!gamma) throw std::invalid_argument("verify wlh needs --gamma");
    const CylinderFunctionalValue f = eval_wlh_entropy(v, *gamma, lambda, d);
    const double radial = wlh_radial_constant(*gamma, lambda, d, o).estimate.value;
    satisfied = f.implied_constant <= radial * (1.0 + 1e-8);
    j = {{"inequality", "wlh"},
         {"entropy", f.entropy},
         {"grad_sq", f.grad_sq},
         {"implied_constant", f.implied_constant},
         {"radial_constant", radial},
         {"satisfied", satisfied}};
  } else {
    throw std::invalid_argument("verify: inequality must be ckn|wlh");
  }
  std::printf("%s\n", j.dump(1).c_str());
  return satisfied ? exit_ok : exit_nonconvergence;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbreak: sharp constants, symmetry breaking, and region maps for two "
               "families of weighted interpolation inequalities"};
  app.require_subcommand(1);

  int d = 3;
  double a = 0.0;
  std::optional<double> b, p, theta, gamma, lambda, a_opt;
  int grid_n = 2048;
  double length = 40.0;
  double tol = default_tol();

  auto add_common = [&](CLI::App* cmd, bool with_grid = true) {
    cmd->add_option("--d", d, "dimension");
    if (with_grid) {
      cmd->add_option("--grid-n", grid_n, "grid nodes");
      cmd->add_option("--tol", tol, "stationarity tolerance");
    }
  };

  // constants
  auto* c_const = app.add_subcommand("constants", "closed-form quantities as flat JSON");
  add_common(c_const);
  c_const->add_option("--a", a, "weight exponent a");
  c_const->add_option("--b", b, "weight exponent b");
  c_const->add_option("--p", p, "norm exponent p");
  c_const->add_option("--theta", theta, "interpolation exponent");
  c_const->add_option("--gamma", gamma, "WLH exponent");

  // radial-constant
  auto* c_rad = app.add_subcommand("radial-constant", "optimal radial constant by 1D optimization");
  std::string family = "ckn";
  c_rad->add_option("--family", family, "ckn|wlh|gn|sobolev|logsobolev")->required();
  add_common(c_rad);
  c_rad->add_option("--p", p, "norm exponent p");
  c_rad->add_option("--theta", theta, "interpolation exponent");
  c_rad->add_option("--gamma", gamma, "WLH exponent");
  c_rad->add_option("--lambda", lambda, "Lambda(a)");
  c_rad->add_option("--a", a_opt, "weight exponent a (alternative to --lambda)");
  c_rad->add_option("--length", length, "grid half-length");

  // spectrum
  auto* c_spec = app.add_subcommand("spectrum", "per-sector lowest eigenvalues and verdict");
  add_common(c_spec);
  double spec_p = 4.0, spec_theta = 1.0, spec_a = 0.0;
  int kmax = 3;
  c_spec->add_option("--p", spec_p, "norm exponent p")->required();
  c_spec->add_option("--theta", spec_theta, "interpolation exponent")->required();
  c_spec->add_option("--a", spec_a, "weight exponent a")->required();
  c_spec->add_option("--kmax", kmax, "highest harmonic sector");

  // threshold
  auto* c_thr = app.add_subcommand("threshold", "threshold value in a");
  std::string which = "a_bar";
  c_thr->add_option("--which", which, "a_bar|a_tilde|a_star_ckn|a_star_wlh|a0|a1|spectral")
      ->required();
  add_common(c_thr);
  c_thr->add_option("--p", p, "norm exponent p");
  c_thr->add_option("--theta", theta, "interpolation exponent");
  c_thr->add_option("--gamma", gamma, "WLH exponent");

  // map
  auto* c_map = app.add_subcommand("map", "existence / symmetry region map");
  bool critical = false;
  double x_min = 0.35, x_max = 0.985, a_min = -2.5, a_max = 1.6;
  int nx = 100, ny = 100;
  std::string out_prefix = "region_map", formats = "csv,json,svg";
  add_common(c_map);
  c_map->add_flag("--critical", critical, "critical case theta = vartheta(p,d)");
  c_map->add_option("--x-min", x_min, "theta range start");
  c_map->add_option("--x-max", x_max, "theta range end");
  c_map->add_option("--a-min", a_min, "a range start");
  c_map->add_option("--a-max", a_max, "a range end");
  c_map->add_option("--nx", nx, "columns");
  c_map->add_option("--ny", ny, "rows");
  c_map->add_option("--out", out_prefix, "output prefix")->required();
  c_map->add_option("--formats", formats, "comma list of csv,json,svg");

  // verify
  auto* c_ver = app.add_subcommand("verify", "evaluate one inequality at a profile");
  std::string inequality = "ckn", profile = "gaussian";
  c_ver->add_option("--inequality", inequality, "ckn|wlh")->required();
  c_ver->add_option("--profile", profile, "gaussian|sech|file:PATH")->required();
  add_common(c_ver);
  c_ver->add_option("--a", a, "weight exponent a")->required();
  c_ver->add_option("--p", p, "norm exponent p");
  c_ver->add_option("--theta", theta, "interpolation exponent");
  c_ver->add_option("--gamma", gamma, "WLH exponent");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_const->parsed()) return run_constants(d, a, b, p, theta, gamma, grid_n, tol);
    if (c_rad->parsed()) {
      return run_radial_constant(family, d, p, theta, gamma, lambda, a_opt, grid_n, length, tol);
    }
    if (c_spec->parsed()) return run_spectrum(d, spec_p, spec_theta, spec_a, kmax, grid_n, tol);
    if (c_thr->parsed()) return run_threshold(which, d, p, theta, gamma, grid_n, tol);
    if (c_map->parsed()) {
      return run_map(d, critical, x_min, x_max, a_min, a_max, nx, ny, out_prefix, formats,
                     grid_n, tol);
    }
    if (c_ver->parsed()) {
      return run_verify(inequality, profile, d, a, p, theta, gamma, grid_n, tol);
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_inadmissible;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_nonconvergence;
  }
  return exit_ok;
}
