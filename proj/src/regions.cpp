#include "symbreak/regions.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "symbreak/closed_forms.hpp"
#include "symbreak/params.hpp"
#include "symbreak/special.hpp"

namespace symbreak {

namespace {

using nlohmann::json;

// Bisection on a of  base * Lambda(a)^expo - target  inside (a_lo, a_hi),
// where the scaling exponent makes the left side strictly monotone in a.
double solve_scaling_root(double base, double expo, double target, int d, double a_lo,
                          double a_hi, const char* who) {
  auto f = [&](double a) { return base * std::pow(lambda_of(a, d), expo) - target; };
  double f_lo = f(a_lo), f_hi = f(a_hi);
  if (f_lo * f_hi > 0.0) {
    std::ostringstream msg;
    msg << who << ": root outside (" << a_lo << ", " << a_hi << "); endpoint values " << f_lo
        << " and " << f_hi;
    throw std::runtime_error(msg.str());
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a_lo + a_hi);
    if (mid == a_lo || mid == a_hi) break;
    if (f(mid) * f_lo <= 0.0) {
      a_hi = mid;
    } else {
      a_lo = mid;
      f_lo = f(a_lo);
    }
  }
  return 0.5 * (a_lo + a_hi);
}

} // namespace

double a_star_ckn(double p, int d, const OptimizerOptions& opts) {
  if (d < 2) throw std::invalid_argument("a_star_ckn: d >= 2 required");
  if (!(p > 2.0) || !(p < two_star_of(d))) {
    throw std::invalid_argument("a_star_ckn: p inside (2, 2*) required");
  }
  const double vt = vartheta_of(d, p);
  const RadialSolution base = ckn_radial_constant(vt, p, 1.0, d, opts);
  if (!base.estimate.converged) throw std::runtime_error("a_star_ckn: base run did not converge");
  const ConstantEstimate gn = gn_constant(p, d);
  const double expo = (p - 2.0) / (2.0 * p) - vt; // = -(d-1)(p-2)/(2p) < 0
  const double a_c = a_critical(d);
  return solve_scaling_root(base.estimate.value, expo, gn.value, d, a_c - 50.0, a_c - 1e-12,
                            "a_star_ckn");
}

WlhCrossRoute a_star_wlh_check(int d, const OptimizerOptions& opts) {
  if (d < 3) throw std::invalid_argument("a_star_wlh_check: d >= 3 required");
  const double gamma = 0.25 * d;
  const RadialSolution base = wlh_radial_constant(gamma, 1.0, d, opts);
  if (!base.estimate.converged) {
    throw std::runtime_error("a_star_wlh_check: base run did not converge");
  }
  const double c_ls = log_sobolev_constant(d).estimate.value;
  const double expo = -1.0 + 1.0 / (4.0 * gamma);
  const double a_c = a_critical(d);

  WlhCrossRoute out;
  out.numeric_a =
      solve_scaling_root(base.estimate.value, expo, c_ls, d, a_c - 50.0, a_c - 1e-12,
                         "a_star_wlh_check");
  out.closed_form_a = a_star_wlh(d);
  out.difference = out.numeric_a - out.closed_form_a;

  // Re-substitution at the closed form, through a direct optimizer run.
  const double lam_closed = lambda_star_wlh(d);
  const RadialSolution direct = wlh_radial_constant(gamma, lam_closed, d, opts);
  out.residual_at_closed = std::fabs(direct.estimate.value - c_ls) / c_ls;
  return out;
}

RegionCell classify(const CurveColumn& col, double a, int d) {
  RegionCell cell;
  cell.x = col.x;
  cell.a = a;
  const double a_c = a_critical(d);
  if (!col.valid || !(a < a_c)) {
    cell.outside_domain = true;
    return cell;
  }
  cell.radial_extremal = a >= col.a0;
  cell.apriori = a > col.a1;
  cell.gn_comparison = a > col.a_star;
  cell.linearization_break = a < col.a_bar;
  cell.gn_break = a < col.a_star;
  cell.schwarz_symmetric = (a >= col.a0 && a < a_c);
  cell.unknown = !cell.linearization_break && !cell.gn_break && !cell.schwarz_symmetric;
  if (cell.schwarz_symmetric && (cell.linearization_break || cell.gn_break)) {
    throw std::runtime_error("classify: zone consistency violated (schwarz vs breaking)");
  }
  return cell;
}

namespace {

json curves_to_json(const RegionMap& map) {
  json jc;
  for (const char* key : {"x", "p", "a_bar", "a_star", "a0", "a1"}) jc[key] = json::array();
  for (const CurveColumn& c : map.curves) {
    if (!c.valid) continue;
    jc["x"].push_back(c.x);
    jc["p"].push_back(c.p);
    jc["a_bar"].push_back(c.a_bar);
    jc["a_star"].push_back(c.a_star);
    jc["a0"].push_back(c.a0);
    jc["a1"].push_back(c.a1);
  }
  return jc;
}

bool load_curve_cache(const MapSpec& spec, std::vector<CurveColumn>& curves, double& sobolev) {
  if (spec.cache_path.empty()) return false;
  std::ifstream in(spec.cache_path);
  if (!in) return false;
  json j;
  try {
    in >> j;
  } catch (...) {
    return false;
  }
  if (j.value("d", -1) != spec.d || j.value("nx", -1) != spec.nx ||
      j.value("x_min", 0.0) != spec.x_min || j.value("x_max", 0.0) != spec.x_max ||
      j.value("grid_n", -1) != spec.opt.n) {
    return false;
  }
  curves.clear();
  for (const json& jc : j["columns"]) {
    CurveColumn c;
    c.x = jc["x"];
    c.p = jc["p"];
    c.valid = jc["valid"];
    if (c.valid) {
      c.a_bar = jc["a_bar"];
      c.a_star = jc["a_star"];
      c.a0 = jc["a0"];
      c.a1 = jc["a1"];
    }
    curves.push_back(c);
  }
  sobolev = j.value("sobolev", 0.0);
  return static_cast<int>(curves.size()) == spec.nx;
}

void store_curve_cache(const MapSpec& spec, const std::vector<CurveColumn>& curves,
                       double sobolev) {
  if (spec.cache_path.empty()) return;
  json j;
  j["d"] = spec.d;
  j["nx"] = spec.nx;
  j["x_min"] = spec.x_min;
  j["x_max"] = spec.x_max;
  j["grid_n"] = spec.opt.n;
  j["sobolev"] = sobolev;
  j["columns"] = json::array();
  for (const CurveColumn& c : curves) {
    json jc;
    jc["x"] = c.x;
    jc["p"] = c.p;
    jc["valid"] = c.valid;
    if (c.valid) {
      jc["a_bar"] = c.a_bar;
      jc["a_star"] = c.a_star;
      jc["a0"] = c.a0;
      jc["a1"] = c.a1;
    }
    j["columns"].push_back(jc);
  }
  // Write-then-rename so readers never observe a torn cache.
  const std::string tmp = spec.cache_path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("curve cache: cannot write " + tmp);
    out << j.dump(1);
  }
  if (std::rename(tmp.c_str(), spec.cache_path.c_str()) != 0) {
    throw std::runtime_error("curve cache: rename failed for " + spec.cache_path);
  }
}

} // namespace

RegionMap build_map(const MapSpec& spec) {
  if (spec.d < 3) throw std::invalid_argument("build_map: d >= 3 required (a0/a1 curves)");
  if (!spec.critical) {
    throw std::invalid_argument("build_map: only the critical mode theta = vartheta(p,d) is mapped");
  }
  RegionMap map;
  map.spec = spec;
  map.a_c = a_critical(spec.d);

  double sobolev = 0.0;
  if (!load_curve_cache(spec, map.curves, sobolev) || !(sobolev > 0.0)) {
    map.curves.clear();
    sobolev = (spec.nx > 0) ? sobolev_constant(spec.d, spec.opt).value : 0.0;
    for (int ix = 0; ix < spec.nx; ++ix) {
      const double x = (spec.nx == 1)
                           ? spec.x_min
                           : spec.x_min + (spec.x_max - spec.x_min) * ix / (spec.nx - 1.0);
      CurveColumn col;
      col.x = x;
      col.p = 2.0 * spec.d / (spec.d - 2.0 * x);
      const bool admissible_p = (x > 0.0 && x < 1.0 && col.p > 2.0 && col.p < two_star_of(spec.d));
      if (admissible_p) {
        const RadialSolution base = ckn_radial_constant(x, col.p, 1.0, spec.d, spec.opt);
        const ConstantEstimate gn = gn_constant(col.p, spec.d);
        if (base.estimate.converged) {
          col.valid = true;
          col.a_bar = a_bar(x, col.p, spec.d);
          const double expo = (col.p - 2.0) / (2.0 * col.p) - x;
          col.a_star = solve_scaling_root(base.estimate.value, expo, gn.value, spec.d,
                                          map.a_c - 50.0, map.a_c - 1e-12, "build_map");
          col.a0 = lambda_0(col.p, spec.d, base.estimate.value, sobolev).a;
          col.a1 = lambda_1(col.p, spec.d, base.estimate.value, sobolev).a;
          if (!(col.a0 > col.a_bar) || !(col.a0 > col.a_star)) {
            std::ostringstream msg;
            msg << "build_map: curve consistency violated at theta = " << x
                << " (a0 = " << col.a0 << ", a_bar = " << col.a_bar
                << ", a_star = " << col.a_star << ")";
            throw std::runtime_error(msg.str());
          }
        }
      }
      map.curves.push_back(col);
    }
    store_curve_cache(spec, map.curves, sobolev);
  }
  map.sobolev = sobolev;

  map.cells.reserve(static_cast<size_t>(spec.nx) * spec.ny);
  for (int ix = 0; ix < spec.nx; ++ix) {
    for (int iy = 0; iy < spec.ny; ++iy) {
      const double a = (spec.ny == 1)
                           ? spec.a_min
                           : spec.a_min + (spec.a_max - spec.a_min) * iy / (spec.ny - 1.0);
      map.cells.push_back(classify(map.curves[ix], a, spec.d));
    }
  }
  return map;
}

// ── emission ────────────────────────────────────────────────────────────

namespace {

void emit_csv(const RegionMap& map, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit: cannot write " + path);
  out << "x,a,outside_domain,radial_extremal,apriori,gn_comparison,"
         "linearization_break,gn_break,schwarz_symmetric,unknown\n";
  out.precision(17);
  for (const RegionCell& c : map.cells) {
    out << c.x << ',' << c.a << ',' << int(c.outside_domain) << ',' << int(c.radial_extremal)
        << ',' << int(c.apriori) << ',' << int(c.gn_comparison) << ','
        << int(c.linearization_break) << ',' << int(c.gn_break) << ','
        << int(c.schwarz_symmetric) << ',' << int(c.unknown) << '\n';
  }
}

void emit_json(const RegionMap& map, const std::string& path) {
  json j;
  j["d"] = map.spec.d;
  j["critical"] = map.spec.critical;
  j["x_axis"] = "theta = vartheta(p,d), p = 2d/(d-2 theta)";
  j["nx"] = map.spec.nx;
  j["ny"] = map.spec.ny;
  j["x_min"] = map.spec.x_min;
  j["x_max"] = map.spec.x_max;
  j["a_min"] = map.spec.a_min;
  j["a_max"] = map.spec.a_max;
  j["a_c"] = map.a_c;
  j["sobolev"] = map.sobolev;
  j["lambda1_reading"] =
      "min{(C^{1/theta}/S_d)^{d/(d-1)}, (a_c^2 C^{1/theta}/S_d)^d}, brace closed at end";
  j["curves"] = curves_to_json(map);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit: cannot write " + path);
  out << j.dump(1) << '\n';
}

struct ZonePaint {
  const char* fill;
  int zone; // legend index
};

ZonePaint paint_existence(const RegionCell& c) {
  if (c.outside_domain) return {"#ffffff", 0};
  if (c.radial_extremal) return {"#1f4e9c", 1}; // zone (1): a >= a0
  if (c.apriori) return {"#4f81c7", 2};         // zone (2): a > a1
  if (c.gn_comparison) return {"#9dc3e6", 3};   // zone (3): a > a*_CKN
  return {"#e8e8e8", 0};
}

ZonePaint paint_symmetry(const RegionCell& c) {
  if (c.outside_domain) return {"#ffffff", 0};
  if (c.linearization_break) return {"#a31515", 1};   // zone (1): a < a_bar
  if (c.gn_break) return {"#e06666", 2};              // zone (2): a < a*_CKN
  if (c.schwarz_symmetric) return {"url(#hatch)", 4}; // zone (4)
  return {"#bdbdbd", 3};                              // zone (3): unknown
}

template <typename Paint>
void emit_svg_panel(const RegionMap& map, const std::string& path, Paint paint,
                    const std::vector<std::pair<std::string, std::string>>& legend) {
  const MapSpec& s = map.spec;
  const double width = 640.0, height = 480.0, mleft = 60.0, mbot = 40.0, mtop = 20.0,
               mright = 160.0;
  const double pw = width - mleft - mright, ph = height - mtop - mbot;
  auto sx = [&](double x) {
    return mleft + (x - s.x_min) / (s.x_max - s.x_min + 1e-300) * pw;
  };
  auto sy = [&](double a) {
    return mtop + (s.a_max - a) / (s.a_max - s.a_min + 1e-300) * ph;
  };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit: cannot write " + path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
      << "'>\n";
  out << "<defs><pattern id='hatch' width='6' height='6' patternTransform='rotate(45)' "
         "patternUnits='userSpaceOnUse'><rect width='6' height='6' fill='#dce6f2'/>"
         "<line x1='0' y1='0' x2='0' y2='6' stroke='#2e5aa8' stroke-width='1.5'/></pattern>"
         "</defs>\n";

  const double cw = (s.nx > 0) ? pw / s.nx : pw;
  const double ch = (s.ny > 0) ? ph / s.ny : ph;
  for (int ix = 0; ix < s.nx; ++ix) {
    for (int iy = 0; iy < s.ny; ++iy) {
      const RegionCell& c = map.cells[static_cast<size_t>(ix) * s.ny + iy];
      const ZonePaint zp = paint(c);
      out << "<rect x='" << sx(c.x) - 0.5 * cw << "' y='" << sy(c.a) - 0.5 * ch << "' width='"
          << cw + 0.5 << "' height='" << ch + 0.5 << "' fill='" << zp.fill << "'/>\n";
    }
  }

  auto polyline = [&](auto getter, const char* color, const char* name) {
    std::ostringstream pts;
    for (const CurveColumn& c : map.curves) {
      if (!c.valid) continue;
      const double a = getter(c);
      if (a < s.a_min || a > s.a_max) continue;
      pts << sx(c.x) << ',' << sy(a) << ' ';
    }
    const std::string body = pts.str();
    if (!body.empty()) {
      out << "<polyline fill='none' stroke='" << color << "' stroke-width='1.6' points='" << body
          << "'><title>" << name << "</title></polyline>\n";
    }
  };
  polyline([](const CurveColumn& c) { return c.a_bar; }, "#5b0f0f", "a_bar");
  polyline([](const CurveColumn& c) { return c.a_star; }, "#0f5b24", "a_star_CKN");
  polyline([](const CurveColumn& c) { return c.a0; }, "#101010", "a0");
  polyline([](const CurveColumn& c) { return c.a1; }, "#7a5c00", "a1");

  // axes and legend
  out << "<rect x='" << mleft << "' y='" << mtop << "' width='" << pw << "' height='" << ph
      << "' fill='none' stroke='#000'/>\n";
  out << "<text x='" << mleft + 0.5 * pw << "' y='" << height - 8
      << "' font-size='13' text-anchor='middle'>theta</text>\n";
  out << "<text x='16' y='" << mtop + 0.5 * ph << "' font-size='13' text-anchor='middle' "
      << "transform='rotate(-90 16 " << mtop + 0.5 * ph << ")'>a</text>\n";
  double ly = mtop + 12.0;
  for (const auto& [swatch, label] : legend) {
    out << "<rect x='" << width - mright + 10 << "' y='" << ly - 10
        << "' width='14' height='14' fill='" << swatch << "' stroke='#444'/>\n";
    out << "<text x='" << width - mright + 30 << "' y='" << ly + 2 << "' font-size='12'>" << label
        << "</text>\n";
    ly += 20.0;
  }
  out << "</svg>\n";
}

} // namespace

void emit(const RegionMap& map, const std::string& prefix,
          const std::vector<std::string>& formats) {
  for (const std::string& fmt : formats) {
    if (fmt == "csv") {
      emit_csv(map, prefix + ".csv");
    } else if (fmt == "json") {
      emit_json(map, prefix + ".json");
    } else if (fmt == "svg") {
      emit_svg_panel(map, prefix + "_panel_a.svg", paint_existence,
                     {{"#1f4e9c", "(1) a >= a0 (radial extremal)"},
                      {"#4f81c7", "(2) a > a1 (a priori)"},
                      {"#9dc3e6", "(3) a > a*_CKN (GN comparison)"},
                      {"#e8e8e8", "no criterion"}});
      emit_svg_panel(map, prefix + "_panel_b.svg", paint_symmetry,
                     {{"#a31515", "(1) a < a_bar (linearization)"},
                      {"#e06666", "(2) a < a*_CKN (GN comparison)"},
                      {"#bdbdbd", "(3) unknown"},
                      {"url(#hatch)", "(4) a0 <= a < a_c (Schwarz)"}});
    } else {
      throw std::invalid_argument("emit: unknown format '" + fmt + "'");
    }
  }
}

std::vector<RegionCell> read_region_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_region_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_region_csv: empty file " + path);
  std::vector<RegionCell> cells;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    RegionCell c;
    int flags[8];
    std::istringstream ss(line);
    char comma;
    ss >> c.x >> comma >> c.a;
    for (int& f : flags) ss >> comma >> f;
    if (!ss) throw std::runtime_error("read_region_csv: malformed row in " + path);
    c.outside_domain = flags[0];
    c.radial_extremal = flags[1];
    c.apriori = flags[2];
    c.gn_comparison = flags[3];
    c.linearization_break = flags[4];
    c.gn_break = flags[5];
    c.schwarz_symmetric = flags[6];
    c.unknown = flags[7];
    cells.push_back(c);
  }
  return cells;
}

} // namespace symbreak
