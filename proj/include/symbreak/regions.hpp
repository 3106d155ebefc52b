#ifndef SYMBREAK_REGIONS_HPP
#define SYMBREAK_REGIONS_HPP

#include <string>
#include <vector>

#include "symbreak/radial_opt.hpp"

namespace symbreak {

// Classification of the critical-case (theta, a) strip into the existence and
// symmetry zones, with the threshold curves sampled along the grid columns.

/// Comparison threshold a*_CKN(p): the unique a with
/// C_GN(p) = C*_CKN(vartheta(p,d), p, a), located by bisection through the
/// Lambda-scaling law of the radial constant (monotone in a on (-inf, a_c)).
double a_star_ckn(double p, int d, const OptimizerOptions& opts = {});

struct WlhCrossRoute {
  double numeric_a = 0.0;     // root of C_LS = C*_WLH(d/4, a) via the optimizer
  double closed_form_a = 0.0; // a_c - sqrt(Lambda*_WLH)
  double difference = 0.0;
  double residual_at_closed = 0.0; // relative defect of the defining equation
};

/// Numeric-vs-closed-form comparison for a*_WLH, d >= 3.
WlhCrossRoute a_star_wlh_check(int d, const OptimizerOptions& opts = {});

/// Threshold curves of one grid column (fixed theta, hence fixed p).
struct CurveColumn {
  double x = 0.0;  // theta = vartheta(p,d)
  double p = 0.0;  // 2d / (d - 2 theta)
  bool valid = false;
  double a_bar = 0.0;
  double a_star = 0.0; // a*_CKN
  double a0 = 0.0;
  double a1 = 0.0;
};

struct RegionCell {
  double x = 0.0;
  double a = 0.0;
  bool outside_domain = false;
  // existence flags
  bool radial_extremal = false; // a >= a0
  bool apriori = false;         // a > a1
  bool gn_comparison = false;   // a > a*_CKN
  // symmetry flags
  bool linearization_break = false; // a < a_bar
  bool gn_break = false;            // a < a*_CKN
  bool schwarz_symmetric = false;   // a0 <= a < a_c
  bool unknown = false;
};

struct MapSpec {
  int d = 5;
  bool critical = true;
  double x_min = 0.2;
  double x_max = 0.999;
  double a_min = -2.0;
  double a_max = 1.5;
  int nx = 100;
  int ny = 100;
  OptimizerOptions opt;
  std::string cache_path; // curve cache (JSON), written atomically when set
};

struct RegionMap {
  MapSpec spec;
  double a_c = 0.0;
  double sobolev = 0.0;
  std::vector<CurveColumn> curves; // one per column
  std::vector<RegionCell> cells;   // row-major: cell(ix, iy) = cells[ix*ny+iy]
};

/// Pure cell classification against a sampled curve column.
RegionCell classify(const CurveColumn& col, double a, int d);

/// Samples the four threshold curves along the columns (optimizer work) and
/// classifies every cell. Aborts with a diagnostic if a column violates the
/// a0 > max(a_bar, a*_CKN) consistency needed for disjoint verdicts.
RegionMap build_map(const MapSpec& spec);

/// Writes PREFIX.csv / PREFIX.json / PREFIX_panel_a.svg + PREFIX_panel_b.svg
/// for the requested formats ("csv", "json", "svg").
void emit(const RegionMap& map, const std::string& prefix,
          const std::vector<std::string>& formats);

/// Reads back the flag matrix of an emitted CSV (round-trip checks).
std::vector<RegionCell> read_region_csv(const std::string& path);

} // namespace symbreak

#endif
