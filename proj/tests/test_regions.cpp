#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "symbreak/closed_forms.hpp"
#include "symbreak/params.hpp"
#include "symbreak/regions.hpp"

using namespace symbreak;

namespace {

OptimizerOptions fast_opts(int n = 1024) {
  OptimizerOptions o;
  o.n = n;
  return o;
}

MapSpec small_map_spec(int nx, int ny) {
  MapSpec s;
  s.d = 5;
  s.x_min = 0.3;
  s.x_max = 0.95;
  s.a_min = -1.5;
  s.a_max = 1.6;
  s.nx = nx;
  s.ny = ny;
  s.opt = fast_opts(512);
  return s;
}

} // namespace

TEST_CASE("a_star_ckn: root re-substitution closes the defining equation") {
  const double p = 3.0;
  const int d = 5;
  const OptimizerOptions o = fast_opts(4096);
  const double a_star = a_star_ckn(p, d, o);
  CHECK(a_star < a_critical(d));

  const double vt = vartheta_of(d, p);
  const double c_gn = gn_constant(p, d).value;
  const double c_at_root =
      ckn_radial_constant(vt, p, lambda_of(a_star, d), d, o).estimate.value;
  CHECK(std::fabs(c_at_root - c_gn) <= 1e-6 * c_gn);
}

TEST_CASE("a_bar sits below a_star_ckn for small p - 2 and above near theta = 1") {
  const int d = 5;
  const OptimizerOptions o = fast_opts();

  const double theta_lo = 0.5; // p = 2.5
  const double p_lo = 2.0 * d / (d - 2.0 * theta_lo);
  CHECK(a_bar(theta_lo, p_lo, d) < a_star_ckn(p_lo, d, o));

  const double theta_hi = 0.95; // p close to 2*
  const double p_hi = 2.0 * d / (d - 2.0 * theta_hi);
  CHECK(a_bar(theta_hi, p_hi, d) > a_star_ckn(p_hi, d, o));
}

TEST_CASE("a_star_wlh cross route: numeric solve matches the closed form") {
  const WlhCrossRoute r = a_star_wlh_check(3, fast_opts(2048));
  CHECK(std::fabs(r.difference) <= 1e-3);
  CHECK(r.residual_at_closed <= 1e-3);
  CHECK(r.closed_form_a == doctest::Approx(a_star_wlh(3)).epsilon(1e-14));
}

TEST_CASE("classify: flags follow the curve comparisons") {
  CurveColumn col;
  col.x = 0.6;
  col.p = 2.0 * 5 / (5 - 2.0 * 0.6);
  col.valid = true;
  col.a_bar = -0.8;
  col.a_star = -0.5;
  col.a0 = 0.4;
  col.a1 = 0.1;
  const int d = 5;

  const RegionCell deep = classify(col, -1.2, d);
  CHECK(deep.linearization_break);
  CHECK(deep.gn_break);
  CHECK_FALSE(deep.schwarz_symmetric);
  CHECK_FALSE(deep.unknown);

  const RegionCell schwarz = classify(col, 0.9, d);
  CHECK(schwarz.schwarz_symmetric);
  CHECK(schwarz.radial_extremal);
  CHECK(schwarz.apriori);
  CHECK(schwarz.gn_comparison);
  CHECK_FALSE(schwarz.linearization_break);

  const RegionCell gap = classify(col, 0.0, d);
  CHECK(gap.unknown);
  CHECK_FALSE(gap.schwarz_symmetric);
  CHECK_FALSE(gap.linearization_break);
  CHECK_FALSE(gap.gn_break);

  const RegionCell outside = classify(col, 2.0, d); // a >= a_c
  CHECK(outside.outside_domain);

  CurveColumn invalid;
  invalid.valid = false;
  CHECK(classify(invalid, 0.0, d).outside_domain);
}

TEST_CASE("build_map + emit + csv round trip, curve cache reuse") {
  MapSpec spec = small_map_spec(5, 7);
  spec.cache_path = "regions_test_cache.json";
  std::remove(spec.cache_path.c_str());

  const RegionMap map1 = build_map(spec);
  CHECK(map1.cells.size() == 35);
  CHECK(map1.curves.size() == 5);
  for (const CurveColumn& c : map1.curves) {
    if (!c.valid) continue;
    CHECK(c.a0 > c.a_bar);
    CHECK(c.a0 > c.a_star);
    // every threshold curve lies strictly below a_c
    const double a_c = a_critical(spec.d);
    CHECK(c.a0 < a_c);
    CHECK(c.a1 < a_c);
    CHECK(c.a_bar < a_c);
    CHECK(c.a_star < a_c);
  }

  // zone consistency on every cell
  for (const RegionCell& c : map1.cells) {
    const bool clash = c.schwarz_symmetric && (c.linearization_break || c.gn_break);
    CHECK_FALSE(clash);
  }

  emit(map1, "regions_test_map", {"csv", "json", "svg"});
  const std::vector<RegionCell> parsed = read_region_csv("regions_test_map.csv");
  REQUIRE(parsed.size() == map1.cells.size());
  for (size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed[i].outside_domain == map1.cells[i].outside_domain);
    CHECK(parsed[i].radial_extremal == map1.cells[i].radial_extremal);
    CHECK(parsed[i].apriori == map1.cells[i].apriori);
    CHECK(parsed[i].gn_comparison == map1.cells[i].gn_comparison);
    CHECK(parsed[i].linearization_break == map1.cells[i].linearization_break);
    CHECK(parsed[i].gn_break == map1.cells[i].gn_break);
    CHECK(parsed[i].schwarz_symmetric == map1.cells[i].schwarz_symmetric);
    CHECK(parsed[i].unknown == map1.cells[i].unknown);
  }

  // second build hits the cache and classifies identically (bit-for-bit)
  const RegionMap map2 = build_map(spec);
  REQUIRE(map2.cells.size() == map1.cells.size());
  for (size_t i = 0; i < map1.cells.size(); ++i) {
    CHECK(map2.cells[i].x == map1.cells[i].x);
    CHECK(map2.cells[i].a == map1.cells[i].a);
    CHECK(map2.cells[i].unknown == map1.cells[i].unknown);
    CHECK(map2.cells[i].schwarz_symmetric == map1.cells[i].schwarz_symmetric);
  }
  std::remove(spec.cache_path.c_str());
}

TEST_CASE("emit handles degenerate grids") {
  MapSpec spec = small_map_spec(0, 0);
  const RegionMap empty = build_map(spec);
  CHECK(empty.cells.empty());
  emit(empty, "regions_test_empty", {"csv", "json", "svg"});
  CHECK(read_region_csv("regions_test_empty.csv").empty());
  std::ifstream json_in("regions_test_empty.json");
  CHECK(json_in.good());

  MapSpec spec2 = small_map_spec(2, 2);
  spec2.x_min = 0.5;
  spec2.x_max = 0.7;
  const RegionMap two = build_map(spec2);
  emit(two, "regions_test_two", {"csv"});
  CHECK(read_region_csv("regions_test_two.csv").size() == 4);
}

TEST_CASE("build_map rejects unsupported configurations") {
  MapSpec bad = small_map_spec(2, 2);
  bad.d = 2;
  CHECK_THROWS(build_map(bad));
  MapSpec noncrit = small_map_spec(2, 2);
  noncrit.critical = false;
  CHECK_THROWS(build_map(noncrit));
}
