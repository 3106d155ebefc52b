#include "symbreak/params.hpp"

#include <cmath>
#include <stdexcept>

namespace symbreak {

double a_critical(int d) { return 0.5 * (d - 2); }

double lambda_of(double a, int d) {
  const double diff = a - a_critical(d);
  return diff * diff;
}

double vartheta_of(int d, double p) { return d * (p - 2.0) / (2.0 * p); }

double p_from_ab(int d, double a, double b) {
  return 2.0 * d / (d - 2.0 + 2.0 * (b - a));
}

double two_star_of(int d) {
  if (d >= 3) return 2.0 * d / (d - 2.0);
  return std::numeric_limits<double>::infinity();
}

DerivedParams derive(const ParamSet& ps) {
  if (ps.d < 1) throw std::invalid_argument("derive: dimension d >= 1 required");
  if (is_set(ps.p) && ps.p <= 0.0) {
    throw std::invalid_argument("derive: p > 0 required on the CKN branch");
  }
  DerivedParams out;
  out.a_c = a_critical(ps.d);
  out.lambda = lambda_of(ps.a, ps.d);
  out.two_star = two_star_of(ps.d);
  if (is_set(ps.p)) out.vartheta = vartheta_of(ps.d, ps.p);
  if (is_set(ps.b)) out.p_of_ab = p_from_ab(ps.d, ps.a, ps.b);
  return out;
}

namespace {

Verdict fail(std::string why) { return Verdict{false, std::move(why)}; }

} // namespace

Verdict admissible(const ParamSet& ps, Family family) {
  if (ps.d < 1) return fail("d >= 1 required");
  const double a_c = a_critical(ps.d);
  if (!(ps.a < a_c)) return fail("a < a_c required");

  if (family == Family::wlh) {
    if (!is_set(ps.gamma)) return fail("gamma required for WLH");
    // For d = 2 the strict gamma > 1/2 window subsumes gamma >= d/4, so it is
    // the condition named on a violation.
    if (ps.d == 2 && !(ps.gamma > 0.5)) return fail("gamma > 1/2 required when d=2");
    if (!(ps.gamma >= 0.25 * ps.d)) return fail("gamma >= d/4 required");
    return {};
  }

  // CKN windows on b, then p = p(a,b), then theta.
  if (!is_set(ps.b)) return fail("b required for CKN");
  if (ps.d == 1) {
    if (!(ps.b > ps.a + 0.5)) return fail("b > a+1/2 required when d=1");
    if (!(ps.b <= ps.a + 1.0)) return fail("b <= a+1 violated");
  } else if (ps.d == 2) {
    if (!(ps.b > ps.a)) return fail("b > a required when d=2");
    if (!(ps.b <= ps.a + 1.0)) return fail("b <= a+1 violated");
  } else {
    if (!(ps.b >= ps.a)) return fail("b >= a required when d>=3");
    if (!(ps.b <= ps.a + 1.0)) return fail("b <= a+1 violated");
  }

  const double p = p_from_ab(ps.d, ps.a, ps.b);
  if (is_set(ps.p) && std::fabs(ps.p - p) > 1e-10 * std::max(1.0, std::fabs(p))) {
    return fail("p must equal p(a,b)");
  }

  if (!is_set(ps.theta)) return fail("theta required for CKN");
  if (!(ps.theta <= 1.0)) return fail("theta <= 1 required");
  if (ps.d == 1) {
    if (!(ps.theta > 0.5)) return fail("theta > 1/2 required when d=1");
  } else {
    if (!(ps.theta >= vartheta_of(ps.d, p))) return fail("theta >= vartheta(d,p) required");
  }
  return {};
}

} // namespace symbreak
