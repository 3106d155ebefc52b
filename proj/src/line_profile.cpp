#include "symbreak/line_profile.hpp"

#include <cmath>
#include <stdexcept>

#include "symbreak/special.hpp"

namespace symbreak {

std::vector<double> trapezoid_weights(const LineGrid& g) {
  if (g.n < 16) throw std::invalid_argument("trapezoid_weights: n >= 16 required");
  if (!(g.length > 0.0)) throw std::invalid_argument("trapezoid_weights: L > 0 required");
  const double h = g.step();
  std::vector<double> w(g.n, h);
  w.front() = 0.5 * h;
  w.back() = 0.5 * h;
  return w;
}

LineProfile make_profile(const LineGrid& g, std::vector<double> values) {
  if (static_cast<int>(values.size()) != g.n) {
    throw std::invalid_argument("make_profile: value count must match grid");
  }
  LineProfile v;
  v.grid = g;
  v.values = std::move(values);
  v.quad_weights = trapezoid_weights(g);
  return v;
}

LineProfile sample_profile(const LineGrid& g, const std::function<double(double)>& f,
                           const std::function<double(double)>& df) {
  std::vector<double> vals(g.n);
  for (int i = 0; i < g.n; ++i) vals[i] = f(g.s(i));
  LineProfile v = make_profile(g, std::move(vals));
  v.sampler = f;
  v.deriv_sampler = df;
  return v;
}

double integrate(const LineProfile& v) {
  double s = 0.0;
  for (int i = 0; i < v.size(); ++i) s += v.quad_weights[i] * v.values[i];
  return s;
}

double mass_sq_line(const LineProfile& v) {
  double s = 0.0;
  for (int i = 0; i < v.size(); ++i) s += v.quad_weights[i] * v.values[i] * v.values[i];
  return s;
}

double p_integral_line(const LineProfile& v, double p) {
  double s = 0.0;
  for (int i = 0; i < v.size(); ++i) {
    s += v.quad_weights[i] * std::pow(std::fabs(v.values[i]), p);
  }
  return s;
}

double grad_sq_line_fd(const LineProfile& v) {
  const double h = v.step();
  double s = 0.0;
  for (int i = 0; i + 1 < v.size(); ++i) {
    const double d = v.values[i + 1] - v.values[i];
    s += d * d / h;
  }
  return s;
}

double grad_sq_line(const LineProfile& v) {
  if (v.deriv_sampler) {
    double s = 0.0;
    for (int i = 0; i < v.size(); ++i) {
      const double dv = v.deriv_sampler(v.grid.s(i));
      s += v.quad_weights[i] * dv * dv;
    }
    return s;
  }
  return grad_sq_line_fd(v);
}

double max_abs(const LineProfile& v) {
  double m = 0.0;
  for (double x : v.values) m = std::max(m, std::fabs(x));
  return m;
}

bool decays_at_ends(const LineProfile& v, double tol) {
  const double m = max_abs(v);
  if (m == 0.0) return true;
  return std::fabs(v.values.front()) <= tol * m && std::fabs(v.values.back()) <= tol * m;
}

double SphereData::surface() const { return sphere_surface(d); }

} // namespace symbreak
