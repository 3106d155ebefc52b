#include "symbreak/cylinder.hpp"

#include <cmath>
#include <stdexcept>

#include "symbreak/params.hpp"
#include "symbreak/special.hpp"

namespace symbreak {

namespace {

constexpr double k_decay_refusal = 1e-10;

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Cubic (4-point Lagrange) interpolation of a discrete profile; values past
// the truncation are taken as zero, which is only valid for decayed tails.
double interp_cubic(const LineProfile& v, double s) {
  const double L = v.grid.length;
  if (s < -L || s > L) return 0.0;
  const double h = v.step();
  const double x = (s + L) / h;
  int i1 = static_cast<int>(std::floor(x));
  if (i1 < 1) i1 = 1;
  if (i1 > v.size() - 3) i1 = v.size() - 3;
  const double t = x - i1;
  const double y0 = v.values[i1 - 1], y1 = v.values[i1], y2 = v.values[i1 + 1],
               y3 = v.values[i1 + 2];
  // Catmull-Rom form.
  return y1 + 0.5 * t * (y2 - y0 + t * (2 * y0 - 5 * y1 + 4 * y2 - y3 + t * (3 * (y1 - y2) + y3 - y0)));
}

LineProfile rescale_line(const LineProfile& v, double sigma) {
  const LineGrid& g = v.grid;
  if (v.has_sampler()) {
    auto f = v.sampler;
    std::function<double(double)> df;
    if (v.deriv_sampler) {
      auto d0 = v.deriv_sampler;
      df = [d0, sigma](double s) { return sigma * d0(sigma * s); };
    }
    return sample_profile(g, [f, sigma](double s) { return f(sigma * s); }, df);
  }
  // Discrete path: for sigma < 1 the rescaled profile samples interior values
  // near the boundary; refuse when those have not decayed.
  const double m = max_abs(v);
  if (m > 0.0) {
    const double edge = std::fabs(interp_cubic(v, sigma * g.length));
    if (edge > k_decay_refusal * m) {
      throw std::runtime_error("sigma_rescale: profile escapes the truncated grid");
    }
  }
  std::vector<double> vals(g.n);
  for (int i = 0; i < g.n; ++i) vals[i] = interp_cubic(v, sigma * g.s(i));
  return make_profile(g, std::move(vals));
}

// Angular integral over S^{d-1} of g(Y_1(omega)) for the unit-normalized
// degree-one harmonic Y_1 = sqrt(d/|S^{d-1}|) omega_1, reduced to
//   |S^{d-2}| * int_0^pi g(c cos phi) sin^{d-2}(phi) dphi
// and evaluated by composite Simpson (the integrand is smooth in phi).
double angular_integral(double v0, double v1_c, double p, int d, int n_phi = 256) {
  const double wdm1 = sphere_surface(d - 1);
  const double h = pi / n_phi;
  double acc = 0.0;
  for (int j = 0; j <= n_phi; ++j) {
    const double phi = j * h;
    const double val = std::pow(std::fabs(v0 + v1_c * std::cos(phi)), p) *
                       std::pow(std::sin(phi), double(d - 2));
    double w = (j == 0 || j == n_phi) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    acc += w * val;
  }
  return wdm1 * acc * h / 3.0;
}

} // namespace

LineProfile emden_fowler_forward(const LineGrid& g, const std::vector<double>& u_log_radial,
                                 double a, int d) {
  if (static_cast<int>(u_log_radial.size()) != g.n) {
    throw std::invalid_argument("emden_fowler_forward: sample count must match grid");
  }
  const double ac = a_critical(d);
  std::vector<double> vals(g.n);
  for (int i = 0; i < g.n; ++i) vals[i] = std::exp((ac - a) * g.s(i)) * u_log_radial[i];
  LineProfile v = make_profile(g, std::move(vals));
  if (!decays_at_ends(v, k_decay_refusal)) {
    throw std::runtime_error("emden_fowler_forward: transformed profile does not decay on [-L, L]");
  }
  return v;
}

std::vector<double> emden_fowler_inverse(const LineProfile& v, double a, int d) {
  const double ac = a_critical(d);
  std::vector<double> u(v.size());
  for (int i = 0; i < v.size(); ++i) u[i] = std::exp(-(ac - a) * v.grid.s(i)) * v.values[i];
  return u;
}

CylinderFunctionalValue eval_ckn_energy(const LineProfile& v, double theta, double lambda,
                                        double p, int d) {
  if (!(lambda > 0.0)) throw std::invalid_argument("eval_ckn_energy: Lambda > 0 required");
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("eval_ckn_energy: theta in [0,1] required");
  }
  if (!(p > 2.0)) throw std::invalid_argument("eval_ckn_energy: p > 2 required");
  const double surface = sphere_surface(d);
  CylinderFunctionalValue out;
  out.mass_sq = surface * mass_sq_line(v);
  if (!(out.mass_sq > 0.0)) throw std::invalid_argument("eval_ckn_energy: zero profile");
  out.grad_sq = surface * grad_sq_line(v);
  out.p_norm_sq = std::pow(surface * p_integral_line(v, p), 2.0 / p);
  out.energy = std::pow(out.grad_sq + lambda * out.mass_sq, theta) *
               std::pow(out.mass_sq, 1.0 - theta);
  return out;
}

CylinderFunctionalValue eval_wlh_entropy(const LineProfile& w, double gamma, double lambda,
                                         int d) {
  if (!(lambda > 0.0)) throw std::invalid_argument("eval_wlh_entropy: Lambda > 0 required");
  const double surface = sphere_surface(d);
  const double raw_mass = surface * mass_sq_line(w);
  if (!(raw_mass > 0.0)) throw std::invalid_argument("eval_wlh_entropy: zero profile");
  const double scale_sq = 1.0 / raw_mass; // renormalize |w|_{L^2(C)} = 1

  CylinderFunctionalValue out;
  out.mass_sq = 1.0;
  out.grad_sq = surface * grad_sq_line(w) * scale_sq;
  double ent = 0.0;
  for (int i = 0; i < w.size(); ++i) {
    const double y2 = w.values[i] * w.values[i] * scale_sq;
    ent += w.quad_weights[i] * xlogx(y2);
  }
  out.entropy = surface * ent;
  out.implied_constant = std::exp(out.entropy / (2.0 * gamma)) / (out.grad_sq + lambda);
  return out;
}

CylinderProfile make_s_only(LineProfile v) {
  CylinderProfile c;
  c.base = std::move(v);
  return c;
}

CylinderProfile make_with_harmonic(LineProfile base, LineProfile angular, int k) {
  if (k != 1) throw std::invalid_argument("make_with_harmonic: only k = 1 supported");
  if (angular.grid.n != base.grid.n || angular.grid.length != base.grid.length) {
    throw std::invalid_argument("make_with_harmonic: grids must match");
  }
  CylinderProfile c;
  c.base = std::move(base);
  c.angular = std::move(angular);
  c.k = k;
  return c;
}

CylinderNorms cylinder_norms(const CylinderProfile& v, double p, int d) {
  if (d < 2) throw std::invalid_argument("cylinder_norms: d >= 2 required");
  const double surface = sphere_surface(d);
  CylinderNorms out;
  out.mass_sq = surface * mass_sq_line(v.base);
  out.grad_sq = surface * grad_sq_line(v.base);
  if (v.is_s_only()) {
    out.p_int = surface * p_integral_line(v.base, p);
    return out;
  }
  if (d < 3) throw std::invalid_argument("cylinder_norms: harmonic mode needs d >= 3");
  SphereData sphere{d};
  out.mass_sq += mass_sq_line(v.angular);
  out.grad_sq += grad_sq_line(v.angular) +
                 sphere.harmonic_eigenvalue(v.k) * mass_sq_line(v.angular);
  const double c = std::sqrt(double(d) / surface); // Y_1 = c * omega_1
  double pint = 0.0;
  for (int i = 0; i < v.base.size(); ++i) {
    pint += v.base.quad_weights[i] *
            angular_integral(v.base.values[i], c * v.angular.values[i], p, d);
  }
  out.p_int = pint;
  return out;
}

CylinderProfile sigma_rescale(const CylinderProfile& v, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma_rescale: sigma > 0 required");
  CylinderProfile out;
  out.base = rescale_line(v.base, sigma);
  if (!v.is_s_only()) {
    out.angular = rescale_line(v.angular, sigma);
    out.k = v.k;
  }
  return out;
}

SigmaIdentityResult sigma_identity_check(const CylinderProfile& v, double sigma, double theta,
                                         double lambda, double p, int d) {
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("sigma_identity_check: theta in (0,1] required");
  }
  if (!(lambda > 0.0)) throw std::invalid_argument("sigma_identity_check: Lambda > 0 required");

  auto f_value = [&](const CylinderProfile& prof, double lam) {
    const CylinderNorms n = cylinder_norms(prof, p, d);
    if (!(n.p_int > 0.0)) throw std::invalid_argument("sigma_identity_check: zero profile");
    const double energy = std::pow(n.grad_sq + lam * n.mass_sq, theta) *
                          std::pow(n.mass_sq, 1.0 - theta);
    return energy / std::pow(n.p_int, 2.0 / p);
  };

  const CylinderProfile vs = sigma_rescale(v, sigma);
  const double f_base = std::pow(f_value(v, lambda), 1.0 / theta);
  const double f_scaled = std::pow(f_value(vs, sigma * sigma * lambda), 1.0 / theta);

  const double x = (2.0 * theta - 1.0 + 2.0 / p);
  SigmaIdentityResult out;
  out.residual_theta = std::pow(sigma, x / theta) * f_base - f_scaled;
  out.residual_theta_sq = std::pow(sigma, x / (theta * theta)) * f_base - f_scaled;
  out.reference = std::max(std::fabs(f_scaled), std::pow(sigma, x / theta) * f_base);
  return out;
}

} // namespace symbreak
