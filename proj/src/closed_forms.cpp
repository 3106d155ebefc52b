#include "symbreak/closed_forms.hpp"

#include <cmath>
#include <stdexcept>

#include "symbreak/params.hpp"
#include "symbreak/special.hpp"

namespace symbreak {

double radial_scaling_ckn(double theta, double p, double lambda, double base) {
  if (!(lambda > 0.0)) throw std::invalid_argument("radial_scaling_ckn: Lambda > 0 required");
  if (!(base > 0.0)) throw std::invalid_argument("radial_scaling_ckn: base > 0 required");
  const double expo = (p - 2.0) / (2.0 * p) - theta;
  return base * std::exp(expo * std::log(lambda));
}

double radial_scaling_wlh(double gamma, double lambda, double base) {
  if (!(lambda > 0.0)) throw std::invalid_argument("radial_scaling_wlh: Lambda > 0 required");
  if (!(gamma >= 0.25)) throw std::invalid_argument("radial_scaling_wlh: gamma >= 1/4 required");
  if (!(base > 0.0)) throw std::invalid_argument("radial_scaling_wlh: base > 0 required");
  const double expo = -1.0 + 1.0 / (4.0 * gamma);
  return base * std::exp(expo * std::log(lambda));
}

double a_bar(double theta, double p, int d) {
  if (d < 2) throw std::invalid_argument("a_bar: d >= 2 required");
  if (!(p > 2.0)) throw std::invalid_argument("a_bar: p > 2 required");
  const double arg = 2.0 * p * theta / (p - 2.0) - 1.0;
  if (arg < 0.0) throw std::invalid_argument("a_bar: theta below linearization window");
  return a_critical(d) - 2.0 * std::sqrt(double(d - 1)) / (p + 2.0) * std::sqrt(arg);
}

double a_tilde(double gamma, int d) {
  if (d < 2) throw std::invalid_argument("a_tilde: d >= 2 required");
  if (!(gamma >= 0.25)) throw std::invalid_argument("a_tilde: gamma >= 1/4 required");
  return a_critical(d) - 0.5 * std::sqrt((d - 1.0) * (4.0 * gamma - 1.0));
}

double lambda_sb(double gamma, int d) {
  if (d < 1) throw std::invalid_argument("lambda_sb: d >= 1 required");
  if (!(gamma > 0.25)) throw std::invalid_argument("lambda_sb: gamma > 1/4 required");
  // Assembled in log space: pi^{4g-d-1} alone overflows long before the
  // bracketed root of it does.
  const double q = 4.0 * gamma - 1.0;
  double lg = std::log(q / 8.0) + 1.0;
  lg += ((4.0 * gamma - d - 1.0) * std::log(pi) - std::log(16.0)) / q;
  lg += (4.0 * gamma / q) * (std::log(double(d)) - std::log(gamma));
  lg += (2.0 / q) * log_gamma_fn(0.5 * d);
  return std::exp(lg);
}

double lambda_star_wlh(int d) {
  if (d < 2) throw std::invalid_argument("lambda_star_wlh: d >= 2 required");
  double lg = std::log(d - 1.0) + 1.0;
  lg -= ((d + 1.0) * std::log(2.0) + std::log(pi)) / (d - 1.0);
  lg += (2.0 / (d - 1.0)) * log_gamma_fn(0.5 * d);
  return std::exp(lg);
}

double a_star_wlh(int d) {
  return a_critical(d) - std::sqrt(lambda_star_wlh(d));
}

ExistenceLevel lambda_0(double p, int d, double base_ckn, double sobolev) {
  if (d < 3) throw std::invalid_argument("lambda_0: d >= 3 required");
  if (!(base_ckn > 0.0) || !(sobolev > 0.0)) {
    throw std::invalid_argument("lambda_0: positive base constants required");
  }
  const double vt = vartheta_of(d, p);
  const double rhs = vt * std::pow(base_ckn, 1.0 / vt) / sobolev;
  ExistenceLevel out;
  out.lambda = std::pow(rhs, double(d) / (d - 1.0));
  out.a = a_critical(d) - std::sqrt(out.lambda);
  return out;
}

AprioriLevel lambda_1(double p, int d, double base_ckn, double sobolev) {
  if (d < 3) throw std::invalid_argument("lambda_1: d >= 3 required");
  if (!(base_ckn > 0.0) || !(sobolev > 0.0)) {
    throw std::invalid_argument("lambda_1: positive base constants required");
  }
  const double theta = vartheta_of(d, p);
  const double a_c = a_critical(d);
  const double core = std::pow(base_ckn, 1.0 / theta) / sobolev;
  const double b1 = std::pow(core, double(d) / (d - 1.0));
  const double b2 = std::pow(a_c * a_c * core, double(d));
  AprioriLevel out;
  out.branch = (b1 <= b2) ? 1 : 2;
  out.lambda = std::min(b1, b2);
  out.a = a_c - std::sqrt(out.lambda);
  out.reading =
      "min{(C^{1/theta}/S_d)^{d/(d-1)}, (a_c^2 C^{1/theta}/S_d)^d}; "
      "second brace closed at end of expression";
  return out;
}

} // namespace symbreak
