#ifndef SYMBREAK_CLOSED_FORMS_HPP
#define SYMBREAK_CLOSED_FORMS_HPP

#include <string>

namespace symbreak {

// Closed-form thresholds and scaling laws for the two families of weighted
// interpolation inequalities. Everything here is exact formula evaluation;
// expressions with large exponents are evaluated in log space so they stay
// finite far outside the physically interesting window.

/// base * Lambda^{(p-2)/(2p) - theta}. Requires Lambda > 0 and base > 0.
double radial_scaling_ckn(double theta, double p, double lambda, double base);

/// base * Lambda^{-1 + 1/(4 gamma)}. Requires Lambda > 0, gamma >= 1/4, base > 0.
double radial_scaling_wlh(double gamma, double lambda, double base);

/// Linearization threshold for CKN:
///   a_bar(theta,p) = a_c - 2 sqrt(d-1)/(p+2) * sqrt(2 p theta/(p-2) - 1).
/// Requires d >= 2, p > 2 and 2 p theta/(p-2) >= 1.
double a_bar(double theta, double p, int d);

/// Linearization threshold for WLH:
///   a_tilde(gamma) = a_c - sqrt((d-1)(4 gamma - 1)) / 2.
/// Requires d >= 2 and gamma >= 1/4.
double a_tilde(double gamma, int d);

/// Symmetry-breaking level
///   Lambda_SB(gamma) = (4g-1)/8 * e * (pi^{4g-d-1}/16)^{1/(4g-1)}
///                      * (d/g)^{4g/(4g-1)} * Gamma(d/2)^{2/(4g-1)}.
/// Requires gamma > 1/4 strictly.
double lambda_sb(double gamma, int d);

/// Lambda*_WLH = (d-1) e (2^{d+1} pi)^{-1/(d-1)} Gamma(d/2)^{2/(d-1)}, d >= 2.
double lambda_star_wlh(int d);

/// a*_WLH = a_c - sqrt(Lambda*_WLH), d >= 2.
double a_star_wlh(int d);

struct ExistenceLevel {
  double lambda = 0.0;
  double a = 0.0;
};

/// Radial-extremal (Schwarz) level of the critical CKN case, d >= 3:
///   Lambda0^{(d-1)/d} = vartheta(p,d) * base_ckn^{1/vartheta(p,d)} / sobolev,
/// with base_ckn the radial constant at Lambda = 1 and theta = vartheta(p,d).
ExistenceLevel lambda_0(double p, int d, double base_ckn, double sobolev);

struct AprioriLevel {
  double lambda = 0.0;
  double a = 0.0;
  int branch = 0; // which of the two min{} branches was selected
  std::string reading; // records how the printed min{...} was interpreted
};

/// A-priori existence level of the critical CKN case, d >= 3:
///   Lambda1 = min{ (base^{1/theta}/S_d)^{d/(d-1)}, (a_c^2 base^{1/theta}/S_d)^d }
/// with theta = vartheta(p,d).
AprioriLevel lambda_1(double p, int d, double base_ckn, double sobolev);

} // namespace symbreak

#endif
