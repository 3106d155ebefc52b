#ifndef SYMBREAK_CYLINDER_HPP
#define SYMBREAK_CYLINDER_HPP

#include <vector>

#include "symbreak/line_profile.hpp"

namespace symbreak {

// Profiles on the cylinder R x S^{d-1} after the change of variables
// s = log|x|, omega = x/|x|, v = |x|^{a_c - a} u. Radial functions of x
// depend on s only, so their cylinder norms reduce to line integrals times
// the sphere surface.

/// Norms and functional values of a profile, cylinder measure included.
struct CylinderFunctionalValue {
  double grad_sq = 0.0;   // |grad v|_2^2 on the cylinder
  double mass_sq = 0.0;   // |v|_2^2
  double p_norm_sq = 0.0; // |v|_p^2
  double energy = 0.0;    // (grad_sq + Lambda mass_sq)^theta * mass_sq^(1-theta)
  double entropy = 0.0;   // integral of |w|^2 log |w|^2 (WLH branch only)
  double implied_constant = 0.0; // exp(entropy/(2 gamma)) / (grad_sq + Lambda)
};

/// v(s) = e^{(a_c - a) s} u(e^s) for radial samples u on the log-radial grid.
/// Refuses inputs whose transform has not decayed at the truncation ends.
LineProfile emden_fowler_forward(const LineGrid& g, const std::vector<double>& u_log_radial,
                                 double a, int d);

/// Inverse transform: u(e^s) = e^{-(a_c - a) s} v(s).
std::vector<double> emden_fowler_inverse(const LineProfile& v, double a, int d);

/// CKN functional E^p_{theta,Lambda} of an s-only profile.
/// p_norm_sq / energy is a lower bound for the optimal CKN constant.
CylinderFunctionalValue eval_ckn_energy(const LineProfile& v, double theta, double lambda,
                                        double p, int d);

/// WLH entropy functional of an s-only profile, normalized internally to
/// unit L^2(C) mass (0 log 0 = 0 convention).
CylinderFunctionalValue eval_wlh_entropy(const LineProfile& w, double gamma, double lambda,
                                         int d);

/// s-only profile plus a single spherical-harmonic component:
///   v(s, omega) = base(s) + angular(s) * Y_k(omega),  Y_k unit in L^2(S^{d-1}).
/// This is the test mode used to probe angular dependence; only k = 1 is
/// needed and only d >= 3 is supported.
struct CylinderProfile {
  LineProfile base;
  LineProfile angular; // empty values => s-only
  int k = 0;

  bool is_s_only() const { return angular.values.empty(); }
};

CylinderProfile make_s_only(LineProfile v);
CylinderProfile make_with_harmonic(LineProfile base, LineProfile angular, int k);

struct CylinderNorms {
  double grad_sq = 0.0;
  double mass_sq = 0.0;
  double p_int = 0.0; // integral of |v|^p over the cylinder
};

CylinderNorms cylinder_norms(const CylinderProfile& v, double p, int d);

/// v_sigma(s, omega) = v(sigma s, omega), resampled on the original grid.
/// Exact when the profile carries samplers; refused when the rescaled
/// profile would need values that escaped the truncated grid.
CylinderProfile sigma_rescale(const CylinderProfile& v, double sigma);

/// Residuals of the sigma-scaling identity relating E^p_{theta,sigma^2 Lambda}
/// of the rescaled profile to E^p_{theta,Lambda} of the original, with the
/// p-norm-normalized functional F = E / |v|_p^2:
///   residual(x) = sigma^x F_Lambda[v]^{1/theta} - F_{sigma^2 Lambda}[v_sigma]^{1/theta}
/// evaluated for both candidate exponents x = (2 theta - 1 + 2/p)/theta and
/// x = (2 theta - 1 + 2/p)/theta^2. For s-only profiles the first exponent
/// annihilates the residual; otherwise the residual has the sign of sigma - 1.
struct SigmaIdentityResult {
  double residual_theta = 0.0;     // exponent (2 theta - 1 + 2/p)/theta
  double residual_theta_sq = 0.0;  // exponent (2 theta - 1 + 2/p)/theta^2
  double reference = 0.0;          // magnitude scale for relative comparison
};

SigmaIdentityResult sigma_identity_check(const CylinderProfile& v, double sigma, double theta,
                                         double lambda, double p, int d);

} // namespace symbreak

#endif
