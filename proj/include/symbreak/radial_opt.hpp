#ifndef SYMBREAK_RADIAL_OPT_HPP
#define SYMBREAK_RADIAL_OPT_HPP

#include <string>

#include "symbreak/line_profile.hpp"

namespace symbreak {

enum class ConstantFamily { ckn_radial, wlh_radial, gn, sobolev, log_sobolev };

std::string to_string(ConstantFamily f);

/// A computed sharp constant plus convergence diagnostics.
struct ConstantEstimate {
  double value = 0.0;
  ConstantFamily family = ConstantFamily::ckn_radial;
  LineGrid grid;
  double residual = 0.0; // stationarity residual (or cross-route defect)
  long iterations = 0;
  bool converged = false;
};

struct OptimizerOptions {
  int n = 8192;            // grid nodes
  double length = 40.0;    // minimum half-length; extended when profiles are wide
  double tol = 1e-8;       // stationarity residual target
  long max_iterations = 100000;
  bool richardson = true;  // extrapolate the value across n and n/2
};

/// Default stationarity tolerance, honoring the SYMBREAK_TOL environment
/// variable when set.
double default_tol();

/// Optimizer output: the estimate plus the maximizing profile and the
/// quantities the spectral analysis needs. All *_line fields are plain line
/// integrals (no sphere surface factor); `mu` is the Euler-Lagrange
/// multiplier of  theta A^{theta-1} B^{1-theta} (-v'' + Lambda v)
///              + (1-theta) A^theta B^{-theta} v = mu v^{p-1},
/// recovered from the maximizer by pairing the equation with v.
struct RadialSolution {
  ConstantEstimate estimate;
  LineProfile maximizer;
  double grad_sq_line = 0.0; // int v'^2
  double mass_sq_line = 0.0; // int v^2
  double p_int_line = 0.0;   // int v^p
  double mu = 0.0;
};

/// Radial optimal CKN constant: sup over even decaying line profiles of the
/// surface-corrected ratio |v|_p^2 / E^p_{theta,Lambda}[v].
RadialSolution ckn_radial_constant(double theta, double p, double lambda, int d,
                                   const OptimizerOptions& opts = {});

/// Radial optimal WLH constant: sup over unit-mass even line profiles of
/// exp(entropy / (2 gamma)) / (grad_sq + Lambda).
RadialSolution wlh_radial_constant(double gamma, double lambda, int d,
                                   const OptimizerOptions& opts = {});

struct ShootingOptions {
  double step = 5e-4;   // RK4 step in r
  double r_max = 80.0;
  int bisections = 200;
};

/// Gagliardo-Nirenberg constant C_GN(p) from the radial ground state of
/// -Laplace(u) + u = u^{p-1} in R^d (shooting). At p = 2* (d >= 3) the
/// constant coincides with the Sobolev one and is computed by that route.
ConstantEstimate gn_constant(double p, int d, const ShootingOptions& shoot = {});

/// Optimal Sobolev constant S_d = C_CKN(1, 2*, 0), d >= 3, computed on the
/// cylinder as the radial constant at theta = 1, p = 2*, Lambda = a_c^2.
ConstantEstimate sobolev_constant(int d, const OptimizerOptions& opts = {});

struct LogSobolevResult {
  ConstantEstimate estimate;      // value = extremal-evaluation route
  double check_route_value = 0.0; // Gaussian-family optimization route
  double lhs_at_extremal = 0.0;   // entropy side at the printed extremal
  double rhs_at_extremal = 0.0;   // (d/2) log(C_LS |grad u|^2) at the extremal
};

/// Logarithmic Sobolev constant in Weissler's form, via quadrature at the
/// Gaussian extremal plus an independent one-parameter optimization check.
LogSobolevResult log_sobolev_constant(int d);

} // namespace symbreak

#endif
