#ifndef SYMBREAK_LINE_PROFILE_HPP
#define SYMBREAK_LINE_PROFILE_HPP

#include <functional>
#include <vector>

namespace symbreak {

/// Uniform grid on [-L, L] with composite-trapezoid quadrature weights.
struct LineGrid {
  double length = 40.0; // half-length L
  int n = 8192;         // number of nodes

  double step() const { return 2.0 * length / (n - 1); }
  double s(int i) const { return -length + i * step(); }
};

/// A discretized function of the cylinder variable s, assumed even and
/// decaying at the ends of the truncated domain. Profiles built from a
/// closed-form expression keep their samplers so that rescalings and
/// derivatives can be evaluated without interpolation error.
struct LineProfile {
  LineGrid grid;
  std::vector<double> values;
  std::vector<double> quad_weights;

  // Optional exact samplers (empty for purely discrete profiles).
  std::function<double(double)> sampler;
  std::function<double(double)> deriv_sampler;

  bool has_sampler() const { return static_cast<bool>(sampler); }
  double step() const { return grid.step(); }
  int size() const { return grid.n; }
};

std::vector<double> trapezoid_weights(const LineGrid& g);

/// Profile from raw samples (no analytic backing).
LineProfile make_profile(const LineGrid& g, std::vector<double> values);

/// Profile sampled from f, keeping f (and optionally f') for exact reuse.
LineProfile sample_profile(const LineGrid& g, const std::function<double(double)>& f,
                           const std::function<double(double)>& df = nullptr);

/// integral of v   (quadrature weights applied)
double integrate(const LineProfile& v);
/// integral of v^2
double mass_sq_line(const LineProfile& v);
/// integral of |v|^p
double p_integral_line(const LineProfile& v, double p);
/// integral of v'^2; uses the exact derivative when available, otherwise the
/// first-difference (stiffness) energy sum_i (v_{i+1}-v_i)^2 / h.
double grad_sq_line(const LineProfile& v);
/// Always the discrete stiffness energy, regardless of samplers.
double grad_sq_line_fd(const LineProfile& v);

/// max_i |v_i|
double max_abs(const LineProfile& v);

/// True when both endpoint values are below tol * max|v|.
bool decays_at_ends(const LineProfile& v, double tol = 1e-12);

/// Dimension-dependent sphere data used to reduce cylinder integrals of
/// s-only profiles to line integrals.
struct SphereData {
  int d = 3;
  double surface() const;
  /// Laplace-Beltrami eigenvalue k(k+d-2) of the degree-k harmonic sector.
  double harmonic_eigenvalue(int k) const { return double(k) * (k + d - 2); }
};

} // namespace symbreak

#endif
