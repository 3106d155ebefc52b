#ifndef SYMBREAK_SPECIAL_HPP
#define SYMBREAK_SPECIAL_HPP

// Scalar special functions shared by the whole toolkit: Gamma via a Lanczos
// approximation (reflection-extended), its logarithm, and the surface measure
// of the unit sphere S^{d-1}.

namespace symbreak {

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double euler_e = 2.71828182845904523536028747135266250;

/// Gamma(x) for real x (poles at nonpositive integers are rejected).
/// Relative error is below 1e-14 on [0.5, 50].
double gamma_fn(double x);

/// log Gamma(x) for x > 0. Safe for arguments where Gamma itself overflows.
double log_gamma_fn(double x);

/// |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2), d >= 1.
double sphere_surface(int d);

/// log |S^{d-1}|, for use inside log-space threshold formulas.
double log_sphere_surface(int d);

} // namespace symbreak

#endif
