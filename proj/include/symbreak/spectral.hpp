#ifndef SYMBREAK_SPECTRAL_HPP
#define SYMBREAK_SPECTRAL_HPP

#include <map>
#include <vector>

#include "symbreak/radial_opt.hpp"

namespace symbreak {

// Second variation of E^p_{theta,Lambda} at the radial maximizer, decomposed
// into spherical-harmonic sectors. In the sector of degree k >= 1 the
// first-order cross terms vanish by angular orthogonality and the quadratic
// form reduces to a local Schroedinger operator
//   theta A^{theta-1} B^{1-theta} (-f'' + (Lambda + k(k+d-2)) f)
//     + (1-theta) A^theta B^{-theta} f - mu (p-1) v^{p-2} f,
// with A = |grad v|^2 + Lambda |v|^2 and B = |v|^2. In the k = 0 sector the
// rank-one terms from differentiating A^theta B^{1-theta} and the p-norm
// constraint are kept explicitly.

/// Sector operator in the mass-normalized basis (W^{-1/2} H W^{-1/2}): a
/// symmetric tridiagonal core plus, for k = 0, a rank-one correction and the
/// constraint direction to project out.
struct SectorOperator {
  std::vector<double> diag;
  std::vector<double> off;
  double h = 0.0;
  double scale = 1.0; // theta A^{theta-1} B^{1-theta}, for normalized readings

  // k = 0 extras (empty for k >= 1).
  std::vector<double> correction; // rank-one direction u-hat
  double correction_coef = 0.0;   // -2 theta(1-theta) A^{theta-2} B^{-theta-1}
  std::vector<double> constraint; // tangent-space constraint direction q-hat
};

/// Assembles the degree-k sector operator at a converged radial maximizer.
/// The discretization (stiffness form, trapezoid mass) is exactly the one the
/// optimizer maximized, so the k = 0 form is the true discrete Hessian.
SectorOperator assemble_sector_operator(const RadialSolution& sol, double theta, double lambda,
                                        double p, int d, int k);

/// Smallest eigenvalue of the assembled operator. Pure tridiagonal sectors
/// use Sturm-sequence bisection; the corrected k = 0 sector is solved densely
/// on the constraint-tangent space.
double lowest_eigenvalue(const SectorOperator& op);

/// Sturm-sequence bisection for a symmetric tridiagonal matrix (exposed for
/// direct checks against textbook operators).
double tridiag_smallest_eigenvalue(const std::vector<double>& diag,
                                   const std::vector<double>& off);

struct SectorEigenvalue {
  double fine = 0.0;
  double coarse = 0.0;
  double extrapolated = 0.0; // (4 fine - coarse) / 3
};

enum class SymmetryVerdict { symmetric_stable, symmetry_broken, marginal };

std::string to_string(SymmetryVerdict v);

struct SpectralOptions {
  int n = 2048;        // fine grid for eigenvalue extrapolation
  double length = 40.0;
  double tol = 1e-7;   // verdict dead band on the normalized k=1 eigenvalue
  int k_max = 3;
};

/// Per-sector lowest eigenvalues (normalized by the scale prefactor, so the
/// values read as eigenvalues of -f'' + potential) and the verdict from the
/// sign of the k = 1 sector.
struct SpectralReport {
  std::map<int, double> sector_eigenvalues;
  SymmetryVerdict verdict = SymmetryVerdict::symmetric_stable;
  double margin = 0.0; // normalized k=1 eigenvalue
  double maximizer_value = 0.0;    // radial constant at these parameters
  double maximizer_residual = 0.0; // its stationarity residual
  LineGrid grid;
};

SpectralReport symmetry_verdict(double theta, double p, double lambda, int d,
                                const SpectralOptions& opts = {});

/// Numeric linearization threshold: the a-value where the k = 1 sector
/// eigenvalue crosses zero, located by bisection in a within (a_c - 10, a_c).
double spectral_threshold(double theta, double p, int d, const SpectralOptions& opts = {});

/// Normalized k=1 sector eigenvalue at given parameters (Richardson pair).
SectorEigenvalue k1_eigenvalue(double theta, double p, double lambda, int d,
                               const SpectralOptions& opts = {});

} // namespace symbreak

#endif
