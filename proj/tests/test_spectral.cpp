#include <doctest.h>

#include <cmath>
#include <vector>

#include "symbreak/closed_forms.hpp"
#include "symbreak/params.hpp"
#include "symbreak/special.hpp"
#include "symbreak/spectral.hpp"

using namespace symbreak;

namespace {

// Tridiagonal of -f'' + q(s) f on [-L, L] (Dirichlet), for textbook checks.
void build_schroedinger(double length, int n, double (*q)(double),
                        std::vector<double>& diag, std::vector<double>& off) {
  const double h = 2.0 * length / (n + 1);
  diag.assign(n, 0.0);
  off.assign(n - 1, -1.0 / (h * h));
  for (int i = 0; i < n; ++i) {
    const double s = -length + (i + 1) * h;
    diag[i] = 2.0 / (h * h) + q(s);
  }
}

SpectralOptions fast_spectral() {
  SpectralOptions o;
  o.n = 1024;
  return o;
}

} // namespace

TEST_CASE("sturm bisection: free operator approaches the potential floor") {
  std::vector<double> diag, off;
  build_schroedinger(20.0, 2001, [](double) { return 3.0; }, diag, off);
  const double ev = tridiag_smallest_eigenvalue(diag, off);
  // Dirichlet box correction pi^2/(2L)^2 on top of the constant
  CHECK(ev == doctest::Approx(3.0 + pi * pi / 1600.0).epsilon(1e-4));

  std::vector<double> diag_wide, off_wide;
  build_schroedinger(60.0, 6001, [](double) { return 3.0; }, diag_wide, off_wide);
  CHECK(std::fabs(tridiag_smallest_eigenvalue(diag_wide, off_wide) - 3.0) <
        std::fabs(ev - 3.0));
}

TEST_CASE("sturm bisection: harmonic oscillator ground state") {
  // Richardson across two grids hits the classical eigenvalue 1.
  std::vector<double> d1, e1, d2, e2;
  build_schroedinger(10.0, 4000, [](double s) { return s * s; }, d1, e1);
  build_schroedinger(10.0, 2000, [](double s) { return s * s; }, d2, e2);
  const double fine = tridiag_smallest_eigenvalue(d1, e1);
  const double coarse = tridiag_smallest_eigenvalue(d2, e2);
  // the two-grid steps differ by (n+1) ratios, adjust with the exact factor
  const double h1 = 20.0 / 4001, h2 = 20.0 / 2001;
  const double extrap = (h2 * h2 * fine - h1 * h1 * coarse) / (h2 * h2 - h1 * h1);
  CHECK(std::fabs(extrap - 1.0) < 1e-8);
}

TEST_CASE("sturm bisection: shifting the potential shifts the eigenvalue exactly") {
  std::vector<double> diag, off;
  build_schroedinger(10.0, 1500, [](double s) { return s * s; }, diag, off);
  const double ev = tridiag_smallest_eigenvalue(diag, off);
  for (double& x : diag) x += 2.5;
  const double ev_shifted = tridiag_smallest_eigenvalue(diag, off);
  CHECK(ev_shifted - ev == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("sector operators: k=1 differs from the local k=0 part by d-1, theta=1 collapse") {
  const double theta = 1.0, p = 4.0, lambda = 1.0;
  const int d = 3;
  OptimizerOptions o;
  o.n = 1024;
  o.richardson = false;
  const RadialSolution sol = ckn_radial_constant(theta, p, lambda, d, o);

  const SectorOperator op1 = assemble_sector_operator(sol, theta, lambda, p, d, 1);
  const SectorOperator op2 = assemble_sector_operator(sol, theta, lambda, p, d, 2);

  // At theta = 1 the prefactor collapses: scale = 1 and the potential floor is
  // Lambda + k(k+d-2) - mu (p-1) v^{p-2}.
  CHECK(op1.scale == doctest::Approx(1.0).epsilon(1e-12));

  // k=2 shifts the k=1 diagonal by the harmonic gap (2d - (d-1)) * scale.
  const SphereData sphere{d};
  const double gap = sphere.harmonic_eigenvalue(2) - sphere.harmonic_eigenvalue(1);
  for (size_t i = 0; i < op1.diag.size(); i += 97) {
    CHECK(op2.diag[i] - op1.diag[i] == doctest::Approx(gap * op1.scale).epsilon(1e-10));
  }

  const double ev1 = lowest_eigenvalue(op1);
  const double ev2 = lowest_eigenvalue(op2);
  CHECK(ev2 > ev1);

  // unconverged maximizer is rejected
  RadialSolution broken = sol;
  broken.estimate.converged = false;
  CHECK_THROWS(assemble_sector_operator(broken, theta, lambda, p, d, 1));
}

TEST_CASE("k=0 sector: constrained second variation is nonnegative at the maximizer") {
  const double p = 4.0, lambda = 1.0;
  const int d = 3;
  OptimizerOptions o;
  o.n = 769;
  o.length = 24.0;
  o.richardson = false;
  o.tol = 1e-10;
  for (double theta : {1.0, 0.8}) {
    const RadialSolution sol = ckn_radial_constant(theta, p, lambda, d, o);
    const SectorOperator op0 = assemble_sector_operator(sol, theta, lambda, p, d, 0);
    CHECK_FALSE(op0.constraint.empty());
    const double ev0 = lowest_eigenvalue(op0) / op0.scale;
    CHECK(ev0 >= -1e-8);
    // translation mode keeps it pinned near zero
    CHECK(ev0 <= 1e-3);
  }
}

TEST_CASE("sector eigenvalues strictly increase for k >= 1") {
  const double theta = 0.9, p = 3.0, lambda = 2.0;
  const int d = 4;
  const SpectralReport rep = symmetry_verdict(theta, p, lambda, d, fast_spectral());
  double prev = rep.sector_eigenvalues.at(1);
  for (int k = 2; k <= 3; ++k) {
    CHECK(rep.sector_eigenvalues.at(k) > prev);
    prev = rep.sector_eigenvalues.at(k);
  }
}

TEST_CASE("verdict flips across the closed-form threshold") {
  const double theta = 1.0, p = 4.0;
  const int d = 3;
  const double threshold = a_bar(theta, p, d);
  const SpectralReport above =
      symmetry_verdict(theta, p, lambda_of(threshold + 0.05, d), d, fast_spectral());
  const SpectralReport below =
      symmetry_verdict(theta, p, lambda_of(threshold - 0.05, d), d, fast_spectral());
  CHECK(above.verdict == SymmetryVerdict::symmetric_stable);
  CHECK(above.margin > 0.0);
  CHECK(below.verdict == SymmetryVerdict::symmetry_broken);
  CHECK(below.margin < 0.0);
}

TEST_CASE("k=1 eigenvalue is monotone in a near the crossing") {
  const double theta = 1.0, p = 4.0;
  const int d = 3;
  const SpectralOptions o = fast_spectral();
  const double center = a_bar(theta, p, d);
  double prev = k1_eigenvalue(theta, p, lambda_of(center - 0.1, d), d, o).extrapolated;
  for (double da : {-0.05, 0.0, 0.05, 0.1}) {
    const double cur = k1_eigenvalue(theta, p, lambda_of(center + da, d), d, o).extrapolated;
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("eigenvalue grid convergence is second order or better") {
  const double theta = 1.0, p = 4.0, lambda = 1.0;
  const int d = 3;
  SpectralOptions o;
  o.n = 2048;
  const SectorEigenvalue ev = k1_eigenvalue(theta, p, lambda, d, o);
  SpectralOptions o2;
  o2.n = 1024;
  const SectorEigenvalue ev2 = k1_eigenvalue(theta, p, lambda, d, o2);
  // fine/coarse defects shrink by ~4x per halving
  const double d_fine = std::fabs(ev.fine - ev.extrapolated);
  const double d_coarse = std::fabs(ev2.fine - ev2.extrapolated);
  const double rate = std::log2(d_coarse / d_fine);
  CHECK(rate > 1.9);
}

TEST_CASE("spectral threshold reproduces the closed form at theta = 1") {
  SpectralOptions o;
  o.n = 1024;
  const double t1 = spectral_threshold(1.0, 6.0, 3, o);
  CHECK(std::fabs(t1 - 0.0) <= 1e-3); // exact closed-form zero
  const double t2 = spectral_threshold(1.0, 4.0, 3, o);
  CHECK(std::fabs(t2 - a_bar(1.0, 4.0, 3)) <= 1e-3);
}

TEST_CASE("spectral threshold agrees with the closed form off theta = 1") {
  SpectralOptions o;
  o.n = 1024;
  const double theta = 0.8, p = 3.0;
  const int d = 5;
  const double t = spectral_threshold(theta, p, d, o);
  CHECK(std::fabs(t - a_bar(theta, p, d)) <= 1e-3);
}
