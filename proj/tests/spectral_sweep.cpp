// Property sweep: the numeric linearization threshold agrees with the closed
// form a_bar(theta, p) to 1e-3 across a 5 x 5 x {3,4,5} parameter grid, and
// the lower/upper symmetry bounds stay ordered (a_bar <= a0) wherever both
// are defined.

#include <cmath>
#include <cstdio>

#include "symbreak/closed_forms.hpp"
#include "symbreak/params.hpp"
#include "symbreak/radial_opt.hpp"
#include "symbreak/spectral.hpp"

using namespace symbreak;

int main() {
  SpectralOptions so;
  so.n = 1024;

  int failures = 0;
  int checked = 0;
  double worst = 0.0;

  for (int d : {3, 4, 5}) {
    const double ts = two_star_of(d);
    for (int ip = 0; ip < 5; ++ip) {
      const double p = 2.0 + (ts - 2.0) * (0.15 + 0.7 * ip / 4.0);
      const double vt = vartheta_of(d, p);
      for (int it = 0; it < 5; ++it) {
        const double theta = vt + (1.0 - vt) * it / 4.0;
        const double closed = a_bar(theta, p, d);
        const double numeric = spectral_threshold(theta, p, d, so);
        const double err = std::fabs(numeric - closed);
        worst = std::max(worst, err);
        ++checked;
        if (err > 1e-3) {
          ++failures;
          std::printf("MISMATCH d=%d p=%.3f theta=%.3f: numeric %.6f closed %.6f\n", d, p,
                      theta, numeric, closed);
        }
      }
    }

    // ordering of the symmetry bounds on the critical line, for a few p
    OptimizerOptions o;
    o.n = 1024;
    const double sobolev = sobolev_constant(d, o).value;
    for (double frac : {0.3, 0.6}) {
      const double p = 2.0 + (ts - 2.0) * frac;
      const double vt = vartheta_of(d, p);
      const RadialSolution base = ckn_radial_constant(vt, p, 1.0, d, o);
      const double a0 = lambda_0(p, d, base.estimate.value, sobolev).a;
      if (!(a_bar(vt, p, d) <= a0)) {
        ++failures;
        std::printf("ORDER d=%d p=%.3f: a_bar %.6f > a0 %.6f\n", d, p, a_bar(vt, p, d), a0);
      }
      ++checked;
    }
  }

  std::printf("spectral sweep: %d checks, %d failures, worst |threshold - a_bar| = %.2e\n",
              checked, failures, worst);
  return failures == 0 ? 0 : 1;
}
