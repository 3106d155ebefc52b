#include "symbreak/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "symbreak/params.hpp"

namespace symbreak {

std::string to_string(SymmetryVerdict v) {
  switch (v) {
    case SymmetryVerdict::symmetric_stable: return "symmetric_stable";
    case SymmetryVerdict::symmetry_broken: return "symmetry_broken";
    case SymmetryVerdict::marginal: return "marginal";
  }
  return "?";
}

namespace {

// Number of eigenvalues of the tridiagonal matrix strictly below x, by the
// Sturm sequence of LDL^T pivots.
int count_below(const std::vector<double>& diag, const std::vector<double>& off, double x) {
  int count = 0;
  double q = diag[0] - x;
  if (q < 0.0) ++count;
  for (size_t i = 1; i < diag.size(); ++i) {
    double denom = q;
    if (denom == 0.0) denom = 1e-300;
    q = (diag[i] - x) - off[i - 1] * off[i - 1] / denom;
    if (q < 0.0) ++count;
  }
  return count;
}

// ── dense symmetric eigenvalues (Householder + implicit QL) ─────────────
// Used only for the rank-corrected k = 0 sector; eigenvalues only.

void householder_tridiagonalize(std::vector<std::vector<double>>& a, std::vector<double>& d,
                                std::vector<double>& e) {
  const int n = static_cast<int>(a.size());
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (int i = n - 1; i > 0; --i) {
    const int l = i - 1;
    double h = 0.0, scale = 0.0;
    if (l > 0) {
      for (int k = 0; k <= l; ++k) scale += std::fabs(a[i][k]);
      if (scale == 0.0) {
        e[i] = a[i][l];
      } else {
        for (int k = 0; k <= l; ++k) {
          a[i][k] /= scale;
          h += a[i][k] * a[i][k];
        }
        double f = a[i][l];
        double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        a[i][l] = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          g = 0.0;
          for (int k = 0; k <= j; ++k) g += a[j][k] * a[i][k];
          for (int k = j + 1; k <= l; ++k) g += a[k][j] * a[i][k];
          e[j] = g / h;
          f += e[j] * a[i][j];
        }
        const double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = a[i][j];
          e[j] = g = e[j] - hh * f;
          for (int k = 0; k <= j; ++k) a[j][k] -= f * e[k] + g * a[i][k];
        }
      }
    } else {
      e[i] = a[i][l];
    }
    d[i] = h;
  }
  for (int i = 0; i < n; ++i) d[i] = a[i][i];
}

std::vector<double> tridiag_all_eigenvalues(std::vector<double> d, std::vector<double> e) {
  const int n = static_cast<int>(d.size());
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= 1e-300 + 2.3e-16 * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) throw std::runtime_error("tridiag eigenvalues: QL did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::fabs(r) : -std::fabs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && m - 1 >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  return d;
}

double dense_smallest_eigenvalue(std::vector<std::vector<double>> a) {
  std::vector<double> d, e;
  householder_tridiagonalize(a, d, e);
  std::vector<double> ev = tridiag_all_eigenvalues(std::move(d), std::move(e));
  return *std::min_element(ev.begin(), ev.end());
}

std::vector<double> normalized(std::vector<double> v) {
  double nn = 0.0;
  for (double x : v) nn += x * x;
  nn = std::sqrt(nn);
  if (nn > 0.0) {
    for (double& x : v) x /= nn;
  }
  return v;
}

} // namespace

SectorOperator assemble_sector_operator(const RadialSolution& sol, double theta, double lambda,
                                        double p, int d, int k) {
  if (!sol.estimate.converged) {
    throw std::invalid_argument("assemble_sector_operator: maximizer did not converge");
  }
  if (k < 0) throw std::invalid_argument("assemble_sector_operator: k >= 0 required");
  const LineProfile& v = sol.maximizer;
  const int n = v.size();
  const double h = v.step();
  const std::vector<double>& w = v.quad_weights;

  const double a_full = sol.grad_sq_line + lambda * sol.mass_sq_line;
  const double b = sol.mass_sq_line;
  const double c1 = theta * std::pow(a_full, theta - 1.0) * std::pow(b, 1.0 - theta);
  const double c2 = (1.0 - theta) * std::pow(a_full, theta) * std::pow(b, -theta);
  const double mu = sol.mu;
  const SphereData sphere{d};
  const double delta_k = sphere.harmonic_eigenvalue(k);

  // Mass-normalized symmetric form T = W^{-1/2} (c1 (K + (Lambda+delta_k) W)
  //   + c2 W - mu (p-1) diag(w v^{p-2})) W^{-1/2}.
  SectorOperator op;
  op.h = h;
  op.scale = c1;
  op.diag.resize(n);
  op.off.resize(n - 1);
  for (int i = 0; i < n; ++i) {
    const double k_ii = (i == 0 || i == n - 1) ? 1.0 / h : 2.0 / h;
    op.diag[i] = (c1 * k_ii) / w[i] + c1 * (lambda + delta_k) + c2 -
                 mu * (p - 1.0) * std::pow(v.values[i], p - 2.0);
  }
  for (int i = 0; i + 1 < n; ++i) {
    op.off[i] = (c1 * (-1.0 / h)) / std::sqrt(w[i] * w[i + 1]);
  }

  if (k == 0) {
    // Rank-one correction -2 theta(1-theta) A^{theta-2} B^{-theta-1} u u^T,
    // u = B (K + Lambda W) v - A W v, and the p-norm constraint direction.
    std::vector<double> kv(n);
    kv[0] = (v.values[0] - v.values[1]) / h;
    for (int i = 1; i + 1 < n; ++i) {
      kv[i] = (2.0 * v.values[i] - v.values[i - 1] - v.values[i + 1]) / h;
    }
    kv[n - 1] = (v.values[n - 1] - v.values[n - 2]) / h;

    op.correction.resize(n);
    op.constraint.resize(n);
    for (int i = 0; i < n; ++i) {
      const double r_i = kv[i] + lambda * w[i] * v.values[i];
      const double u_i = b * r_i - a_full * w[i] * v.values[i];
      op.correction[i] = u_i / std::sqrt(w[i]);
      op.constraint[i] = std::sqrt(w[i]) * std::pow(v.values[i], p - 1.0);
    }
    op.correction_coef = -2.0 * theta * (1.0 - theta) * std::pow(a_full, theta - 2.0) *
                         std::pow(b, -theta - 1.0);
    op.constraint = normalized(op.constraint);
  }
  return op;
}

double tridiag_smallest_eigenvalue(const std::vector<double>& diag,
                                   const std::vector<double>& off) {
  // Gershgorin bounds, then bisection on the Sturm count.
  double lo = diag[0], hi = diag[0];
  for (size_t i = 0; i < diag.size(); ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::fabs(off[i - 1]);
    if (i + 1 < diag.size()) radius += std::fabs(off[i]);
    lo = std::min(lo, diag[i] - radius);
    hi = std::max(hi, diag[i] + radius);
  }
  const double span = hi - lo;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(diag, off, mid) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (hi - lo <= 1e-15 * span) break;
  }
  return 0.5 * (lo + hi);
}

double lowest_eigenvalue(const SectorOperator& op) {
  if (op.correction.empty() && op.constraint.empty()) {
    return tridiag_smallest_eigenvalue(op.diag, op.off);
  }
  const int n = static_cast<int>(op.diag.size());
  if (n > 4200) {
    throw std::invalid_argument("lowest_eigenvalue: corrected sector needs a moderate grid");
  }
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) m[i][i] = op.diag[i];
  for (int i = 0; i + 1 < n; ++i) {
    m[i][i + 1] = op.off[i];
    m[i + 1][i] = op.off[i];
  }
  if (!op.correction.empty()) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        m[i][j] += op.correction_coef * op.correction[i] * op.correction[j];
      }
    }
  }
  if (!op.constraint.empty()) {
    // Restrict to the constraint-tangent space: P M P + push * q q^T with a
    // shift large enough to move the constrained direction out of the way.
    const std::vector<double>& q = op.constraint;
    std::vector<double> mq(n, 0.0);
    double qmq = 0.0;
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += m[i][j] * q[j];
      mq[i] = acc;
    }
    for (int i = 0; i < n; ++i) qmq += q[i] * mq[i];
    double push = 0.0;
    for (int i = 0; i < n; ++i) push = std::max(push, std::fabs(op.diag[i]));
    push = 4.0 * push + 1.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        m[i][j] += -q[i] * mq[j] - mq[i] * q[j] + (qmq + push) * q[i] * q[j];
      }
    }
  }
  return dense_smallest_eigenvalue(std::move(m));
}

namespace {

RadialSolution spectral_base_solution(double theta, double p, double lambda, int d, int n,
                                      double length) {
  OptimizerOptions o;
  o.n = n;
  o.length = length;
  o.tol = 1e-8;
  o.richardson = false;
  return ckn_radial_constant(theta, p, lambda, d, o);
}

double normalized_k_eigenvalue(const RadialSolution& sol, double theta, double lambda, double p,
                               int d, int k) {
  const SectorOperator op = assemble_sector_operator(sol, theta, lambda, p, d, k);
  return lowest_eigenvalue(op) / op.scale;
}

} // namespace

SectorEigenvalue k1_eigenvalue(double theta, double p, double lambda, int d,
                               const SpectralOptions& opts) {
  const RadialSolution fine = spectral_base_solution(theta, p, lambda, d, opts.n, opts.length);
  const RadialSolution coarse =
      spectral_base_solution(theta, p, lambda, d, opts.n / 2, opts.length);
  SectorEigenvalue ev;
  ev.fine = normalized_k_eigenvalue(fine, theta, lambda, p, d, 1);
  ev.coarse = normalized_k_eigenvalue(coarse, theta, lambda, p, d, 1);
  ev.extrapolated = (4.0 * ev.fine - ev.coarse) / 3.0;
  return ev;
}

SpectralReport symmetry_verdict(double theta, double p, double lambda, int d,
                                const SpectralOptions& opts) {
  const RadialSolution fine = spectral_base_solution(theta, p, lambda, d, opts.n, opts.length);
  const RadialSolution coarse =
      spectral_base_solution(theta, p, lambda, d, opts.n / 2, opts.length);

  SpectralReport report;
  report.grid = fine.maximizer.grid;
  report.maximizer_value = fine.estimate.value;
  report.maximizer_residual = fine.estimate.residual;

  for (int k = 0; k <= opts.k_max; ++k) {
    if (k == 0) {
      // The corrected k = 0 sector needs a dense solve; a capped re-optimized
      // grid keeps that affordable without touching the k >= 1 path.
      const int n0 = std::min(opts.n, 1025);
      const RadialSolution small =
          spectral_base_solution(theta, p, lambda, d, n0, opts.length);
      report.sector_eigenvalues[0] =
          normalized_k_eigenvalue(small, theta, lambda, p, d, 0);
      continue;
    }
    const double ev_f = normalized_k_eigenvalue(fine, theta, lambda, p, d, k);
    const double ev_c = normalized_k_eigenvalue(coarse, theta, lambda, p, d, k);
    report.sector_eigenvalues[k] = (4.0 * ev_f - ev_c) / 3.0;
  }

  report.margin = report.sector_eigenvalues.at(1);
  if (report.margin < -opts.tol) {
    report.verdict = SymmetryVerdict::symmetry_broken;
  } else if (report.margin <= opts.tol) {
    report.verdict = SymmetryVerdict::marginal;
  } else {
    report.verdict = SymmetryVerdict::symmetric_stable;
  }
  return report;
}

double spectral_threshold(double theta, double p, int d, const SpectralOptions& opts) {
  const double a_c = a_critical(d);
  auto k1_at = [&](double a) {
    return k1_eigenvalue(theta, p, lambda_of(a, d), d, opts).extrapolated;
  };

  double lo = a_c - 10.0; // broken side (eigenvalue < 0)
  double hi = a_c - 0.02; // stable side (eigenvalue > 0)
  double f_lo = k1_at(lo);
  double f_hi = k1_at(hi);
  for (int tries = 0; f_hi <= 0.0 && tries < 6; ++tries) {
    hi = 0.5 * (hi + a_c);
    f_hi = k1_at(hi);
  }
  if (!(f_lo < 0.0) || !(f_hi > 0.0)) {
    throw std::runtime_error("spectral_threshold: no crossing in bracket (a_c-10, a_c)");
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = k1_at(mid);
    if (f_mid < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 2e-5) break;
  }
  return 0.5 * (lo + hi);
}

} // namespace symbreak
