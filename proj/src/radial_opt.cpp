#include "symbreak/radial_opt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "symbreak/params.hpp"
#include "symbreak/special.hpp"

namespace symbreak {

std::string to_string(ConstantFamily f) {
  switch (f) {
    case ConstantFamily::ckn_radial: return "CKN_radial";
    case ConstantFamily::wlh_radial: return "WLH_radial";
    case ConstantFamily::gn: return "GN";
    case ConstantFamily::sobolev: return "Sobolev";
    case ConstantFamily::log_sobolev: return "LogSobolev";
  }
  return "?";
}

double default_tol() {
  if (const char* env = std::getenv("SYMBREAK_TOL")) {
    const double t = std::atof(env);
    if (t > 0.0) return t;
  }
  return 1e-8;
}

namespace {

// ── discrete operators ──────────────────────────────────────────────────

// Stiffness apply: (Kv)_i with v^T K v = sum_i (v_{i+1} - v_i)^2 / h.
void apply_stiffness(const std::vector<double>& v, double h, std::vector<double>& out) {
  const int n = static_cast<int>(v.size());
  out[0] = (v[0] - v[1]) / h;
  for (int i = 1; i + 1 < n; ++i) out[i] = (2.0 * v[i] - v[i - 1] - v[i + 1]) / h;
  out[n - 1] = (v[n - 1] - v[n - 2]) / h;
}

double quadratic_form_k(const std::vector<double>& v, double h) {
  double s = 0.0;
  for (size_t i = 0; i + 1 < v.size(); ++i) {
    const double d = v[i + 1] - v[i];
    s += d * d / h;
  }
  return s;
}

// Thomas solve of (K + c W) z = rhs. K is the stiffness tridiagonal, W the
// trapezoid mass diagonal; the system is symmetric positive definite.
struct Preconditioner {
  std::vector<double> diag, off;
  mutable std::vector<double> work;
  int n = 0;

  Preconditioner(int n_, double h, const std::vector<double>& w, double c) : n(n_) {
    diag.resize(n);
    off.assign(n - 1, -1.0 / h);
    diag[0] = 1.0 / h + c * w[0];
    for (int i = 1; i + 1 < n; ++i) diag[i] = 2.0 / h + c * w[i];
    diag[n - 1] = 1.0 / h + c * w[n - 1];
    work.resize(n);
  }

  void solve(const std::vector<double>& rhs, std::vector<double>& z) const {
    std::vector<double>& c = work;
    double beta = diag[0];
    z[0] = rhs[0] / beta;
    for (int i = 1; i < n; ++i) {
      c[i] = off[i - 1] / beta;
      beta = diag[i] - off[i - 1] * c[i];
      z[i] = (rhs[i] - off[i - 1] * z[i - 1]) / beta;
    }
    for (int i = n - 2; i >= 0; --i) z[i] -= c[i + 1] * z[i + 1];
  }
};

void symmetrize_even(std::vector<double>& v) {
  const int n = static_cast<int>(v.size());
  for (int i = 0; i < n / 2; ++i) {
    const double m = 0.5 * (v[i] + v[n - 1 - i]);
    v[i] = m;
    v[n - 1 - i] = m;
  }
}

void clamp_positive(std::vector<double>& v) {
  for (double& x : v) x = std::fabs(x);
}

struct AscentResult {
  std::vector<double> v;
  double objective = 0.0;
  double residual = 0.0;
  long iterations = 0;
  bool converged = false;
};

// Shared projected-ascent driver with a safeguarded Barzilai-Borwein step.
// Objective callbacks work on coordinate vectors; `project` restores the
// feasible set (positivity, evenness, normalization); `tangentize`, when
// given, removes known neutral directions from the preconditioned step.
template <typename Value, typename Gradient, typename Project, typename Tangent>
AscentResult ascend(std::vector<double> v0, const Preconditioner& pre,
                    const std::vector<double>& w, Value value, Gradient gradient,
                    Project project, Tangent tangentize, double tol, long max_it) {
  const int n = static_cast<int>(v0.size());
  std::vector<double> g(n), z(n), v_prev(n), z_prev(n), trial(n);

  project(v0);
  double obj = value(v0);
  double best_obj = obj;
  std::vector<double> best_v = v0;

  double alpha = 0.05;
  double residual = 0.0;
  long it = 0;
  int stagnant = 0;
  bool have_prev = false;

  for (; it < max_it; ++it) {
    gradient(v0, g);

    residual = 0.0;
    for (int i = 0; i < n; ++i) residual += g[i] * g[i] / w[i];
    residual = std::sqrt(residual);

    pre.solve(g, z);
    tangentize(v0, z);

    if (have_prev) {
      double sy = 0.0, yy = 0.0;
      for (int i = 0; i < n; ++i) {
        const double s = v0[i] - v_prev[i];
        const double y = z_prev[i] - z[i]; // ascent: gradient decreases along steps
        sy += s * y;
        yy += y * y;
      }
      if (sy > 0.0 && yy > 0.0) alpha = std::clamp(sy / yy, 1e-6, 2000.0);
    }

    v_prev = v0;
    z_prev = z;

    double step = alpha;
    double new_obj = obj;
    bool accepted = false;
    for (int back = 0; back < 40; ++back) {
      for (int i = 0; i < n; ++i) trial[i] = v0[i] + step * z[i];
      project(trial);
      new_obj = value(trial);
      if (std::isfinite(new_obj) && new_obj >= obj - 1e-13 * (1.0 + std::fabs(obj))) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break; // no usable step left at this point
    v0.swap(trial);
    have_prev = true;

    const double rel_change = std::fabs(new_obj - obj) / (1.0 + std::fabs(new_obj));
    obj = new_obj;
    if (obj > best_obj) {
      best_obj = obj;
      best_v = v0;
    }

    if (rel_change <= 1e-12) {
      if (++stagnant >= 8 && residual <= tol) break;
      if (stagnant >= 2000) break; // stalled without reaching the residual target
    } else {
      stagnant = 0;
    }
  }

  AscentResult res;
  res.v = best_v;
  res.objective = best_obj;
  res.residual = residual;
  res.iterations = it;
  res.converged = residual <= tol;
  return res;
}

// ── CKN on the cylinder ─────────────────────────────────────────────────

struct CknRun {
  double value = 0.0;
  double residual = 0.0;
  long iterations = 0;
  bool converged = false;
  std::vector<double> v;
  double a_line = 0.0, b_line = 0.0, p_line = 0.0;
};

// At theta = (p-2)/(2p) -- the one-dimensional critical value, reachable only
// when d = 1 -- the ratio is invariant under s-compression and its sup equals
// the Lambda-free limit (the 1D Gagliardo-Nirenberg quotient). The optimizer
// then solves that reduced problem with the scale flow projected out, exactly
// as in the WLH endpoint case.
struct CknMode {
  bool reduced = false;
  double lam_eff = 0.0; // seed / window scale
};

CknMode ckn_mode(double theta, double p, double lambda) {
  const double denom = p * (2.0 * theta - 1.0) + 2.0;
  CknMode mode;
  if (denom <= -1e-9) {
    throw std::invalid_argument("ckn_radial_constant: theta below the 1D critical value");
  }
  if (denom <= 1e-9) {
    mode.reduced = true;
    mode.lam_eff = 1.0;
  } else {
    mode.lam_eff = lambda * (p + 2.0) / denom;
  }
  return mode;
}

CknRun ckn_run(double theta, double p, double lambda, int d, const LineGrid& grid, double tol,
               long max_it) {
  const int n = grid.n;
  const double h = grid.step();
  const std::vector<double> w = trapezoid_weights(grid);
  const CknMode mode = ckn_mode(theta, p, lambda);
  const double lam_eff = mode.lam_eff;
  const bool reduced = mode.reduced;
  if (reduced) lambda = 0.0;
  const double surface_pow = (2.0 / p - 1.0) * log_sphere_surface(d);

  std::vector<double> kv(n);
  double a_line = 0.0, b_line = 0.0, p_line = 0.0;

  auto recompute = [&](const std::vector<double>& v) {
    a_line = quadratic_form_k(v, h);
    b_line = 0.0;
    p_line = 0.0;
    for (int i = 0; i < n; ++i) {
      b_line += w[i] * v[i] * v[i];
      p_line += w[i] * std::pow(v[i], p);
    }
    a_line += lambda * b_line;
  };

  auto value = [&](const std::vector<double>& v) {
    recompute(v);
    return (2.0 / p) * std::log(p_line) - theta * std::log(a_line) -
           (1.0 - theta) * std::log(b_line);
  };

  auto remove_neutral = [&, reduced](const std::vector<double>& v, std::vector<double>& vec,
                                     bool coordinate_form) {
    if (!reduced) return;
    std::vector<double> flow(n);
    flow[0] = 0.0;
    flow[n - 1] = 0.0;
    for (int i = 1; i + 1 < n; ++i) {
      flow[i] = grid.s(i) * (v[i + 1] - v[i - 1]) / (2.0 * h) + 0.5 * v[i];
    }
    double vd = 0.0, dd = 0.0;
    for (int i = 0; i < n; ++i) {
      vd += coordinate_form ? vec[i] * flow[i] : w[i] * vec[i] * flow[i];
      dd += w[i] * flow[i] * flow[i];
    }
    if (dd > 0.0) {
      for (int i = 0; i < n; ++i) vec[i] -= (vd / dd) * (coordinate_form ? w[i] : 1.0) * flow[i];
    }
  };

  auto gradient = [&](const std::vector<double>& v, std::vector<double>& g) {
    recompute(v);
    apply_stiffness(v, h, kv);
    for (int i = 0; i < n; ++i) {
      g[i] = 2.0 * w[i] * std::pow(v[i], p - 1.0) / p_line -
             theta * (2.0 * kv[i] + 2.0 * lambda * w[i] * v[i]) / a_line -
             2.0 * (1.0 - theta) * w[i] * v[i] / b_line;
    }
    remove_neutral(v, g, true);
  };

  auto project = [&](std::vector<double>& v) {
    clamp_positive(v);
    symmetrize_even(v);
    double m = 0.0;
    for (int i = 0; i < n; ++i) m += w[i] * v[i] * v[i];
    const double scale = 1.0 / std::sqrt(m);
    for (double& x : v) x *= scale;
  };

  const Preconditioner pre(n, h, w, 1.0 + lam_eff);

  // Multistart over three widths of the sech-shaped seed.
  const double nu = 2.0 / (p - 2.0);
  const double kappa = 0.5 * (p - 2.0) * std::sqrt(lam_eff);
  CknRun best;
  best.value = -1.0;
  for (double widen : {0.6, 1.0, 1.8}) {
    std::vector<double> v0(n);
    for (int i = 0; i < n; ++i) {
      v0[i] = std::pow(1.0 / std::cosh(kappa * widen * grid.s(i)), nu);
    }
    AscentResult r = ascend(
        std::move(v0), pre, w, value, gradient, project,
        [&](const std::vector<double>& v, std::vector<double>& z) {
          remove_neutral(v, z, false);
        },
        tol, max_it);
    const double val = std::exp(r.objective + surface_pow);
    if (val > best.value) {
      best.value = val;
      best.residual = r.residual;
      best.iterations = r.iterations;
      best.converged = r.converged;
      best.v = std::move(r.v);
    }
  }
  recompute(best.v);
  best.a_line = a_line - lambda * b_line; // plain gradient energy
  best.b_line = b_line;
  best.p_line = p_line;
  return best;
}

LineGrid ckn_auto_grid(double theta, double p, double lambda, const OptimizerOptions& opts) {
  const double lam_eff = ckn_mode(theta, p, lambda).lam_eff;
  double length = opts.length;
  length = std::max(length, 32.0 / std::sqrt(lam_eff));
  length = std::max(length, 8.0 * std::sqrt(2.0 / ((p - 2.0) * lam_eff)));
  length = std::min(length, 400.0);
  return LineGrid{length, opts.n};
}

// ── WLH on the cylinder ─────────────────────────────────────────────────

struct WlhRun {
  double value = 0.0;
  double residual = 0.0;
  long iterations = 0;
  bool converged = false;
  std::vector<double> v;
  double grad_line = 0.0, mass_line = 0.0;
};

WlhRun wlh_run(double gamma, double lambda, int d, const LineGrid& grid, double tol,
               long max_it) {
  const int n = grid.n;
  const double h = grid.step();
  const std::vector<double> w = trapezoid_weights(grid);
  const double surface = sphere_surface(d);

  // At the endpoint gamma = 1/4 the Lambda exponent -1 + 1/(4 gamma) vanishes
  // and the constant equals its scale-invariant zero-Lambda limit (the sup is
  // approached by compressing any profile in s). The reduced functional is
  // optimized instead, with the profile width pinned: every width maximizes,
  // so the second-moment constraint just selects a resolved representative.
  const bool reduced = std::fabs(4.0 * gamma - 1.0) <= 1e-9;
  if (reduced) lambda = 0.0;

  std::vector<double> kv(n);
  double g_line = 0.0, entropy = 0.0;

  auto recompute = [&](const std::vector<double>& y) {
    g_line = quadratic_form_k(y, h);
    entropy = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = y[i] * y[i];
      if (x > 0.0) entropy += w[i] * x * std::log(x);
    }
    entropy *= surface;
  };

  auto value = [&](const std::vector<double>& y) {
    recompute(y);
    return entropy / (2.0 * gamma) - std::log(surface * g_line + lambda);
  };

  // Removes the coordinate-form components of `vec` along the normalization
  // direction and, in the reduced endpoint problem, along the value-neutral
  // scale flow s y' + y/2. `coordinate_form` says whether vec carries the
  // quadrature weights (gradients do, step directions do not).
  auto remove_neutral = [&, reduced](const std::vector<double>& y, std::vector<double>& vec,
                                     bool coordinate_form) {
    auto project_out = [&](const std::vector<double>& dir) {
      double vd = 0.0, dd = 0.0;
      for (int i = 0; i < n; ++i) {
        vd += coordinate_form ? vec[i] * dir[i] : w[i] * vec[i] * dir[i];
        dd += w[i] * dir[i] * dir[i];
      }
      if (dd > 0.0) {
        for (int i = 0; i < n; ++i) vec[i] -= (vd / dd) * (coordinate_form ? w[i] : 1.0) * dir[i];
      }
    };
    project_out(y);
    if (reduced) {
      std::vector<double> flow(n);
      flow[0] = 0.0;
      flow[n - 1] = 0.0;
      for (int i = 1; i + 1 < n; ++i) {
        flow[i] = grid.s(i) * (y[i + 1] - y[i - 1]) / (2.0 * h) + 0.5 * y[i];
      }
      project_out(flow);
      project_out(y);
      project_out(flow);
    }
  };

  auto gradient = [&](const std::vector<double>& y, std::vector<double>& g) {
    recompute(y);
    apply_stiffness(y, h, kv);
    const double denom = surface * g_line + lambda;
    for (int i = 0; i < n; ++i) {
      // 2 log|y| instead of log(y^2): y^2 underflows to zero long before y.
      const double ylog =
          (y[i] != 0.0) ? y[i] * (2.0 * std::log(std::fabs(y[i])) + 1.0) : 0.0;
      g[i] = surface * w[i] * ylog / gamma - 2.0 * surface * kv[i] / denom;
    }
    remove_neutral(y, g, true);
  };

  auto project = [&](std::vector<double>& y) {
    clamp_positive(y);
    symmetrize_even(y);
    double m = 0.0;
    for (int i = 0; i < n; ++i) m += w[i] * y[i] * y[i];
    const double scale = 1.0 / std::sqrt(surface * m);
    for (double& x : y) x *= scale;
  };

  const Preconditioner pre(n, h, w, 1.0 + lambda);

  // Seed width: the stationary Gaussian width for gamma > 1/4; any resolved
  // width in the reduced endpoint problem.
  const double beta = reduced ? 0.5 : lambda / (4.0 * gamma - 1.0);
  WlhRun best;
  best.value = -1.0;
  for (double widen : {0.5, 1.0, 2.0}) {
    std::vector<double> y0(n);
    for (int i = 0; i < n; ++i) y0[i] = std::exp(-beta * widen * grid.s(i) * grid.s(i));
    AscentResult r = ascend(
        std::move(y0), pre, w, value, gradient, project,
        [&](const std::vector<double>& y, std::vector<double>& z) {
          remove_neutral(y, z, false);
        },
        tol, max_it);
    const double val = std::exp(r.objective);
    if (val > best.value) {
      best.value = val;
      best.residual = r.residual;
      best.iterations = r.iterations;
      best.converged = r.converged;
      best.v = std::move(r.v);
    }
  }
  recompute(best.v);
  best.grad_line = g_line;
  best.mass_line = 0.0;
  for (int i = 0; i < n; ++i) best.mass_line += w[i] * best.v[i] * best.v[i];
  return best;
}

LineGrid wlh_auto_grid(double gamma, double lambda, const OptimizerOptions& opts) {
  const double beta = lambda / std::max(4.0 * gamma - 1.0, 0.02);
  double length = std::max(opts.length, std::sqrt(34.0 / (0.5 * beta)));
  length = std::min(length, 400.0);
  return LineGrid{length, opts.n};
}

LineGrid coarse_grid(const LineGrid& g) { return LineGrid{g.length, g.n / 2}; }

} // namespace

RadialSolution ckn_radial_constant(double theta, double p, double lambda, int d,
                                   const OptimizerOptions& opts) {
  if (d < 1) throw std::invalid_argument("ckn_radial_constant: d >= 1 required");
  if (!(p > 2.0)) throw std::invalid_argument("ckn_radial_constant: p > 2 required");
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("ckn_radial_constant: theta in (0, 1] required");
  }
  if (!(lambda > 0.0)) throw std::invalid_argument("ckn_radial_constant: Lambda > 0 required");

  LineGrid grid = ckn_auto_grid(theta, p, lambda, opts);
  CknRun fine = ckn_run(theta, p, lambda, d, grid, opts.tol, opts.max_iterations);

  // Extend the window if the maximizer has not decayed at the ends.
  for (int retry = 0; retry < 2; ++retry) {
    LineProfile probe = make_profile(grid, fine.v);
    if (decays_at_ends(probe)) break;
    grid.length *= 1.5;
    fine = ckn_run(theta, p, lambda, d, grid, opts.tol, opts.max_iterations);
  }

  RadialSolution out;
  out.estimate.family = ConstantFamily::ckn_radial;
  out.estimate.grid = grid;
  out.estimate.value = fine.value;
  out.estimate.residual = fine.residual;
  out.estimate.iterations = fine.iterations;
  out.estimate.converged = fine.converged;

  if (opts.richardson && grid.n >= 64) {
    CknRun coarse =
        ckn_run(theta, p, lambda, d, coarse_grid(grid), opts.tol, opts.max_iterations);
    out.estimate.value = (4.0 * fine.value - coarse.value) / 3.0;
    out.estimate.converged = fine.converged && coarse.converged;
    out.estimate.iterations += coarse.iterations;
  }

  out.maximizer = make_profile(grid, fine.v);
  out.grad_sq_line = fine.a_line;
  out.mass_sq_line = fine.b_line;
  out.p_int_line = fine.p_line;
  const double a_full = fine.a_line + lambda * fine.b_line;
  out.mu = std::pow(a_full, theta) * std::pow(fine.b_line, 1.0 - theta) / fine.p_line;
  return out;
}

RadialSolution wlh_radial_constant(double gamma, double lambda, int d,
                                   const OptimizerOptions& opts) {
  if (d < 1) throw std::invalid_argument("wlh_radial_constant: d >= 1 required");
  if (!(gamma >= 0.25 * d)) throw std::invalid_argument("wlh_radial_constant: gamma >= d/4 required");
  if (d == 2 && !(gamma > 0.5)) {
    throw std::invalid_argument("wlh_radial_constant: gamma > 1/2 required when d=2");
  }
  if (!(lambda > 0.0)) throw std::invalid_argument("wlh_radial_constant: Lambda > 0 required");

  LineGrid grid = wlh_auto_grid(gamma, lambda, opts);
  WlhRun fine = wlh_run(gamma, lambda, d, grid, opts.tol, opts.max_iterations);

  RadialSolution out;
  out.estimate.family = ConstantFamily::wlh_radial;
  out.estimate.grid = grid;
  out.estimate.value = fine.value;
  out.estimate.residual = fine.residual;
  out.estimate.iterations = fine.iterations;
  out.estimate.converged = fine.converged;

  if (opts.richardson && grid.n >= 64) {
    WlhRun coarse =
        wlh_run(gamma, lambda, d, coarse_grid(grid), opts.tol, opts.max_iterations);
    out.estimate.value = (4.0 * fine.value - coarse.value) / 3.0;
    out.estimate.converged = fine.converged && coarse.converged;
    out.estimate.iterations += coarse.iterations;
  }

  out.maximizer = make_profile(grid, fine.v);
  out.grad_sq_line = fine.grad_line;
  out.mass_sq_line = fine.mass_line;
  return out;
}

// ── Gagliardo-Nirenberg by radial shooting ──────────────────────────────

namespace {

enum class ShotOutcome { overshoot, undershoot, decayed };

struct ShotNorms {
  double mass = 0.0, grad = 0.0, pnorm = 0.0; // radial integrals with r^{d-1}
  double r_end = 0.0;
};

struct Shot {
  ShotOutcome outcome = ShotOutcome::undershoot;
  ShotNorms norms;
};

// One RK4 integration of u'' + (d-1)/r u' - u + |u|^{p-2} u = 0.
Shot shoot(double beta, double p, int d, double h, double r_max, bool accumulate) {
  auto nl = [p](double u) { return u >= 0.0 ? std::pow(u, p - 1.0) : -std::pow(-u, p - 1.0); };
  auto rhs = [&](double r, double u, double du) {
    double damp = (d > 1 && r > 0.0) ? (d - 1) / r * du : 0.0;
    return -damp + u - nl(u);
  };

  double r = (d == 1) ? 0.0 : 1e-6;
  double u = beta + (beta - nl(beta)) / (2.0 * d) * r * r;
  double du = (beta - nl(beta)) / d * r;

  Shot shot;
  auto weight = [&](double rr) { return (d == 1) ? 1.0 : std::pow(rr, d - 1.0); };

  // Simpson accumulation over step pairs.
  double f0m = u * u * weight(r), f0g = du * du * weight(r),
         f0p = std::pow(std::fabs(u), p) * weight(r);
  int parity = 0;
  double fm_mid = 0, fg_mid = 0, fp_mid = 0;

  while (r < r_max) {
    const double k1u = du, k1v = rhs(r, u, du);
    const double k2u = du + 0.5 * h * k1v, k2v = rhs(r + 0.5 * h, u + 0.5 * h * k1u, du + 0.5 * h * k1v);
    const double k3u = du + 0.5 * h * k2v, k3v = rhs(r + 0.5 * h, u + 0.5 * h * k2u, du + 0.5 * h * k2v);
    const double k4u = du + h * k3v, k4v = rhs(r + h, u + h * k3u, du + h * k3v);
    u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    du += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    r += h;

    if (accumulate) {
      const double wr = weight(r);
      const double fm = u * u * wr, fg = du * du * wr, fp = std::pow(std::fabs(u), p) * wr;
      if (parity == 0) {
        fm_mid = fm;
        fg_mid = fg;
        fp_mid = fp;
        parity = 1;
      } else {
        shot.norms.mass += h / 3.0 * (f0m + 4.0 * fm_mid + fm);
        shot.norms.grad += h / 3.0 * (f0g + 4.0 * fg_mid + fg);
        shot.norms.pnorm += h / 3.0 * (f0p + 4.0 * fp_mid + fp);
        f0m = fm;
        f0g = fg;
        f0p = fp;
        parity = 0;
      }
    }

    if (u < 0.0) {
      shot.outcome = ShotOutcome::overshoot;
      return shot;
    }
    if (u < 1e-9 * beta && du < 0.0) {
      shot.outcome = ShotOutcome::decayed;
      shot.norms.r_end = r;
      return shot;
    }
    if (du > 0.0 && u < 0.9 * beta) {
      shot.outcome = ShotOutcome::undershoot;
      return shot;
    }
  }
  shot.outcome = (du > 0.0) ? ShotOutcome::undershoot : ShotOutcome::decayed;
  shot.norms.r_end = r;
  return shot;
}

double find_ground_state(double p, int d, const ShootingOptions& sopt) {
  double lo = 1.0 + 1e-9;
  double hi = 2.0;
  for (int i = 0; i < 60; ++i) {
    if (shoot(hi, p, d, sopt.step, sopt.r_max, false).outcome == ShotOutcome::overshoot) break;
    lo = hi;
    hi *= 2.0;
    if (i == 59) throw std::runtime_error("gn_constant: shooting bracket failure (no overshoot)");
  }
  for (int i = 0; i < sopt.bisections; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const ShotOutcome o = shoot(mid, p, d, sopt.step, sopt.r_max, false).outcome;
    if (o == ShotOutcome::overshoot) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double gn_value_from_norms(const ShotNorms& nn, double p, int d) {
  const double surface = (d == 1) ? 2.0 : sphere_surface(d);
  const double vt = vartheta_of(d, p);
  const double mass = surface * nn.mass;
  const double grad = surface * nn.grad;
  const double pint = surface * nn.pnorm;
  return std::pow(pint, 2.0 / p) / (std::pow(grad, vt) * std::pow(mass, 1.0 - vt));
}

} // namespace

ConstantEstimate gn_constant(double p, int d, const ShootingOptions& shoot_opt) {
  if (d < 1) throw std::invalid_argument("gn_constant: d >= 1 required");
  if (!(p > 2.0)) throw std::invalid_argument("gn_constant: p > 2 required");
  const double ts = two_star_of(d);
  if (d >= 3 && std::fabs(p - ts) < 1e-9) {
    // Endpoint vartheta = 1: the GN constant is the Sobolev constant; the
    // massive ground state does not exist there, so take the Sobolev route.
    ConstantEstimate est = sobolev_constant(d);
    est.family = ConstantFamily::gn;
    return est;
  }
  if (!(p < ts)) throw std::invalid_argument("gn_constant: p inside (2, 2*) required");

  const double beta = find_ground_state(p, d, shoot_opt);
  // At the converged beta any residual overshoot/undershoot event happens in
  // the far tail, so the accumulated norms are complete either way.
  Shot fine = shoot(beta, p, d, shoot_opt.step, shoot_opt.r_max, true);
  Shot coarse = shoot(beta, p, d, 2.0 * shoot_opt.step, shoot_opt.r_max, true);

  ConstantEstimate est;
  est.family = ConstantFamily::gn;
  est.value = gn_value_from_norms(fine.norms, p, d);
  est.grid = LineGrid{fine.norms.r_end, static_cast<int>(fine.norms.r_end / shoot_opt.step)};
  est.residual = std::fabs(est.value - gn_value_from_norms(coarse.norms, p, d)) /
                 std::max(est.value, 1e-300);
  est.iterations = shoot_opt.bisections;
  est.converged = true;
  return est;
}

ConstantEstimate sobolev_constant(int d, const OptimizerOptions& opts) {
  if (d < 3) throw std::invalid_argument("sobolev_constant: d >= 3 required");
  const double ac = a_critical(d);
  RadialSolution sol = ckn_radial_constant(1.0, two_star_of(d), ac * ac, d, opts);
  ConstantEstimate est = sol.estimate;
  est.family = ConstantFamily::sobolev;
  return est;
}

// ── logarithmic Sobolev constant ────────────────────────────────────────

namespace {

struct LsiSides {
  double mass = 0.0, entropy = 0.0, grad = 0.0;
};

// Radial quadrature of the Gaussian u_t(x) = (2 pi t)^{-d/4} exp(-|x|^2/(4t))
// through r = e^s, which makes the integrand doubly exponentially small at
// both ends of the s-window.
LsiSides gaussian_sides(double t, int d) {
  const LineGrid g{30.0, 4097};
  const std::vector<double> w = trapezoid_weights(g);
  const double norm = std::pow(2.0 * pi * t, -0.5 * d);
  const double surface = (d == 1) ? 2.0 : sphere_surface(d);
  LsiSides out;
  for (int i = 0; i < g.n; ++i) {
    const double r = std::exp(g.s(i));
    const double jac = std::pow(r, double(d)); // r^{d-1} dr = r^d ds
    const double u2 = norm * std::exp(-r * r / (2.0 * t));
    const double lu2 = std::log(norm) - r * r / (2.0 * t);
    out.mass += w[i] * u2 * jac;
    out.entropy += w[i] * u2 * lu2 * jac;
    out.grad += w[i] * (r * r / (4.0 * t * t)) * u2 * jac;
  }
  out.mass *= surface;
  out.entropy *= surface;
  out.grad *= surface;
  return out;
}

double lsi_constant_at(double t, int d) {
  const LsiSides s = gaussian_sides(t, d);
  return std::exp(2.0 * s.entropy / (d * s.mass)) * s.mass / s.grad;
}

} // namespace

LogSobolevResult log_sobolev_constant(int d) {
  if (d < 1) throw std::invalid_argument("log_sobolev_constant: d >= 1 required");

  LogSobolevResult out;
  const LsiSides at_one = gaussian_sides(1.0, d);
  const double c_closed = lsi_constant_at(1.0, d);

  // Check route: one-parameter Gaussian-family maximization (golden section).
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = 0.2, hi = 5.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = lsi_constant_at(x1, d), f2 = lsi_constant_at(x2, d);
  long iters = 0;
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = lsi_constant_at(x2, d);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = lsi_constant_at(x1, d);
    }
    ++iters;
  }
  out.check_route_value = lsi_constant_at(0.5 * (lo + hi), d);

  out.estimate.family = ConstantFamily::log_sobolev;
  out.estimate.value = c_closed;
  out.estimate.grid = LineGrid{30.0, 4097};
  out.estimate.iterations = iters;
  out.estimate.residual = std::fabs(c_closed - out.check_route_value) / c_closed +
                          std::fabs(at_one.mass - 1.0);
  out.estimate.converged = out.estimate.residual < 1e-8;

  out.lhs_at_extremal = at_one.entropy;
  out.rhs_at_extremal = 0.5 * d * std::log(c_closed * at_one.grad);
  return out;
}

} // namespace symbreak
