#ifndef SYMBREAK_PARAMS_HPP
#define SYMBREAK_PARAMS_HPP

#include <limits>
#include <string>

namespace symbreak {

/// Marks a parameter of ParamSet as "not supplied".
inline constexpr double unset = std::numeric_limits<double>::quiet_NaN();

inline bool is_set(double x) { return x == x; }

enum class Family { ckn, wlh };

/// The full parameter tuple (d, a, b, p, theta, gamma). Fields that do not
/// apply to the selected family may be left at `unset`.
struct ParamSet {
  int d = 3;
  double a = 0.0;
  double b = unset;
  double p = unset;
  double theta = unset;
  double gamma = unset;
};

/// Quantities derived from a ParamSet. `two_star` is +infinity when d = 1, 2
/// (an explicit unbounded sentinel, so window comparisons like p <= 2* stay
/// meaningful).
struct DerivedParams {
  double a_c = 0.0;       // (d-2)/2
  double lambda = 0.0;    // (a - a_c)^2
  double vartheta = unset;  // d (p-2) / (2p), needs p
  double p_of_ab = unset;   // 2d / (d-2+2(b-a)), needs b
  double two_star = 0.0;
};

struct Verdict {
  bool ok = true;
  std::string reason; // first violated condition, empty when ok
};

double a_critical(int d);
double lambda_of(double a, int d);
double vartheta_of(int d, double p);
double p_from_ab(int d, double a, double b);
double two_star_of(int d);

/// Fills every derived field that the supplied parameters allow.
/// Rejects d < 1, and p <= 0 when the CKN branch is selected (p set).
DerivedParams derive(const ParamSet& ps);

/// Total admissibility predicate for the selected family, implementing the
/// parameter windows verbatim: never throws, reports the first violation.
Verdict admissible(const ParamSet& ps, Family family);

} // namespace symbreak

#endif
