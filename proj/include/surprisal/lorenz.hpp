#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "surprisal/measures.hpp"

namespace surprisal {

// Piecewise-linear concave curve through (0,0), the sigma-ordered prefix
// sums (sum s_i, sum p_i), and (1,1).
struct LorenzCurve {
  std::vector<std::pair<double, double>> points;
};

// Validating constructor for externally assembled breakpoint lists.
LorenzCurve make_lorenz_curve(std::vector<std::pair<double, double>> points);

LorenzCurve lorenz_curve(const Dichotomy& d);

// Linear interpolation; x must lie in [0,1].
double eval_at(const LorenzCurve& c, double x);

struct TransitionVerdict {
  bool decision;
  double worst_gap;   // signed min of upper(x) - lower(x) over the breakpoint union
  double witness_x;   // abscissa attaining worst_gap
};

// Does `upper` lie on or above `lower` everywhere?  Both curves are piecewise
// linear, so the pointwise gap is checked exactly at the union of breakpoint
// abscissae, with 1e-12 slack.
TransitionVerdict dominates(const LorenzCurve& upper, const LorenzCurve& lower);

// Exact relative majorization: curve(from) dominates curve(to).
TransitionVerdict exact_transition(const Dichotomy& from, const Dichotomy& to);

// Approximate transition: curve(from) must dominate the curve of the
// eps-flat approximation of `to`; eps in [0,1).
TransitionVerdict approx_transition(const Dichotomy& from, const Dichotomy& to, double eps);

// (min, max) of p_i/s_i over the support of p.
std::pair<double, double> slope_bounds(const Dichotomy& d);

// Two-column CSV with header "x,y", 17 significant digits per value.
void write_curve_csv(const LorenzCurve& c, std::ostream& os);

}  // namespace surprisal
