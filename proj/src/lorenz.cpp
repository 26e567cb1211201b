#include "surprisal/lorenz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "surprisal/approx.hpp"
#include "surprisal/io.hpp"

namespace surprisal {

namespace {

void snap(double& v, double target, double tol, const char* what) {
  if (std::abs(v - target) > tol) fail(errc::invalid_curve, what);
  v = target;
}

}  // namespace

LorenzCurve make_lorenz_curve(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2) fail(errc::invalid_curve, "need at least two breakpoints");
  snap(points.front().first, 0.0, 1e-12, "curve must start at x=0");
  snap(points.front().second, 0.0, 1e-12, "curve must start at y=0");
  snap(points.back().first, 1.0, 1e-9, "curve must end at x=1");
  snap(points.back().second, 1.0, 1e-9, "curve must end at y=1");
  double prev_slope = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < points.size(); ++k) {
    double dx = points[k].first - points[k - 1].first;
    double dy = points[k].second - points[k - 1].second;
    if (!(dx > 0.0)) fail(errc::invalid_curve, "abscissae must be strictly increasing");
    if (dy < -1e-12) fail(errc::invalid_curve, "ordinates must be non-decreasing");
    double slope = dy / dx;
    if (slope > prev_slope + 1e-9 * std::max(1.0, std::abs(prev_slope)))
      fail(errc::invalid_curve, "curve is not concave");
    prev_slope = slope;
  }
  return LorenzCurve{std::move(points)};
}

LorenzCurve lorenz_curve(const Dichotomy& d) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<std::size_t>(d.dim()) + 1);
  pts.emplace_back(0.0, 0.0);
  double x = 0.0, y = 0.0;
  for (int k = 0; k < d.dim(); ++k) {
    x += d.s_at(k);
    y += d.p_at(k);
    pts.emplace_back(x, y);
  }
  snap(pts.back().first, 1.0, 1e-9, "reference mass does not sum to 1");
  snap(pts.back().second, 1.0, 1e-9, "state mass does not sum to 1");
  return LorenzCurve{std::move(pts)};
}

double eval_at(const LorenzCurve& c, double x) {
  if (!(x >= 0.0 && x <= 1.0)) fail(errc::out_of_range, "x = " + std::to_string(x));
  const auto& pts = c.points;
  auto it = std::lower_bound(pts.begin(), pts.end(), x,
                             [](const std::pair<double, double>& pt, double v) {
                               return pt.first < v;
                             });
  if (it == pts.end()) return pts.back().second;
  if (it->first == x) return it->second;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  double t = (x - lo.first) / (hi.first - lo.first);
  return lo.second + t * (hi.second - lo.second);
}

TransitionVerdict dominates(const LorenzCurve& upper, const LorenzCurve& lower) {
  std::vector<double> xs;
  xs.reserve(upper.points.size() + lower.points.size());
  for (const auto& pt : upper.points) xs.push_back(pt.first);
  for (const auto& pt : lower.points) xs.push_back(pt.first);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  double worst = std::numeric_limits<double>::infinity();
  double witness = 0.0;
  for (double x : xs) {
    double gap = eval_at(upper, x) - eval_at(lower, x);
    if (gap < worst) {
      worst = gap;
      witness = x;
    }
  }
  return TransitionVerdict{worst >= -1e-12, worst, witness};
}

TransitionVerdict exact_transition(const Dichotomy& from, const Dichotomy& to) {
  return dominates(lorenz_curve(from), lorenz_curve(to));
}

TransitionVerdict approx_transition(const Dichotomy& from, const Dichotomy& to, double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) fail(errc::invalid_epsilon, "eps must lie in [0,1)");
  ApproxState flat = flat_approximation(to, eps);
  Dichotomy target = make_dichotomy(flat.spectrum, to.s);
  return dominates(lorenz_curve(from), lorenz_curve(target));
}

std::pair<double, double> slope_bounds(const Dichotomy& d) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int i = 0; i < d.dim(); ++i) {
    if (d.p[i] <= 0.0) continue;
    double r = d.p[i] / d.s[i];
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo, hi};
}

void write_curve_csv(const LorenzCurve& c, std::ostream& os) {
  os << "x,y\n";
  for (const auto& pt : c.points) os << g17(pt.first) << ',' << g17(pt.second) << '\n';
}

}  // namespace surprisal
