#include "ruinsim/numerics/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "ruinsim/errors.hpp"

namespace ruinsim {
namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const RealFunction& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate(const RealFunction& f, std::span<const double> breakpoints,
                           const QuadratureSpec& spec) {
  if (breakpoints.size() < 2) throw DomainError("integrate: need at least two breakpoints");
  if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0)) {
    throw DomainError("integrate: tolerances must be positive");
  }
  std::priority_queue<Panel> panels;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i + 1] <= breakpoints[i]) continue;
    Panel p = gauss_kronrod(f, breakpoints[i], breakpoints[i + 1]);
    total += p.value;
    total_err += p.error;
    panels.push(p);
  }

  int splits = 0;
  while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (splits >= spec.max_subdivisions || panels.empty()) {
      throw ConvergenceError("integrate: tolerance not met within subdivision budget");
    }
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Panel left = gauss_kronrod(f, worst.lo, mid);
    const Panel right = gauss_kronrod(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++splits;
  }

  // Re-sum to shed the drift of the incremental updates.
  QuadratureResult out;
  out.intervals = static_cast<int>(panels.size());
  while (!panels.empty()) {
    out.value += panels.top().value;
    out.error += panels.top().error;
    panels.pop();
  }
  return out;
}

QuadratureResult integrate(const RealFunction& f, double lo, double hi,
                           const QuadratureSpec& spec) {
  const std::array<double, 2> pts = {lo, hi};
  return integrate(f, pts, spec);
}

double tail_of_sum(const AtomicLaw& x, const RealFunction& tail_b, double u,
                   const QuadratureSpec& spec) {
  if (u < 0.0) throw DomainError("tail_of_sum: u must be nonnegative");
  if (x.atom0 < 0.0 || x.atom0 > 1.0) throw DomainError("tail_of_sum: atom outside [0,1]");
  const double explicit_part = x.atom0 * tail_b(u) + x.ccdf(u);
  if (u == 0.0) return explicit_part;

  // Both ends of [0, u] carry the features (the density decays away from 0,
  // tail_b varies fastest near its own origin at x = u), so seed the
  // partition geometrically toward each end around the midpoint.
  std::vector<double> pts{0.0, u};
  const int levels = std::clamp(static_cast<int>(std::ceil(std::log2(u / 0.25))), 1, 24);
  for (int j = 1; j <= levels; ++j) {
    const double step = std::ldexp(u, -j);
    pts.push_back(step);
    pts.push_back(u - step);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  const auto integrand = [&](double s) { return x.density(s) * tail_b(u - s); };
  const QuadratureResult conv = integrate(integrand, pts, spec);
  return explicit_part + conv.value;
}

}  // namespace ruinsim
