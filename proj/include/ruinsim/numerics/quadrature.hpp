#pragma once

#include <functional>
#include <span>

namespace ruinsim {

struct QuadratureSpec {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  int max_subdivisions = 200;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

using RealFunction = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) integration over the partition
/// given by `breakpoints` (sorted, at least two entries). Each bisection
/// counts against spec.max_subdivisions; exceeding it throws
/// ConvergenceError.
QuadratureResult integrate(const RealFunction& f, std::span<const double> breakpoints,
                           const QuadratureSpec& spec = {});

QuadratureResult integrate(const RealFunction& f, double lo, double hi,
                           const QuadratureSpec& spec = {});

/// X = atom at zero plus an absolutely continuous part.
struct AtomicLaw {
  double atom0 = 0.0;
  RealFunction density;  // density of the continuous part on (0, inf)
  RealFunction ccdf;     // P(X > x) for x >= 0
};

/// P(X + B > u) for independent X (AtomicLaw) and B with survival function
/// tail_b, where tail_b(0) = 1:
///   atom0 * tail_b(u) + int_0^u density(x) tail_b(u - x) dx + P(X > u).
double tail_of_sum(const AtomicLaw& x, const RealFunction& tail_b, double u,
                   const QuadratureSpec& spec = {});

}  // namespace ruinsim
