#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ruinsim/numerics/matrix.hpp"
#include "ruinsim/rng.hpp"

namespace ruinsim {

/// Continuous phase-type law PH(pi, T): absorption time of a Markov jump
/// process with initial law pi on the transient states and sub-intensity
/// matrix T. The exit vector is t = -T e.
class PhaseType {
 public:
  /// Validates pi (nonnegative, sums to 1 within 1e-12) and T (negative
  /// diagonal, nonnegative off-diagonal, nonpositive row sums, nonsingular).
  PhaseType(Vector initial, SquareMatrix generator);

  static PhaseType exponential(double rate);
  static PhaseType erlang(std::size_t stages, double rate);
  /// Probabilistic mixture of phase-type laws (block-diagonal generator).
  static PhaseType mixture(std::span<const double> weights, std::span<const PhaseType> parts);

  std::size_t order() const noexcept { return initial_.size(); }
  const Vector& initial() const noexcept { return initial_; }
  const SquareMatrix& generator() const noexcept { return generator_; }
  const Vector& exit() const noexcept { return exit_; }

  bool is_exponential() const noexcept { return order() == 1; }
  /// Rate of the single phase; meaningful only when is_exponential().
  double rate() const noexcept { return exit_[0]; }

  double density(double x) const;
  double cdf(double x) const;
  double ccdf(double x) const;
  double mean() const noexcept { return mean_; }
  double second_moment() const;

  /// Stationary-excess law: same generator, initial law pi (-T)^{-1} / mean.
  PhaseType excess() const;

  /// Simulates the jump chain until absorption.
  double sample(RngStream& rng) const;

 private:
  Vector initial_;
  SquareMatrix generator_;
  Vector exit_;
  double mean_ = 0.0;
  // Sampling tables: cumulative initial law, holding rates, and per-state
  // cumulative jump probabilities (last column = absorption).
  std::vector<double> initial_cdf_;
  std::vector<double> hold_rate_;
  std::vector<std::vector<double>> jump_cdf_;
};

/// Law with an atom at 0 of mass 1 - alpha e and a defective phase-type
/// part (alpha, S). Ladder-height maxima of compound Poisson models with
/// phase-type claims have this form.
class DefectivePhaseType {
 public:
  DefectivePhaseType(Vector alpha, SquareMatrix generator);

  std::size_t order() const noexcept { return alpha_.size(); }
  const Vector& alpha() const noexcept { return alpha_; }
  const SquareMatrix& generator() const noexcept { return generator_; }
  const Vector& exit() const noexcept { return exit_; }

  double atom() const noexcept { return atom_; }
  /// Density of the continuous part (integrates to 1 - atom()).
  double density(double x) const;
  /// P(X > x) = alpha exp(S x) e.
  double ccdf(double x) const;

  /// Law of the sum of two independent copies.
  DefectivePhaseType convolve_self() const;

 private:
  Vector alpha_;
  SquareMatrix generator_;
  Vector exit_;
  double atom_ = 0.0;
};

}  // namespace ruinsim
