#pragma once

namespace ruinsim {

/// e^{-x} A_m(x), where A_m is the antiderivative of e^t t^{-m} normalized
/// by A_1 = Ei and A_m = (A_{m-1} - e^x x^{1-m}) / (m - 1); F_0 = 1.
double scaled_expint_antiderivative(int m, double x);

/// x F_m(x) - F_{m-1}(x), evaluated without the cancellation that the
/// direct difference suffers for large x.
double scaled_expint_difference(int m, double x);

/// Exact tails of M + H_e and M + M' + H_e when the discard maximum M has an
/// atom 1 - rho_d at zero and an Exp(c) continuous part (exponential light
/// claims), and H_e has survival (1 + x/b)^{-m} for integer m >= 1 (shifted
/// Pareto claims with integer shape a = m + 1).
class ExpParetoConvolution {
 public:
  static constexpr int kMaxTailIndex = 4;

  /// rho_d: discard intensity; decay: c = mu (1 - rho_d); scale: b;
  /// tail_index: m = a - 1 in [1, kMaxTailIndex].
  ExpParetoConvolution(double rho_d, double decay, double scale, int tail_index);

  /// P(M + H_e > u).
  double summand_tail(double u) const;
  /// P(M + M' + H_e > u).
  double leading_pair_tail(double u) const;

 private:
  struct Pieces {
    double pareto_tail;  // (1 + u/b)^{-m}
    double light_tail;   // e^{-c u}
    double exp_conv;     // int_0^u c e^{-cx} T(u - x) dx
  };
  Pieces pieces(double u) const;

  double rho_d_;
  double decay_;
  double scale_;
  int tail_index_;
  double k_;       // c b
  double k_pow_;   // (c b)^m
  double f_m_k_;   // F_m(c b)
  double f_m1_k_;  // F_{m-1}(c b)
};

}  // namespace ruinsim
