#pragma once

#include <complex>
#include <vector>

#include "jacobi/ansatz.hpp"
#include "jacobi/coefficients.hpp"
#include "jacobi/scaled.hpp"
#include "jacobi/volterra.hpp"

namespace jacobi {

enum class SolutionKind { FirstKind, SecondKind, Jost, ConjugateJost, Growing, Custom };

/// A solution F_n of a_{n-1} F_{n-1} + (b_n - z) F_n + a_n F_{n+1} = 0 on
/// the indices first..first+size-1.
struct SolutionSeq {
  SolutionKind kind = SolutionKind::Custom;
  std::complex<double> z;
  long first = -1;
  std::vector<ScaledComplex> values;

  long last() const { return first + long(values.size()) - 1; }
  ScaledComplex at(long n) const { return values.at(n - first); }
  std::complex<double> value(long n) const { return at(n).value(); }
};

SolutionSeq as_solution(const JostBundle& bundle);

enum class Direction { Forward, Backward };

/// Runs the recurrence from the seeds F_{n0}, F_{n0+1}: forward up to `end`
/// or backward down to `end` (>= -1).
SolutionSeq recurrence_solve(const CoefficientModel& model, std::complex<double> z, long n0, ScaledComplex f_n0,
                             ScaledComplex f_n0p1, Direction dir, long end);

/// P_{-1} = 0, P_0 = 1.
SolutionSeq first_kind(const CoefficientModel& model, std::complex<double> z, long n_max);
/// P~_{-1} = -2, P~_0 = 0, so that P~_1 = 1/a_0.
SolutionSeq second_kind(const CoefficientModel& model, std::complex<double> z, long n_max);

/// a_n (f_n g_{n+1} - f_{n+1} g_n), with a_{-1} = 1/2.
ScaledComplex wronskian(const CoefficientModel& model, const SolutionSeq& f, const SolutionSeq& g, long n);

struct ConstancyReport {
  std::complex<double> reference;  ///< Wronskian at the first index
  double max_deviation = 0;        ///< max |W_n - W_ref| / (|W_ref| + rounding scale of the summands)
  long worst_index = 0;
};

ConstancyReport wronskian_constancy(const CoefficientModel& model, const SolutionSeq& f, const SolutionSeq& g,
                                    long n_lo, long n_hi);

/// Relative residual of the three-term recurrence at index n >= 0.
double recurrence_residual(const CoefficientModel& model, const SolutionSeq& f, long n);

/// g_n = f_n sum_{m=n0}^{n} (a_{m-1} f_{m-1} f_m)^{-1} for n >= n0 - 1, continued
/// backward to n = -1 by the recurrence; {f, g} = 1.
SolutionSeq growing_g(const CoefficientModel& model, const SolutionSeq& f, long n0 = 1);

struct AsymptoticFit {
  std::complex<double> k_plus, k_minus;
  double kappa = 0;  ///< |k_plus|
  double eta = 0;    ///< arg k_plus
  long n_star = 0;   ///< first index of the averaging window
  std::complex<double> wronskian_ff;  ///< measured {f, f~}
  std::complex<double> wronskian_theory;  ///< 2i sqrt(1 - beta_inf^2) / varkappa_inf
};

/// F = k_+ f + k_- f~ in the oscillating regime; Wronskians are averaged
/// over 8 indices starting where eps_n < 1e-3.
AsymptoticFit fit_k_coeffs(const CoefficientModel& model, const Regime& regime, const SolutionSeq& F,
                           const SolutionSeq& f, const SolutionSeq& f_conj);

enum class AsymptoticForm {
  Oscillating,  ///< sqrt(a_n) F_n ~ k_+ e^{-i phi_n} + k_- e^{i phi_n}
  Growing,      ///< sqrt(a_n) sgn^n e^{-varphi_n} F_n ~ limit
  Decaying      ///< F_n / Q_n ~ limit
};

struct AsymptoticReport {
  std::vector<long> n;
  std::vector<std::complex<double>> rescaled, predicted;
  std::vector<double> residual;
  double max_residual = 0;
  double decay_exponent = 0;  ///< slope of log residual against log n
  double fitted_c = 0;        ///< max residual_n / eps_n when eps is supplied
};

struct AsymptoticTarget {
  std::complex<double> k_plus, k_minus, limit;
};

AsymptoticReport verify_asymptotics(const CoefficientModel& model, const AnsatzTable& table, const SolutionSeq& F,
                                    AsymptoticForm form, const AsymptoticTarget& target, long n_lo, long n_hi,
                                    const std::vector<double>* eps = nullptr);

struct IdentityReport {
  double kappa_z = 0, kappa_zbar = 0;
  double lhs = 0;  ///< kappa(conj z)^2 - kappa(z)^2
  double rhs = 0;  ///< Im z varkappa_inf (1 - beta^2)^{-1/2} sum |P_n|^2
  double sum_p2 = 0, tail = 0;
  double relative_gap = 0;
};

/// Both sides of the identity relating kappa(z), kappa(conj z) and the l^2 norm of P(z).
IdentityReport identity_thm_kappa(const CoefficientModel& model, const Regime& regime, std::complex<double> z,
                                  const JostOptions& opts = {});

}  // namespace jacobi
