#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "jacobi/coefficients.hpp"
#include "jacobi/scaled.hpp"

namespace jacobi {

namespace detail {
template <class T>
struct JostTable;
}

struct ZetaValue {
  std::complex<double> zeta;
  double angle = 0;  ///< theta_n (oscillating) or vartheta_n (exponential); 0 off-branch
  bool in_branch = false;
};

/// Root of zeta + 1/zeta = 2 beta on the branch selected by the regime.
/// Off-branch values are 1 (oscillating) and sgn beta (exponential).
ZetaValue ansatz_zeta(double beta, const Regime& regime);

/// Immutable per-index ansatz data for n = 0..n_max+1.
class AnsatzTable {
 public:
  AnsatzTable(const CoefficientModel& model, const Regime& regime, long n_max);

  long n_max() const;
  std::complex<double> zeta(long n) const;
  double angle(long n) const;
  bool in_branch(long n) const;
  double phase(long n) const;  ///< sum of angle(m) for m < n
  ScaledComplex q(long n) const;
  double beta(long n) const;
  double alpha(long n) const;
  double varkappa(long n) const;
  double k(long n) const;
  /// r_n(z), n >= 1, from the three-term representation.
  std::complex<double> remainder(long n, std::complex<double> z) const;
  /// r_n(z) from the defining quotient of the recurrence applied to Q.
  std::complex<double> remainder_quotient(long n, std::complex<double> z) const;

  const detail::JostTable<double>& data() const { return *t_; }

 private:
  std::shared_ptr<const detail::JostTable<double>> t_;
};

double phase(const CoefficientModel& model, const Regime& regime, long n);
ScaledComplex ansatz_q(const CoefficientModel& model, const Regime& regime, long n);
std::complex<double> remainder_r(const CoefficientModel& model, const Regime& regime,
                                 std::complex<double> z, long n);

struct TailBound {
  double value = 0;
  bool certified = false;  ///< the part beyond the cutoff is an analytic overestimate
  bool divergent = false;  ///< a summability condition fails; value is +inf
};

/// eps_n = sum_{m>n} (|beta_{m-1} - beta_m| + |k_m - 1| + alpha_m |z|).
TailBound eps_tail(const CoefficientModel& model, std::complex<double> z, long n, long n_cutoff);

/// eps_n for n = 0..n_cutoff in one pass; `tail` is the part beyond n_cutoff.
std::vector<double> eps_sequence(const CoefficientModel& model, std::complex<double> z, long n_cutoff,
                                 TailBound* tail = nullptr);

}  // namespace jacobi
