#pragma once

#include <complex>
#include <string>
#include <vector>

#include "jacobi/ansatz.hpp"
#include "jacobi/coefficients.hpp"
#include "jacobi/scaled.hpp"

namespace jacobi {

struct JostOptions {
  long n_trunc = 2000;
  double tol = 1e-10;            ///< tolerance of the difference-equation residual
  int precision_bits = 53;       ///< 53 (double) or 64 (long double)
  bool auto_escalate = true;     ///< redo in long double when f_{-1} cancels badly
  double cancellation = 0x1p-40;
  long gmax_rows = 48;           ///< rows n sampled for the kernel maximum
  bool self_check = false;       ///< re-solve with N/2 and record the change of u_0
  bool tail_correction = true;   ///< boundary values at N from the smooth decay of r_m beyond N
  double near_critical_tol = 1e-8;
};

struct JostCertificate {
  double g_max = 0;          ///< empirical kernel maximum times the safety factor 2
  double r_tail = 0;         ///< bound of sum_{m>N} |r_m|
  bool tail_certified = false;
  bool hypothesis_violated = false;  ///< the remainder is not summable
  double apriori0 = 0;       ///< e^{G R_0} - 1
  double truncation0 = 0;    ///< (e^{G R_tail} - 1) e^{G R_0}
  double ueq_residual = 0;   ///< max relative residual of the u-equation
  double recurrence_residual = 0;  ///< max relative residual of the Jacobi recurrence for f
  double cancellation = 1;   ///< |f_{-1}| relative to its two summands
  double self_check_delta = -1;  ///< |u_0(N) - u_0(N/2)|, -1 when not run
};

/// Jost solution f_n = Q_n u_n for n = -1..N together with its certificate.
struct JostBundle {
  std::complex<double> z;
  RegimeKind regime = RegimeKind::SubCritical;
  long n_trunc = 0;
  int kernel_sign = -1;
  int precision_bits = 53;
  bool conjugated = false;
  std::vector<std::complex<double>> u;  ///< u_0..u_N
  std::vector<ScaledComplex> f;         ///< f_{-1}..f_N, stored at index n + 1
  std::vector<std::string> warnings;
  JostCertificate cert;

  ScaledComplex f_at(long n) const { return f.at(n + 1); }
  /// Omega = {P, f} = -f_{-1} / 2.
  ScaledComplex omega() const { return ScaledComplex(-0.5) * f.at(0); }
};

/// G(n, m) of the Volterra equation u_n = 1 + sum_{m>n} G(n, m) r_m u_m.
std::complex<double> kernel_G(const AnsatzTable& table, long n, long m);

/// Solves the truncated Volterra equation for u_n; f is left empty.
JostBundle solve_u(const CoefficientModel& model, const Regime& regime, std::complex<double> z,
                   const JostOptions& opts = {});

/// Jost solution f_n(z) for the non-Carleman regimes.
JostBundle jost_f(const CoefficientModel& model, const Regime& regime, std::complex<double> z,
                  const JostOptions& opts = {});

/// f~_n(z) = conj(f_n(conj z)), from a bundle computed at conj z.
JostBundle conjugate_jost(const JostBundle& at_conj_z);
JostBundle conjugate_jost(const CoefficientModel& model, const Regime& regime, std::complex<double> z,
                          const JostOptions& opts = {});

}  // namespace jacobi
