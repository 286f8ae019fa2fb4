#pragma once

#include <complex>
#include <string>
#include <vector>

#include "jacobi/coefficients.hpp"
#include "jacobi/scaled.hpp"
#include "jacobi/volterra.hpp"

namespace jacobi {

/// Omega(z) = {P(z), f(z)} evaluated as -f_{-1}/2 and as a_0 (P_0 f_1 - P_1 f_0).
struct JostFunctionValue {
  std::complex<double> z;
  ScaledComplex omega;
  ScaledComplex omega_wronskian;
  double scale = 0;  ///< max(|(b_0 - z) f_0|, |a_0 f_1|) relative to |omega| is 1 / cancellation
  double gap = 0;    ///< |omega - omega_wronskian| / max(|omega|, eps * envelope)
  JostCertificate certificate;
  std::vector<std::string> warnings;
};

/// Dispatches to the standard or the Carleman construction according to the regime.
JostBundle solve_jost(const CoefficientModel& model, const Regime& regime, std::complex<double> z,
                      const JostOptions& opts = {});

JostFunctionValue jost_function(const CoefficientModel& model, const Regime& regime, std::complex<double> z,
                                const JostOptions& opts = {});

struct EigenOptions {
  double lo = 0, hi = 1, step = 0.1;
  double tol = 1e-15;  ///< relative bracket width
  JostOptions jost;
};

struct EigenRoot {
  double lambda = 0;
  double bracket_lo = 0, bracket_hi = 0;
  double omega_rel = 0;     ///< |Omega(lambda)| / envelope
  double boundary_rel = 0;  ///< (b_0 - lambda) f_0 + a_0 f_1 relative to its terms
};

struct EigenResult {
  std::vector<EigenRoot> roots;
  bool extension_dependent = false;
  std::vector<std::string> warnings;
};

/// Zeros of Omega on [lo, hi] by a sign scan of the envelope-normalized Omega
/// followed by bracketed Illinois refinement.
EigenResult find_eigenvalues(const CoefficientModel& model, const Regime& regime, const EigenOptions& opts);

/// Lowest `how_many` eigenvalues of the N x N section by Sturm bisection in MPFR.
/// The precision is raised to log2(max |entry|) + 64 bits when `bits` is smaller.
std::vector<double> finite_section_eigs(const CoefficientModel& model, long N, long how_many, int bits = 128);
/// All eigenvalues of the N x N section inside [lo, hi].
std::vector<double> finite_section_eigs_in(const CoefficientModel& model, long N, double lo, double hi,
                                           int bits = 128);

/// Section size by the stability rule: N = n_start, n_start + step, ... until the
/// lowest `how_many` eigenvalues move by less than `rel_tol` between consecutive sizes.
struct StableSection {
  long N = 0;
  std::vector<double> eigs;
  double change = 0;
};
StableSection finite_section_stable(const CoefficientModel& model, long how_many, long n_start = 60, long n_step = 20,
                                    double rel_tol = 1e-10, long n_limit = 400, int bits = 128);

/// e_0-weights 1 / sum_{n<N} P_n(lambda)^2 of finite-section eigenvalues.
std::vector<double> finite_section_weights(const CoefficientModel& model, long N, const std::vector<double>& eigs);

/// ((J - z)^{-1} e_n, e_m) = P_{min}(z) f_{max}(z) / Omega(z).
std::complex<double> resolvent_entry(const CoefficientModel& model, const Regime& regime, std::complex<double> z,
                                     long n, long m, const JostOptions& opts = {});

struct SpectralMass {
  double series = 0;      ///< (sum P_n^2)^{-1}
  double jost = 0;        ///< 2 f_0 / f'_{-1}
  double tail_bound = 0;  ///< relative bound of the omitted part of sum P_n^2
  long n_series = 0;
  double stencil_gap = 0;  ///< relative gap between 3- and 5-point derivatives
};

SpectralMass spectral_mass(const CoefficientModel& model, const Regime& regime, double lambda,
                           const JostOptions& opts = {});

/// omega = {P, g} at lambda, g built from the Jost solution; nonzero at eigenvalues.
std::complex<double> omega_companion(const CoefficientModel& model, const Regime& regime, double lambda,
                                     const JostOptions& opts = {});

}  // namespace jacobi
