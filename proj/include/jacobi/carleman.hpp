#pragma once

#include <complex>
#include <string>
#include <vector>

#include "jacobi/coefficients.hpp"
#include "jacobi/solutions.hpp"
#include "jacobi/volterra.hpp"

namespace jacobi {

/// Carleman-case multiplier: zeta0_n exp(i z alpha_n / sqrt(1 - beta_n^2)) in the
/// oscillating branch, zeta0_n exp(-sgn(beta_n) z alpha_n / sqrt(beta_n^2 - 1)) otherwise.
std::complex<double> carleman_zeta(double beta, double alpha, std::complex<double> z, const Regime& regime,
                                   double near_tol = 1e-8);

/// psi_n = sum_{m<n} alpha_m / sqrt|1 - beta_m^2| for n = 0..n_max.
std::vector<double> carleman_psi(const CoefficientModel& model, long n_max);

/// Jost solution for the Carleman regimes; in CarlemanSub the lower half-plane
/// is reached by conjugation, and real z gives the boundary value from above.
JostBundle carleman_jost(const CoefficientModel& model, const Regime& regime, std::complex<double> z,
                         const JostOptions& opts = {});

/// Compares sqrt(a_n) P_n(lambda) with
/// -|Omega| (1 - beta_inf^2)^{-1/2} sin(phi_n - lambda psi_n + arg Omega) for n = 0..N.
AsymptoticReport carleman_poly_asym(const CoefficientModel& model, const Regime& regime, double lambda, long n_max,
                                    const JostOptions& opts = {});

struct DensityPoint {
  double lambda = 0;
  double omega_abs = 0;  ///< |Omega(lambda + i0)|
  double density = 0;    ///< pi^{-1} sqrt(1 - beta_inf^2) |Omega|^{-2}
};

std::vector<DensityPoint> ac_spectral_density(const CoefficientModel& model, const Regime& regime,
                                              const std::vector<double>& lambdas, const JostOptions& opts = {});

/// Summability of a_n^{-3} (1 + |b_n|), decided from the families.
struct ConditionD {
  bool holds = true;
  std::string evidence;
};

ConditionD condition_d(const CoefficientModel& model);

}  // namespace jacobi
