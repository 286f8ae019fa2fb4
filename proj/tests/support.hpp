#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "jacobi/coefficients.hpp"

namespace jt {

using jacobi::CoefficientModel;

// Fixed-seed generator so every run sees the same cases.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
  bool coin() { return integer(0, 1) == 1; }

  std::complex<double> z_upper() { return {uniform(-2, 2), uniform(0.2, 2)}; }
  std::complex<double> z_any() { return {uniform(-2, 2), uniform(-2, 2)}; }

  // Non-Carleman models with |beta_inf| < 1 whose remainder tail is small by n = 2000.
  CoefficientModel sub_critical() {
    switch (integer(0, 3)) {
      case 0: return CoefficientModel(jacobi::PowerLaw{uniform(0.5, 3), uniform(1.7, 3), 0});
      case 1: return CoefficientModel(jacobi::Geometric{uniform(0.5, 2), uniform(1.5, 3)},
                                      jacobi::ConstantBeta{uniform(-0.8, 0.8)});
      case 2: return CoefficientModel(jacobi::Stretched{uniform(0.5, 2), uniform(2, 4), uniform(0.5, 0.7)});
      default: {
        const double p = uniform(2, 3);
        return CoefficientModel(jacobi::PowerLaw{uniform(1, 3), p, 0}, jacobi::PowerDiagonal{uniform(-0.5, 0.5), p});
      }
    }
  }

  // Non-Carleman models with |beta_inf| > 1.
  CoefficientModel super_critical() {
    const double beta = (coin() ? 1 : -1) * uniform(1.1, 2.5);
    if (coin()) return CoefficientModel(jacobi::Geometric{uniform(0.5, 2), uniform(1.5, 3)}, jacobi::ConstantBeta{beta});
    return CoefficientModel(jacobi::PowerLaw{uniform(0.5, 2), uniform(1.7, 3), 0}, jacobi::ConstantBeta{beta});
  }

  CoefficientModel any_standard() { return coin() ? sub_critical() : super_critical(); }
};

inline std::vector<CoefficientModel> builtin_models() {
  using namespace jacobi;
  return {CoefficientModel(PowerLaw{1, 2, 0}),
          CoefficientModel(PowerLaw{2, 1.5, 0}, PowerDiagonal{1, 1.5}),
          CoefficientModel(Geometric{1, 2}, ConstantBeta{-1.1}),
          CoefficientModel(Geometric{1, 2}, ConstantBeta{1.1}),
          CoefficientModel(Geometric{1, 3}, ConstantBeta{2}),
          CoefficientModel(Geometric{1, 2}, ExponentialDiagonal{0.5, 2}),
          CoefficientModel(Stretched{1, 2, 0.5}),
          CoefficientModel(ParityPerturbed{2, 0.5, -0.5}),
          CoefficientModel::tabulated({1, 1, 4, 9}, {0, 0, 0, 0}, CoefficientModel(PowerLaw{1, 2, 0}))};
}

}  // namespace jt
