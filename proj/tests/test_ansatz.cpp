#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "jacobi/ansatz.hpp"
#include "jacobi/errors.hpp"
#include "support.hpp"

using namespace jacobi;
using cd = std::complex<double>;

namespace {

const double kPi = std::numbers::pi;

bool close(cd a, cd b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("zeta examples") {
  const CoefficientModel sub(PowerLaw{1, 2, 0});
  const auto rs = classify(sub);
  // beta = 0 in the oscillating branch: zeta = e^{-i pi/2}
  const auto z0 = ansatz_zeta(0, rs);
  CHECK(close(z0.zeta, cd(0, -1), 1e-15));
  CHECK(z0.angle == doctest::Approx(kPi / 2));
  CHECK(z0.in_branch);
  const auto zh = ansatz_zeta(0.5, rs);
  CHECK(close(zh.zeta, cd(0.5, -std::sqrt(0.75)), 1e-15));
  CHECK(zh.angle == doctest::Approx(kPi / 3));
  // off-branch value in the oscillating case is 1
  const auto off = ansatz_zeta(1.5, rs);
  CHECK_FALSE(off.in_branch);
  CHECK(off.zeta == cd(1));

  const auto rp = classify(CoefficientModel(Geometric{1, 2}, ConstantBeta{1.25}));
  const auto zp = ansatz_zeta(1.25, rp);
  CHECK(close(zp.zeta, cd(0.5), 1e-15));  // 0.5 + 2 = 2 * 1.25
  CHECK(zp.angle == doctest::Approx(std::log(2.0)));
  const auto rm = classify(CoefficientModel(Geometric{1, 2}, ConstantBeta{-1.25}));
  CHECK(close(ansatz_zeta(-1.25, rm).zeta, cd(-0.5), 1e-15));
  CHECK(ansatz_zeta(0.3, rm).zeta == cd(1));
  CHECK(ansatz_zeta(-0.3, rm).zeta == cd(-1));
  CHECK(close(ansatz_zeta(-2, rm).zeta, cd(-(2 - std::sqrt(3.0))), 1e-15));

  CHECK_THROWS_AS(ansatz_zeta(1, classify(CoefficientModel(PowerLaw{1, 2, 0}, ConstantBeta{1}))), RegimeMismatch);
}

TEST_CASE("phase and Q for a_n = n^2") {
  const CoefficientModel m(PowerLaw{1, 2, 0});
  const auto r = classify(m);
  const AnsatzTable t(m, r, 40);
  for (long n = 0; n <= 40; ++n) CHECK(t.phase(n) == doctest::Approx(n * kPi / 2).epsilon(1e-14));
  // Q_n = (-i)^n / n for n >= 1
  CHECK(close(t.q(9).value(), cd(0, -1.0 / 9), 1e-16));
  CHECK(close(t.q(10).value(), cd(-0.1, 0), 1e-16));
  CHECK(close(t.q(11).value(), cd(0, 1.0 / 11), 1e-16));
  CHECK(phase(m, r, 7) == doctest::Approx(3.5 * kPi));
}

TEST_CASE("Q for a geometric super-critical model") {
  // beta = 1.25, x = 4: zeta = 0.5 and Q_n = zeta^n / sqrt(a_n) = 4^{-n}
  const CoefficientModel m(Geometric{1, 4}, ConstantBeta{1.25});
  const AnsatzTable t(m, classify(m), 30);
  for (long n = 0; n <= 30; ++n) CHECK(t.q(n).log_abs() == doctest::Approx(-n * std::log(4.0)).epsilon(1e-13));
  CHECK(t.phase(10) == doctest::Approx(10 * std::log(2.0)));
}

TEST_CASE("remainder at n = 10 for a_n = n^2 against exact rationals") {
  // (a_9 Q_9 + (b_10 - z) Q_10 + a_10 Q_11) / (sqrt(a_9 a_10) Q_10) with
  // Q_9 = -i/9, Q_10 = -1/10, Q_11 = i/11: numerator 1/10 + i/11 + z/10, denominator -9
  const CoefficientModel m(PowerLaw{1, 2, 0});
  const auto r = classify(m);
  for (cd z : {cd(1), cd(0, 1), cd(-2.5, 0.75), cd(0)}) {
    const cd want = (cd(0.1, 1.0 / 11) + (z - 1.0) / 10.0) / -9.0;
    CHECK(close(remainder_r(m, r, z, 10), want, 1e-15));
  }
  CHECK(close(remainder_r(m, r, 1.0, 10), cd(-1.0 / 90, -1.0 / 99), 1e-16));
}

TEST_CASE("eps_n for a_n = n^2 including the k term") {
  // sum_{m>n} alpha_m = 1/(2n), sum_{m>n} (k_m - 1) = (2n + 1) / (2n(n + 1))
  const CoefficientModel m(PowerLaw{1, 2, 0});
  auto exact = [](double absz, double n) { return absz / (2 * n) + (2 * n + 1) / (2 * n * (n + 1)); };
  const long N = 2000;
  for (double absz : {0.0, 1.0, 3.0}) {
    TailBound tail;
    const auto seq = eps_sequence(m, absz, N, &tail);
    CHECK(tail.certified);
    // the part beyond the cutoff is an overestimate of the exact tail
    CHECK(tail.value >= exact(absz, N));
    CHECK(tail.value <= 3 * exact(absz, N));
    for (long n : {5L, 10L, 50L, 400L}) {
      CHECK(seq[n] - tail.value == doctest::Approx(exact(absz, n) - exact(absz, N)).epsilon(1e-11));
      const auto e = eps_tail(m, absz, n, N);
      CHECK(e.value == seq[n]);
      CHECK(e.value >= exact(absz, n));
      CHECK_FALSE(e.divergent);
    }
  }
}

TEST_CASE("eps_n diverges for the parity perturbation") {
  const auto e = eps_tail(CoefficientModel(ParityPerturbed{2, 0.5, -0.5}), 1.0, 10, 2000);
  CHECK(e.divergent);
  CHECK(std::isinf(e.value));
}

TEST_CASE("tabulated model without a tail cannot bound eps") {
  CHECK_THROWS_AS(eps_tail(CoefficientModel::tabulated({1, 2, 3}, {0, 0, 0}), 1.0, 1, 4), TailUnbounded);
}

TEST_CASE("property: zeta solves zeta + 1/zeta = 2 beta to within 8 ulp") {
  jt::Gen g(21);
  const double ulp = std::numeric_limits<double>::epsilon();
  const auto rsub = classify(CoefficientModel(PowerLaw{1, 2, 0}));
  const auto rsup = classify(CoefficientModel(Geometric{1, 2}, ConstantBeta{1.5}));
  for (int i = 0; i < 500; ++i) {
    const double bs = g.uniform(-0.999, 0.999);
    const auto zs = ansatz_zeta(bs, rsub);
    CHECK(std::abs(zs.zeta + 1.0 / zs.zeta - 2 * bs) <= 8 * ulp * 2);
    CHECK(std::abs(std::abs(zs.zeta) - 1) <= 4 * ulp);
    CHECK(zs.zeta.imag() <= 0);
    const double bp = g.uniform(1.001, 50);
    const auto zp = ansatz_zeta(bp, rsup);
    CHECK(std::abs(zp.zeta + 1.0 / zp.zeta - 2 * bp) <= 8 * ulp * 2 * bp);
    CHECK(std::abs(zp.zeta) < 1);
  }
}

TEST_CASE("property: three-term remainder agrees with the defining quotient") {
  // absolute tolerance: a relative one is unattainable where r_n itself is tiny
  jt::Gen g(22);
  for (int i = 0; i < 40; ++i) {
    const auto m = g.any_standard();
    const auto r = classify(m);
    const AnsatzTable t(m, r, 200);
    const cd z = g.z_any();
    for (long n = 1; n <= 200; n += 7) {
      const cd a = t.remainder(n, z), b = t.remainder_quotient(n, z);
      CHECK(std::abs(a - b) <= 1e-12 * (1 + std::abs(z)));
    }
  }
}

TEST_CASE("property: phase is increasing in the oscillating branch") {
  jt::Gen g(23);
  for (int i = 0; i < 30; ++i) {
    const auto m = g.sub_critical();
    const AnsatzTable t(m, classify(m), 300);
    for (long n = 1; n <= 300; ++n) CHECK(t.phase(n) > t.phase(n - 1));
    CHECK(t.phase(300) > 300 * 0.6);  // theta > arccos 0.8
  }
}

TEST_CASE("property: sum |r_n| converges under the l1 conditions and diverges for the parity model") {
  jt::Gen g(24);
  auto partial = [](const CoefficientModel& m, long N, cd z) {
    const AnsatzTable t(m, classify(m), N);
    double s = 0;
    for (long n = 1; n <= N; ++n) s += std::abs(t.remainder(n, z));
    return s;
  };
  for (int i = 0; i < 20; ++i) {
    const auto m = g.any_standard();
    const cd z = g.z_any();
    const double s1 = partial(m, 1000, z), s2 = partial(m, 4000, z);
    CHECK(s2 - s1 < 0.1 * (1 + s1));
  }
  const CoefficientModel parity(ParityPerturbed{2, 0.5, -0.5});
  const double p1 = partial(parity, 1000, 1.0), p2 = partial(parity, 4000, 1.0);
  // |r_n| ~ c/n: the partial sums grow by about c ln 4
  CHECK(p2 - p1 > 0.5);
}
