#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "jacobi/coefficients.hpp"
#include "jacobi/errors.hpp"
#include "jacobi/scaled.hpp"

namespace jacobi::detail {

// Tail sum of a nonnegative sequence extrapolated from its last terms, whose
// final entry has index n_last; inf when the decay is not summable.
double extrapolate_tail(const std::vector<double>& terms, long n_last);

template <class T>
struct ZetaParts {
  std::complex<T> zeta, inv;
  T angle = 0;
  bool in_branch = false;
};

template <class T>
ZetaParts<T> zeta_parts(T beta, bool oscillating, int sign_inf) {
  const T slack = 4 * std::numeric_limits<T>::epsilon();
  ZetaParts<T> p;
  if (oscillating) {
    if (std::abs(beta) <= 1 + slack) {
      const T b = std::clamp<T>(beta, -1, 1);
      const T s = std::sqrt((1 - b) * (1 + b));
      p.zeta = {b, -s};
      p.inv = {b, s};
      p.angle = std::acos(b);
      p.in_branch = true;
    } else {
      p.zeta = p.inv = T(1);
    }
    return p;
  }
  const int sg = beta > 0 ? 1 : (beta < 0 ? -1 : sign_inf);
  T ab = std::abs(beta);
  if (ab >= 1 - slack) {
    ab = std::max<T>(ab, 1);
    const T t = std::sqrt((ab - 1) * (ab + 1));
    const T big = ab + t;
    p.zeta = T(sg) / big;
    p.inv = T(sg) * big;
    p.angle = std::log1p((ab - 1) + t);
    p.in_branch = true;
  } else {
    p.zeta = p.inv = T(sg);
  }
  return p;
}

// e^x - 1 for complex x without cancellation near 0.
template <class T>
std::complex<T> cexpm1(std::complex<T> x) {
  const T a = x.real(), b = x.imag();
  const T em = std::expm1(a);
  const T sh = std::sin(b / 2);
  return {em * std::cos(b) - 2 * sh * sh, (em + 1) * std::sin(b)};
}

// sin w - w (sign = -1) or sinh w - w (sign = +1).
template <class T>
std::complex<T> sin_minus_id(std::complex<T> w, int sign) {
  if (std::abs(w) < T(0.5)) {
    const std::complex<T> w2 = w * w;
    std::complex<T> term = w * w2 / T(6) * T(sign), sum = term;
    for (int k = 2; k <= 8; ++k) {
      term *= w2 * T(sign) / T((2 * k) * (2 * k + 1));
      sum += term;
    }
    return sum;
  }
  return (sign > 0 ? std::sinh(w) : std::sin(w)) - w;
}

/// Per-index quantities of the ansatz Q_n, n = 0..n_max+1. For the Carleman
/// construction zeta depends on the fixed spectral parameter `zc`.
template <class T>
struct JostTable {
  bool oscillating = true;
  int sign_inf = 1;
  bool carleman = false;
  std::complex<T> zc{};
  long n_max = 0;
  T varkappa_m1 = 1;
  std::vector<T> beta, alpha, varkappa, k, angle, phase, psi, w_coef;
  std::vector<std::complex<T>> zeta, inv, zeta0, inv0;
  std::vector<char> in_branch;
  std::vector<Scaled<T>> q;

  long size() const { return n_max + 2; }

  std::complex<T> zeta_inv0_diff(long n) const {
    // 1/zeta0_{n-1} - 1/zeta0_n, stable when both indices are in the branch
    const T bp = beta[n - 1], bn = beta[n];
    if (in_branch[n - 1] && in_branch[n]) {
      const T d = bp - bn;
      if (oscillating) {
        const T s = std::sqrt((1 - bp) * (1 + bp)) + std::sqrt((1 - bn) * (1 + bn));
        if (s > 0) return d * std::complex<T>(1, -(bp + bn) / s);
      } else if ((bp > 0) == (bn > 0)) {
        const T s = std::sqrt((std::abs(bp) - 1) * (std::abs(bp) + 1)) +
                    std::sqrt((std::abs(bn) - 1) * (std::abs(bn) + 1));
        if (s > 0) return d * (T(1) + T(bp > 0 ? 1 : -1) * (bp + bn) / s);
      }
    }
    return inv0[n - 1] - inv0[n];
  }

  /// r_n(z) for n >= 1.
  std::complex<T> remainder(long n, std::complex<T> z) const {
    if (!carleman) {
      if (in_branch[n])
        return zeta_inv0_diff(n) + (k[n] - 1) * zeta[n] - T(2) * z * alpha[n];
      return inv[n - 1] - T(2) * beta[n] + k[n] * zeta[n] - T(2) * z * alpha[n];
    }
    if (!(in_branch[n] && in_branch[n - 1]))
      return inv[n - 1] - T(2) * beta[n] + k[n] * zeta[n] - T(2) * z * alpha[n];
    // zeta_n = zeta0_n * exp(c w_n) with c = i (oscillating) or -1, w_n = z * w_coef_n
    const std::complex<T> c = oscillating ? std::complex<T>(0, 1) : std::complex<T>(-1);
    const std::complex<T> wn = zc * w_coef[n], wp = zc * w_coef[n - 1];
    const std::complex<T> e_prev = inv[n - 1] / inv0[n - 1];
    const std::complex<T> e_n = inv[n] / inv0[n];
    std::complex<T> r = zeta_inv0_diff(n) * e_prev + inv0[n] * e_n * cexpm1(-c * (wp - wn));
    if (oscillating) {
      const std::complex<T> sh = std::sin(wn / T(2));
      const T s = std::sqrt((1 - beta[n]) * (1 + beta[n]));
      r += T(-4) * beta[n] * sh * sh + T(2) * s * sin_minus_id(wn, -1);
    } else {
      const std::complex<T> sh = std::sinh(wn / T(2));
      const T t = std::sqrt((std::abs(beta[n]) - 1) * (std::abs(beta[n]) + 1));
      const T sg = beta[n] > 0 ? 1 : (beta[n] < 0 ? -1 : T(sign_inf));
      r += T(4) * beta[n] * sh * sh + T(2) * sg * t * sin_minus_id(wn, 1);
    }
    // z differs from zc only when probing the equation off the construction point
    r += (k[n] - 1) * zeta[n] - T(2) * (z - zc) * alpha[n];
    return r;
  }
};

template <class T>
void fill_common(JostTable<T>& t, const CoefficientModel& m) {
  const long sz = t.size();
  t.beta.resize(sz), t.alpha.resize(sz), t.varkappa.resize(sz), t.k.resize(sz);
  for (long n = 0; n < sz; ++n) {
    t.beta[n] = T(m.beta(n));
    t.alpha[n] = T(m.alpha(n));
    t.varkappa[n] = T(m.varkappa(n));
    t.k[n] = T(m.k(n));
  }
  t.varkappa_m1 = T(m.varkappa(-1));
}

template <class T>
void fill_q(JostTable<T>& t, const CoefficientModel& m) {
  const long sz = t.size();
  t.phase.assign(sz + 1, 0);
  t.q.resize(sz);
  t.q[0] = Scaled<T>::from_log(T(-m.la(0) / 2));
  for (long n = 0; n < sz; ++n) {
    t.phase[n + 1] = t.phase[n] + t.angle[n];
    if (n + 1 < sz) {
      const long double lr = m.lr(n);
      const Scaled<T> step = std::abs(lr) < 600 ? Scaled<T>(std::complex<T>(T(std::exp(-lr / 2))))
                                                 : Scaled<T>::from_log(T(-lr / 2));
      t.q[n + 1] = t.q[n] * step * t.zeta[n];
    }
  }
}

template <class T>
JostTable<T> build_table(const CoefficientModel& m, const Regime& reg, long n_max) {
  if (reg.kind == RegimeKind::Unsupported)
    throw RegimeMismatch("ansatz: |beta_inf| = 1 is not supported");
  JostTable<T> t;
  t.oscillating = reg.oscillating();
  t.sign_inf = reg.sign_inf;
  t.n_max = n_max;
  fill_common(t, m);
  const long sz = t.size();
  t.zeta.resize(sz), t.inv.resize(sz), t.angle.resize(sz), t.in_branch.resize(sz);
  for (long n = 0; n < sz; ++n) {
    const auto p = zeta_parts<T>(t.beta[n], t.oscillating, t.sign_inf);
    t.zeta[n] = p.zeta, t.inv[n] = p.inv, t.angle[n] = p.angle, t.in_branch[n] = p.in_branch;
  }
  t.zeta0 = t.zeta, t.inv0 = t.inv;
  fill_q(t, m);
  return t;
}

template <class T>
JostTable<T> build_carleman_table(const CoefficientModel& m, const Regime& reg, std::complex<T> z,
                                  long n_max, double near_tol) {
  if (reg.kind != RegimeKind::CarlemanSub && reg.kind != RegimeKind::CarlemanSuper)
    throw RegimeMismatch("Carleman construction requires a CarlemanSub or CarlemanSuper regime");
  JostTable<T> t;
  t.carleman = true;
  t.oscillating = reg.oscillating();
  t.sign_inf = reg.sign_inf;
  t.zc = z;
  t.n_max = n_max;
  fill_common(t, m);
  const long sz = t.size();
  t.zeta.resize(sz), t.inv.resize(sz), t.zeta0.resize(sz), t.inv0.resize(sz);
  t.angle.resize(sz), t.in_branch.resize(sz), t.w_coef.resize(sz);
  t.psi.assign(sz + 1, 0);
  for (long n = 0; n < sz; ++n) {
    const T b = t.beta[n];
    const T gap = std::abs((1 - b) * (1 + b));
    if (gap < near_tol) throw NearCritical("|1 - beta_n^2| is below tolerance at n = " + std::to_string(n));
    const auto p = zeta_parts<T>(b, t.oscillating, t.sign_inf);
    t.zeta0[n] = p.zeta, t.inv0[n] = p.inv, t.angle[n] = p.angle, t.in_branch[n] = p.in_branch;
    const T s = std::sqrt(gap);
    t.psi[n + 1] = t.psi[n] + t.alpha[n] / s;
    // exponent c * z * w_coef with c = i (oscillating) or -1
    const T sg = b > 0 ? 1 : (b < 0 ? -1 : T(t.sign_inf));
    t.w_coef[n] = t.oscillating ? t.alpha[n] / s : sg * t.alpha[n] / s;
    const std::complex<T> w = z * t.w_coef[n];
    const std::complex<T> e = t.oscillating ? std::exp(std::complex<T>(0, 1) * w) : std::exp(-w);
    t.zeta[n] = p.zeta * e;
    t.inv[n] = p.inv / e;
  }
  fill_q(t, m);
  return t;
}

}  // namespace jacobi::detail
