#pragma once

#include <cmath>
#include <complex>
#include <sstream>
#include <tuple>

#include "jacobi/ansatz.hpp"
#include "jacobi/errors.hpp"
#include "jacobi/volterra.hpp"
#include "jost_table.hpp"

namespace jacobi::detail {

template <class T>
struct Sweep {
  std::vector<std::complex<T>> u;
  std::vector<std::complex<T>> r;  // r_m, m = 1..N (index m)
};

// Estimates of V_{N+1} and U_N of the untruncated sweep from the smooth decay
// of the remainder beyond N, taking u_m = 1 there. Zero when the decay is not
// summable or cannot be recognized.
template <class T>
std::pair<std::complex<T>, std::complex<T>> tail_boundary(const JostTable<T>& t, std::complex<T> z, long N) {
  using C = std::complex<T>;
  auto e = [&](long p) { return t.remainder(p, z) / (t.varkappa[p - 1] * t.zeta[p]); };
  auto term = [&](long p) {
    const C sg = t.zeta[p] * t.zeta[p - 1];
    return t.varkappa[p - 1] * sg * e(p) / (T(1) - sg);
  };
  const long p1 = N + 1, p0 = std::max<long>(N / 2, 2);
  if (N < 16) return {C(0), C(0)};
  const C sg = t.zeta[p1] * t.zeta[p1 - 1];
  if (std::abs(T(1) - sg) < T(1e-6)) return {C(0), C(0)};
  const C e1 = e(p1), de = e1 - e(N);
  const C V = sg * e1 / (T(1) - sg) + sg * sg * de / ((T(1) - sg) * (T(1) - sg));
  const C t1 = term(p1), tprev = term(N), t0 = term(p0);
  C sum(0);
  const T rho = std::abs(t1 / tprev);
  if (std::abs(t1) == 0) {
    sum = 0;
  } else if (rho < T(0.95)) {
    sum = t1 / (T(1) - t1 / tprev);
  } else {
    const T s = -std::log(std::abs(t1) / std::abs(t0)) / std::log(T(p1) / T(p0));
    if (!(s > T(1.05))) return {C(0), C(0)};
    sum = t1 * (T(p1) / (s - 1) + T(0.5));
  }
  const C U = sum - t.varkappa[N] * sg * sg * e1 / ((T(1) - sg) * (T(1) - sg));
  return {V, U};
}

// Backward substitution of the truncated Volterra equation in O(N).
template <class T>
Sweep<T> sweep(const JostTable<T>& t, std::complex<T> z, long N, int sign, bool tail) {
  Sweep<T> s;
  s.u.assign(N + 1, std::complex<T>(1));
  s.r.assign(N + 1, std::complex<T>(0));
  for (long m = 1; m <= N; ++m) s.r[m] = t.remainder(m, z);
  std::complex<T> V(0), U(0), Uc(0);
  if (tail) {
    std::tie(V, U) = tail_boundary(t, z, N);
    s.u[N] = T(1) + T(sign) * U;
  }
  for (long n = N - 1; n >= 0; --n) {
    const long m = n + 1;
    const std::complex<T> e = s.r[m] * s.u[m] / (t.varkappa[m - 1] * t.zeta[m]);
    V = t.zeta[m] * t.zeta[m - 1] * (e + V);
    // Neumaier summation of U
    const std::complex<T> add = t.varkappa[n] * V;
    const std::complex<T> nu = U + add;
    for (int c = 0; c < 2; ++c) {
      const T a = c ? U.imag() : U.real(), b = c ? add.imag() : add.real(), sum = c ? nu.imag() : nu.real();
      const T corr = std::abs(a) >= std::abs(b) ? (a - sum) + b : (b - sum) + a;
      if (c) Uc.imag(Uc.imag() + corr);
      else Uc.real(Uc.real() + corr);
    }
    U = nu;
    s.u[n] = T(1) + T(sign) * (U + Uc);
  }
  return s;
}

template <class T>
double ueq_residual(const JostTable<T>& t, const Sweep<T>& s, long N) {
  double worst = 0;
  for (long n = 1; n < N; ++n) {
    const std::complex<T> kz = t.k[n] * t.zeta[n];
    const std::complex<T> res =
        kz * (s.u[n + 1] - s.u[n]) - t.inv[n - 1] * (s.u[n] - s.u[n - 1]) + s.r[n] * s.u[n];
    const T scale = std::abs(kz) * (std::abs(s.u[n + 1]) + std::abs(s.u[n])) +
                    std::abs(t.inv[n - 1]) * (std::abs(s.u[n]) + std::abs(s.u[n - 1])) +
                    std::abs(s.r[n]) * std::abs(s.u[n]);
    if (scale > 0) worst = std::max(worst, double(std::abs(res) / scale));
  }
  return worst;
}

template <class T>
double kernel_max(const JostTable<T>& t, long N, long rows) {
  std::vector<long> ns;
  for (long n = 0; n < std::min<long>(N, 16); ++n) ns.push_back(n);
  rows = std::max<long>(rows, 2);
  for (long i = 0; i < rows; ++i) ns.push_back(long(double(i) * double(N - 1) / double(rows - 1)));
  double g = 0;
  for (long n : ns) {
    std::complex<T> S(0);
    for (long m = n + 1; m <= N; ++m) {
      S = t.zeta[m] * t.zeta[m - 1] * (S + t.varkappa[m - 1]);
      g = std::max(g, double(std::abs(S / (t.varkappa[m - 1] * t.zeta[m]))));
    }
  }
  return g;
}

// Solves u and (optionally) assembles f for a prepared table.
template <class T>
JostBundle solve_with_table(const CoefficientModel& model, const JostTable<T>& t, std::complex<double> z,
                            const JostOptions& opts, double r_tail, bool tail_certified, bool assemble) {
  const long N = opts.n_trunc;
  const std::complex<T> zt(T(z.real()), T(z.imag()));
  JostBundle b;
  b.z = z;
  b.n_trunc = N;
  b.precision_bits = std::numeric_limits<T>::digits;

  Sweep<T> s = sweep(t, zt, N, -1, opts.tail_correction);
  double res = ueq_residual(t, s, N);
  if (!(res <= 10 * opts.tol)) {
    Sweep<T> alt = sweep(t, zt, N, +1, opts.tail_correction);
    const double res_alt = ueq_residual(t, alt, N);
    if (res_alt <= 10 * opts.tol) {
      s = std::move(alt);
      res = res_alt;
      b.kernel_sign = +1;
      b.warnings.push_back("kernel sign flipped to satisfy the difference equation");
    }
  }
  for (const auto& v : s.u) {
    if (!std::isfinite(double(v.real())) || !std::isfinite(double(v.imag())))
      throw NotConverged("Volterra solve produced non-finite values");
  }
  if (!(res <= 10 * opts.tol)) {
    std::ostringstream os;
    os << "difference-equation residual " << res << " exceeds " << 10 * opts.tol;
    throw NotConverged(os.str());
  }

  auto& c = b.cert;
  c.ueq_residual = res;
  c.g_max = 2 * kernel_max(t, N, opts.gmax_rows);
  c.r_tail = r_tail;
  c.tail_certified = tail_certified;
  c.hypothesis_violated = !std::isfinite(r_tail);
  double R0 = r_tail;
  for (long m = 1; m <= N; ++m) R0 += double(std::abs(s.r[m]));
  c.apriori0 = std::expm1(c.g_max * R0);
  c.truncation0 = std::expm1(c.g_max * r_tail) * std::exp(c.g_max * R0);
  if (c.hypothesis_violated) {
    b.warnings.push_back("l1 hypothesis violated: the remainder is not summable, the truncated solution is uncertified");
  } else if (c.g_max * r_tail >= 0.5) {
    std::ostringstream os;
    os << "truncation too short: G_max * R_tail = " << c.g_max * r_tail << " >= 1/2 at N = " << N;
    throw NotConverged(os.str());
  }

  b.u.resize(N + 1);
  for (long n = 0; n <= N; ++n) b.u[n] = {double(s.u[n].real()), double(s.u[n].imag())};
  if (!assemble) return b;

  // f_n = Q_n u_n and f_{-1} from the recurrence at n = 0 with a_{-1} = 1/2
  b.f.resize(N + 2);
  for (long n = 0; n <= N; ++n) b.f[n + 1] = (t.q[n] * s.u[n]).template cast<double>();
  const auto [bs, lb] = model.b_log(0);
  const T b0 = bs == 0 ? T(0) : T(bs * std::exp(lb));
  const T a0_over_k0 = T(std::exp(model.la(0) - model.lr(0) / 2));
  const std::complex<T> t1 = (b0 - zt) * s.u[0];
  const std::complex<T> t2 = a0_over_k0 * t.zeta[0] * s.u[1];
  const std::complex<T> sum = t1 + t2;
  const T big = std::max(std::abs(t1), std::abs(t2));
  c.cancellation = big > 0 ? double(std::abs(sum) / big) : 1.0;
  b.f[0] = (t.q[0] * (T(-2) * sum)).template cast<double>();

  // relative residual of the three-term recurrence for f at 1 <= n < N
  double worst = 0;
  for (long n = 1; n < N; ++n) {
    const double kap = double(t.varkappa[n - 1]);
    const ScaledComplex qn = t.q[n].template cast<double>();
    auto F = [&](long j) { return ratio(b.f[j + 1], qn); };
    const std::complex<double> c0 = -2.0 * (double(t.beta[n]) + z * double(t.alpha[n]));
    const std::complex<double> Fm = F(n - 1), F0 = F(n), Fp = F(n + 1);
    const std::complex<double> r = Fm / kap + c0 * F0 + kap * Fp;
    const double scale = std::abs(Fm) / kap + std::abs(c0) * std::abs(F0) + kap * std::abs(Fp);
    if (scale > 0) worst = std::max(worst, std::abs(r) / scale);
  }
  c.recurrence_residual = worst;
  return b;
}

}  // namespace jacobi::detail
