#include "jacobi/volterra.hpp"

#include <cmath>

#include "jacobi/errors.hpp"
#include "volterra_impl.hpp"

namespace jacobi {

namespace {

void require_standard(const Regime& regime) {
  if (regime.kind == RegimeKind::Unsupported)
    throw RegimeMismatch("Jost solution: |beta_inf| = 1 is not supported");
  if (regime.kind == RegimeKind::CarlemanSub || regime.kind == RegimeKind::CarlemanSuper)
    throw RegimeMismatch("Jost solution: the Carleman regimes need the z-dependent construction");
}

double remainder_tail(const CoefficientModel& model, const Regime& regime, std::complex<double> z, long N,
                      bool* certified) {
  TailBound tb;
  const auto eps = eps_sequence(model, z, N, &tb);
  *certified = tb.certified;
  if (tb.divergent) return INFINITY;
  const double b = std::abs(regime.beta_inf);
  const double lip = 1 + b / std::sqrt(std::abs(1 - b * b));
  return std::max(2.0, lip) * eps[N];
}

template <class T>
JostBundle solve_standard(const CoefficientModel& model, const Regime& regime, std::complex<double> z,
                          const JostOptions& opts, bool assemble, double r_tail, bool certified) {
  const auto t = detail::build_table<T>(model, regime, opts.n_trunc);
  auto b = detail::solve_with_table<T>(model, t, z, opts, r_tail, certified, assemble);
  b.regime = regime.kind;
  return b;
}

JostBundle solve_dispatch(const CoefficientModel& model, const Regime& regime, std::complex<double> z,
                          const JostOptions& opts, bool assemble) {
  require_standard(regime);
  if (opts.n_trunc < 8) throw std::invalid_argument("Jost solution: n_trunc must be at least 8");
  bool certified = false;
  const double r_tail = remainder_tail(model, regime, z, opts.n_trunc, &certified);
  JostBundle b;
  if (opts.precision_bits > 53) {
    b = solve_standard<long double>(model, regime, z, opts, assemble, r_tail, certified);
  } else {
    b = solve_standard<double>(model, regime, z, opts, assemble, r_tail, certified);
    if (assemble && opts.auto_escalate && b.cert.cancellation < opts.cancellation) {
      b = solve_standard<long double>(model, regime, z, opts, assemble, r_tail, certified);
      b.warnings.push_back("f_{-1} cancels below 2^-40 in double precision; recomputed in long double");
    }
  }
  if (opts.self_check) {
    JostOptions half = opts;
    half.n_trunc = opts.n_trunc / 2;
    half.self_check = false;
    bool c2 = false;
    const double tail2 = remainder_tail(model, regime, z, half.n_trunc, &c2);
    const auto h = b.precision_bits > 53
                       ? solve_standard<long double>(model, regime, z, half, false, tail2, c2)
                       : solve_standard<double>(model, regime, z, half, false, tail2, c2);
    b.cert.self_check_delta = std::abs(b.u[0] - h.u[0]);
  }
  return b;
}

}  // namespace

std::complex<double> kernel_G(const AnsatzTable& table, long n, long m) {
  if (m <= n) return 0;
  const auto& t = table.data();
  if (m > t.n_max + 1 || n < 0) throw std::out_of_range("kernel_G: index out of range");
  // -(varkappa_{m-1} zeta_m)^{-1} sum_{p=n+1}^{m} varkappa_{p-1} sigma_p ... sigma_m
  std::complex<double> S = 0;
  for (long p = n + 1; p <= m; ++p) S = t.zeta[p] * t.zeta[p - 1] * (S + t.varkappa[p - 1]);
  return -S / (t.varkappa[m - 1] * t.zeta[m]);
}

JostBundle solve_u(const CoefficientModel& model, const Regime& regime, std::complex<double> z,
                   const JostOptions& opts) {
  return solve_dispatch(model, regime, z, opts, false);
}

JostBundle jost_f(const CoefficientModel& model, const Regime& regime, std::complex<double> z,
                  const JostOptions& opts) {
  return solve_dispatch(model, regime, z, opts, true);
}

JostBundle conjugate_jost(const JostBundle& at_conj_z) {
  JostBundle b = at_conj_z;
  b.z = std::conj(at_conj_z.z);
  b.conjugated = !at_conj_z.conjugated;
  for (auto& v : b.u) v = std::conj(v);
  for (auto& v : b.f) v = v.conj();
  return b;
}

JostBundle conjugate_jost(const CoefficientModel& model, const Regime& regime, std::complex<double> z,
                          const JostOptions& opts) {
  return conjugate_jost(jost_f(model, regime, std::conj(z), opts));
}

}  // namespace jacobi
