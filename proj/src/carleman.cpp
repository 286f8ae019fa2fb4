#include "jacobi/carleman.hpp"

#include <cmath>
#include <numbers>

#include "jacobi/errors.hpp"
#include "volterra_impl.hpp"

namespace jacobi {

namespace {

void require_carleman(const Regime& regime) {
  if (regime.kind != RegimeKind::CarlemanSub && regime.kind != RegimeKind::CarlemanSuper)
    throw RegimeMismatch("Carleman construction requires sum 1/a_n = infinity and |beta_inf| != 1");
}

template <class T>
JostBundle solve_carleman(const CoefficientModel& model, const Regime& regime, std::complex<double> z,
                          const JostOptions& opts) {
  const std::complex<T> zt(T(z.real()), T(z.imag()));
  const auto t = detail::build_carleman_table<T>(model, regime, zt, opts.n_trunc, opts.near_critical_tol);
  const long N = opts.n_trunc;
  std::vector<double> terms;
  for (long m = std::max<long>(N / 2, 1); m <= N; ++m) terms.push_back(double(std::abs(t.remainder(m, zt))));
  const double r_tail = detail::extrapolate_tail(terms, N);
  auto b = detail::solve_with_table<T>(model, t, z, opts, r_tail, false, true);
  b.regime = regime.kind;
  return b;
}

}  // namespace

std::complex<double> carleman_zeta(double beta, double alpha, std::complex<double> z, const Regime& regime,
                                   double near_tol) {
  require_carleman(regime);
  const double gap = std::abs((1 - beta) * (1 + beta));
  if (gap < near_tol) throw NearCritical("|1 - beta_n^2| is below tolerance");
  const auto p = detail::zeta_parts<double>(beta, regime.oscillating(), regime.sign_inf);
  const double s = std::sqrt(gap);
  if (regime.oscillating()) return p.zeta * std::exp(std::complex<double>(0, 1) * z * alpha / s);
  const double sg = beta > 0 ? 1 : (beta < 0 ? -1 : regime.sign_inf);
  return p.zeta * std::exp(-sg * z * alpha / s);
}

std::vector<double> carleman_psi(const CoefficientModel& model, long n_max) {
  std::vector<double> psi(n_max + 1, 0.0);
  long double acc = 0;
  for (long n = 0; n < n_max; ++n) {
    const long double b = model.beta(n);
    acc += model.alpha(n) / std::sqrt(std::abs((1 - b) * (1 + b)));
    psi[n + 1] = double(acc);
  }
  return psi;
}

JostBundle carleman_jost(const CoefficientModel& model, const Regime& regime, std::complex<double> z,
                         const JostOptions& opts) {
  require_carleman(regime);
  if (opts.n_trunc < 16) throw std::invalid_argument("carleman_jost: n_trunc must be at least 16");
  if (regime.kind == RegimeKind::CarlemanSub && z.imag() < 0)
    return conjugate_jost(carleman_jost(model, regime, std::conj(z), opts));
  if (opts.precision_bits > 53) return solve_carleman<long double>(model, regime, z, opts);
  auto b = solve_carleman<double>(model, regime, z, opts);
  if (opts.auto_escalate && b.cert.cancellation < opts.cancellation) {
    b = solve_carleman<long double>(model, regime, z, opts);
    b.warnings.push_back("f_{-1} cancels below 2^-40 in double precision; recomputed in long double");
  }
  return b;
}

AsymptoticReport carleman_poly_asym(const CoefficientModel& model, const Regime& regime, double lambda, long n_max,
                                    const JostOptions& opts) {
  if (regime.kind != RegimeKind::CarlemanSub) throw RegimeMismatch("carleman_poly_asym requires CarlemanSub");
  const auto bundle = carleman_jost(model, regime, lambda, opts);
  const std::complex<double> omega = bundle.omega().value();
  const double b = regime.beta_inf;
  const double amp = std::abs(omega) / std::sqrt(1 - b * b);
  const double arg = std::arg(omega);
  const auto P = first_kind(model, lambda, n_max);
  const auto psi = carleman_psi(model, n_max);
  AsymptoticReport r;
  long double phi = 0;
  for (long n = 0; n <= n_max; ++n) {
    const double resc = (P.at(n) * ScaledComplex::from_log(double(model.la(n) / 2))).value().real();
    const double pred = -amp * std::sin(double(phi) - lambda * psi[n] + arg);
    const double res = std::abs(resc - pred);
    r.n.push_back(n);
    r.rescaled.push_back(resc);
    r.predicted.push_back(pred);
    r.residual.push_back(res);
    r.max_residual = std::max(r.max_residual, res);
    const long double bn = model.beta(n);
    phi += std::acos(std::clamp<long double>(bn, -1, 1));
  }
  return r;
}

std::vector<DensityPoint> ac_spectral_density(const CoefficientModel& model, const Regime& regime,
                                              const std::vector<double>& lambdas, const JostOptions& opts) {
  if (regime.kind != RegimeKind::CarlemanSub) throw RegimeMismatch("ac_spectral_density requires CarlemanSub");
  const double s = std::sqrt(1 - regime.beta_inf * regime.beta_inf);
  std::vector<DensityPoint> out;
  out.reserve(lambdas.size());
  for (double lam : lambdas) {
    const auto bundle = carleman_jost(model, regime, lam, opts);
    const ScaledComplex om = bundle.omega();
    DensityPoint p;
    p.lambda = lam;
    p.omega_abs = std::exp(double(om.log_abs()));
    p.density = std::exp(-2 * double(om.log_abs())) * s / std::numbers::pi;
    out.push_back(p);
  }
  return out;
}

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

ConditionD condition_d(const CoefficientModel& model) {
  ConditionD d;
  if (model.is_tabulated()) {
    if (model.tail()) return condition_d(*model.tail());
    d.evidence = "tabulated model without tail: not decidable, assumed";
    return d;
  }
  // growth exponent of |b_n| relative to a_n, for power-law off-diagonals
  double p = 0;
  bool power = true;
  std::visit(overloaded{[&](const PowerLaw& f) { p = f.p; }, [&](const ParityPerturbed& f) { p = f.p; },
                        [&](const Geometric& f) { power = false, d.holds = f.x > 1; },
                        [&](const Stretched& f) { power = false, d.holds = f.x > 1; }},
             model.a_family());
  if (!power) {
    d.evidence = d.holds ? "exponential off-diagonal growth" : "off-diagonal does not grow";
    return d;
  }
  double q = 0;  // |b_n| ~ n^q
  bool exponential_b = false;
  std::visit(overloaded{[&](const ZeroDiagonal&) { q = -INFINITY; }, [&](const PowerDiagonal& b) { q = b.q; },
                        [&](const ExponentialDiagonal& b) {
                          if (b.x > 1) exponential_b = true;
                          else q = 0;
                        },
                        [&](const ConstantBeta& b) { q = b.beta == 0 ? -INFINITY : p; }},
             model.b_family());
  if (exponential_b) {
    d.holds = false;
    d.evidence = "diagonal grows exponentially";
    return d;
  }
  const double growth = std::max(0.0, q);
  d.holds = 3 * p - growth > 1;
  d.evidence = "sum a_n^-3 (1 + |b_n|) behaves like sum n^" + std::to_string(growth - 3 * p);
  return d;
}

}  // namespace jacobi
