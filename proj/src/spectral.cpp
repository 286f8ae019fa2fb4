#include "jacobi/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "jacobi/carleman.hpp"
#include "jacobi/errors.hpp"
#include "jacobi/solutions.hpp"
#include "mp_real.hpp"

namespace jacobi {

namespace {

ScaledComplex sabs(const ScaledComplex& x) {
  ScaledComplex r = x;
  r.mant = std::abs(x.mant);
  return r;
}

ScaledComplex smax(const ScaledComplex& a, const ScaledComplex& b) {
  return a.log_abs() >= b.log_abs() ? sabs(a) : sabs(b);
}

ScaledComplex from_log(long double l) { return ScaledComplex::from_log(double(l)); }

// Envelope max(|(b_0 - z) f_0|, |a_0 f_1|) of the two summands of -f_{-1}/2.
ScaledComplex envelope(const CoefficientModel& model, const JostBundle& b) {
  const auto [s, lb] = model.b_log(0);
  const std::complex<double> b0 = s == 0 ? 0.0 : double(s * std::exp(lb));
  return smax(b.f_at(0) * (b0 - b.z), b.f_at(1) * from_log(model.la(0)));
}

void require_discrete(const Regime& regime) {
  if (regime.kind != RegimeKind::SuperCritical && regime.kind != RegimeKind::CarlemanSuper)
    throw RegimeMismatch("eigenvalue search requires a SuperCritical or CarlemanSuper regime");
}

}  // namespace

JostBundle solve_jost(const CoefficientModel& model, const Regime& regime, std::complex<double> z,
                      const JostOptions& opts) {
  if (regime.kind == RegimeKind::CarlemanSub || regime.kind == RegimeKind::CarlemanSuper)
    return carleman_jost(model, regime, z, opts);
  return jost_f(model, regime, z, opts);
}

JostFunctionValue jost_function(const CoefficientModel& model, const Regime& regime, std::complex<double> z,
                                const JostOptions& opts) {
  const auto b = solve_jost(model, regime, z, opts);
  JostFunctionValue v;
  v.z = z;
  v.omega = b.omega();
  v.certificate = b.cert;
  v.warnings = b.warnings;
  v.scale = std::exp(double(envelope(model, b).log_abs()));
  // Wronskian with P at n = 1
  const auto f = as_solution(b);
  const auto P = first_kind(model, z, 3);
  const ScaledComplex a1 = from_log(model.la(1));
  const ScaledComplex t1 = P.at(1) * f.at(2) * a1, t2 = P.at(2) * f.at(1) * a1;
  v.omega_wronskian = t1 - t2;
  const ScaledComplex env = smax(t1, t2) * std::complex<double>(std::numeric_limits<double>::epsilon());
  const ScaledComplex den = smax(v.omega, env);
  v.gap = den.is_zero() ? 0 : std::abs(ratio(v.omega - v.omega_wronskian, den));
  return v;
}

EigenResult find_eigenvalues(const CoefficientModel& model, const Regime& regime, const EigenOptions& opts) {
  require_discrete(regime);
  if (!(opts.hi > opts.lo) || !(opts.step > 0)) throw std::invalid_argument("find_eigenvalues: bad interval or step");
  EigenResult res;
  if (self_adjointness(model, regime).verdict == Verdict::DeficiencyOneOne) {
    res.extension_dependent = true;
    res.warnings.push_back("deficiency indices (1,1): the zeros of Omega depend on the chosen self-adjoint extension");
  }
  auto phi = [&](double lam) {
    const auto b = solve_jost(model, regime, lam, opts.jost);
    const ScaledComplex env = envelope(model, b);
    if (env.is_zero()) return 0.0;
    return ratio(b.omega(), env).real();
  };
  const long steps = long(std::ceil((opts.hi - opts.lo) / opts.step));
  std::vector<double> grid, vals;
  for (long i = 0; i <= steps; ++i) {
    const double lam = std::min(opts.lo + double(i) * opts.step, opts.hi);
    grid.push_back(lam);
    vals.push_back(phi(lam));
  }
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    double a = grid[i], b = grid[i + 1], fa = vals[i], fb = vals[i + 1];
    if (fa == 0) {
      res.roots.push_back({a, a, a, 0, 0});
      continue;
    }
    if (fa * fb > 0 || fb == 0) continue;
    // Illinois iteration with a bisection safeguard
    int side = 0;
    double m = 0.5 * (a + b), fm = 0;
    for (int it = 0; it < 300; ++it) {
      if (b - a <= opts.tol * std::max(1.0, std::abs(m))) break;
      m = (it % 4 == 3) ? 0.5 * (a + b) : (a * fb - b * fa) / (fb - fa);
      if (!(m > a && m < b)) m = 0.5 * (a + b);
      fm = phi(m);
      if (fm == 0) {
        a = b = m;
        break;
      }
      if (fm * fb < 0) {
        a = b, fa = fb;
        b = m, fb = fm;
        if (side == -1) fa /= 2;
        side = -1;
      } else {
        b = m, fb = fm;
        if (side == +1) fa /= 2;
        side = +1;
      }
      if (a > b) std::swap(a, b), std::swap(fa, fb);
    }
    EigenRoot r;
    r.bracket_lo = std::min(a, b);
    r.bracket_hi = std::max(a, b);
    r.lambda = 0.5 * (r.bracket_lo + r.bracket_hi);
    const auto bundle = solve_jost(model, regime, r.lambda, opts.jost);
    const ScaledComplex env = envelope(model, bundle);
    r.omega_rel = env.is_zero() ? 0 : std::abs(ratio(bundle.omega(), env));
    r.boundary_rel = bundle.cert.cancellation;
    res.roots.push_back(r);
  }
  return res;
}

namespace {

using detail::MpReal;

struct Section {
  mpfr_prec_t prec;
  std::vector<MpReal> b, a2;  // diagonal and squared off-diagonal
  MpReal lo, hi;              // Gershgorin bounds
};

Section build_section(const CoefficientModel& model, long N, int bits) {
  if (N < 1) throw std::invalid_argument("finite section: N must be positive");
  long double top = 0;
  for (long i = 0; i < N; ++i) {
    top = std::max(top, model.la(i));
    const auto [s, lb] = model.b_log(i);
    if (s != 0) top = std::max(top, lb);
  }
  const mpfr_prec_t prec = std::max<mpfr_prec_t>(bits, mpfr_prec_t(std::ceil(double(top / std::log(2.0L)))) + 64);
  Section s{prec, {}, {}, MpReal(prec), MpReal(prec)};
  s.b.reserve(N), s.a2.reserve(N);
  std::vector<MpReal> a;
  for (long i = 0; i < N; ++i) {
    MpReal v(prec);
    mpfr_set_ld(v.get(), model.la(i), MPFR_RNDN);
    mpfr_exp(v.get(), v.get(), MPFR_RNDN);
    a.push_back(v);
    MpReal sq(prec);
    mpfr_sqr(sq.get(), v.get(), MPFR_RNDN);
    s.a2.push_back(sq);
    MpReal bv(prec);
    const auto [sg, lb] = model.b_log(i);
    if (sg != 0) {
      mpfr_set_ld(bv.get(), lb, MPFR_RNDN);
      mpfr_exp(bv.get(), bv.get(), MPFR_RNDN);
      if (sg < 0) mpfr_neg(bv.get(), bv.get(), MPFR_RNDN);
    }
    s.b.push_back(bv);
  }
  MpReal r(prec), t(prec);
  for (long i = 0; i < N; ++i) {
    mpfr_set_zero(r.get(), 1);
    if (i > 0) mpfr_add(r.get(), r.get(), a[i - 1].get(), MPFR_RNDU);
    if (i + 1 < N) mpfr_add(r.get(), r.get(), a[i].get(), MPFR_RNDU);
    mpfr_sub(t.get(), s.b[i].get(), r.get(), MPFR_RNDD);
    if (i == 0 || mpfr_less_p(t.get(), s.lo.get())) mpfr_set(s.lo.get(), t.get(), MPFR_RNDN);
    mpfr_add(t.get(), s.b[i].get(), r.get(), MPFR_RNDU);
    if (i == 0 || mpfr_greater_p(t.get(), s.hi.get())) mpfr_set(s.hi.get(), t.get(), MPFR_RNDN);
  }
  return s;
}

// Number of eigenvalues below x.
long sturm_count(const Section& s, const MpReal& x, MpReal& q, MpReal& t) {
  const long N = long(s.b.size());
  long cnt = 0;
  mpfr_sub(q.get(), s.b[0].get(), x.get(), MPFR_RNDN);
  for (long i = 0;; ++i) {
    if (mpfr_zero_p(q.get())) {
      // perturb an exact zero pivot by one unit in the last place of the scale
      mpfr_set_ui_2exp(q.get(), 1, -long(s.prec), MPFR_RNDN);
      if (i > 0) mpfr_mul(q.get(), q.get(), s.a2[i - 1].get(), MPFR_RNDN);
      mpfr_neg(q.get(), q.get(), MPFR_RNDN);
    }
    if (mpfr_sgn(q.get()) < 0) ++cnt;
    if (i + 1 == N) break;
    mpfr_div(t.get(), s.a2[i].get(), q.get(), MPFR_RNDN);
    mpfr_sub(q.get(), s.b[i + 1].get(), x.get(), MPFR_RNDN);
    mpfr_sub(q.get(), q.get(), t.get(), MPFR_RNDN);
  }
  return cnt;
}

// k-th (0-based) eigenvalue inside [lo, hi] where count(lo) <= k < count(hi).
double bisect(const Section& s, long k, MpReal lo, MpReal hi, long c_lo, long c_hi) {
  MpReal mid(s.prec), q(s.prec), t(s.prec), w(s.prec), tol(s.prec);
  for (int it = 0; it < 4000; ++it) {
    mpfr_sub(w.get(), hi.get(), lo.get(), MPFR_RNDN);
    // stop at 2^-62 relative or 2^-62 absolute, whichever is larger
    if (mpfr_cmpabs(lo.get(), hi.get()) > 0) mpfr_abs(tol.get(), lo.get(), MPFR_RNDN);
    else mpfr_abs(tol.get(), hi.get(), MPFR_RNDN);
    if (mpfr_cmp_ui(tol.get(), 1) < 0) mpfr_set_ui(tol.get(), 1, MPFR_RNDN);
    mpfr_mul_2si(tol.get(), tol.get(), -62, MPFR_RNDN);
    if (mpfr_lessequal_p(w.get(), tol.get())) break;
    mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    const long c = sturm_count(s, mid, q, t);
    if (c < c_lo || c > c_hi) {
      std::ostringstream os;
      os << "Sturm count " << c << " outside [" << c_lo << ", " << c_hi << "] at " << s.prec
         << " bits; raise the precision";
      throw PrecisionError(os.str());
    }
    if (c > k) {
      mpfr_set(hi.get(), mid.get(), MPFR_RNDN);
      c_hi = c;
    } else {
      mpfr_set(lo.get(), mid.get(), MPFR_RNDN);
      c_lo = c;
    }
  }
  mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  return mid.to_double();
}

}  // namespace

std::vector<double> finite_section_eigs(const CoefficientModel& model, long N, long how_many, int bits) {
  const Section s = build_section(model, N, bits);
  how_many = std::min(how_many, N);
  std::vector<double> out;
  for (long k = 0; k < how_many; ++k) out.push_back(bisect(s, k, s.lo, s.hi, 0, N));
  return out;
}

std::vector<double> finite_section_eigs_in(const CoefficientModel& model, long N, double lo, double hi, int bits) {
  const Section s = build_section(model, N, bits);
  MpReal l(s.prec), h(s.prec), q(s.prec), t(s.prec);
  mpfr_set_d(l.get(), lo, MPFR_RNDN);
  mpfr_set_d(h.get(), hi, MPFR_RNDN);
  const long c_lo = sturm_count(s, l, q, t), c_hi = sturm_count(s, h, q, t);
  std::vector<double> out;
  for (long k = c_lo; k < c_hi; ++k) out.push_back(bisect(s, k, l, h, c_lo, c_hi));
  return out;
}

StableSection finite_section_stable(const CoefficientModel& model, long how_many, long n_start, long n_step,
                                    double rel_tol, long n_limit, int bits) {
  StableSection st;
  auto prev = finite_section_eigs(model, n_start, how_many, bits);
  for (long N = n_start + n_step; N <= n_limit; N += n_step) {
    auto cur = finite_section_eigs(model, N, how_many, bits);
    double change = 0;
    for (std::size_t i = 0; i < cur.size() && i < prev.size(); ++i)
      change = std::max(change, std::abs(cur[i] - prev[i]) / std::max(1.0, std::abs(cur[i])));
    if (change < rel_tol) {
      st.N = N;
      st.eigs = std::move(cur);
      st.change = change;
      return st;
    }
    prev = std::move(cur);
  }
  throw NotConverged("finite-section eigenvalues did not stabilize below N = " + std::to_string(n_limit));
}

std::vector<double> finite_section_weights(const CoefficientModel& model, long N, const std::vector<double>& eigs) {
  std::vector<double> w;
  w.reserve(eigs.size());
  for (double lam : eigs) {
    const auto P = first_kind(model, lam, N);
    ScaledComplex s{};
    for (long n = 0; n < N; ++n) s = s + P.at(n) * P.at(n).conj();
    w.push_back(1.0 / s.value().real());
  }
  return w;
}

std::complex<double> resolvent_entry(const CoefficientModel& model, const Regime& regime, std::complex<double> z,
                                     long n, long m, const JostOptions& opts) {
  if (z.imag() == 0) throw std::invalid_argument("resolvent_entry: Im z must be nonzero");
  if (n < 0 || m < 0) throw std::invalid_argument("resolvent_entry: negative index");
  if (regime.kind == RegimeKind::Unsupported) throw RegimeMismatch("resolvent: |beta_inf| = 1 is not supported");
  if (self_adjointness(model, regime).verdict == Verdict::DeficiencyOneOne)
    throw RegimeMismatch("resolvent: deficiency indices (1,1), the resolvent depends on the extension");
  const auto b = solve_jost(model, regime, z, opts);
  const long lo = std::min(n, m), hi = std::max(n, m);
  if (hi > b.n_trunc) throw std::invalid_argument("resolvent_entry: index beyond n_trunc");
  const ScaledComplex om = b.omega();
  const ScaledComplex env = envelope(model, b);
  if (om.is_zero() || std::abs(ratio(om, env)) < opts.tol) throw PoleAtZ("resolvent: Omega(z) vanishes");
  const auto P = first_kind(model, z, lo + 1);
  return ratio(P.at(lo) * b.f_at(hi), om);
}

SpectralMass spectral_mass(const CoefficientModel& model, const Regime& regime, double lambda,
                           const JostOptions& opts) {
  SpectralMass sm;
  // series: forward P_n until the terms stop decreasing
  const auto P = first_kind(model, lambda, opts.n_trunc);
  long double sum = 0;
  double prev = INFINITY, prev2 = INFINITY;
  long n = 0;
  for (; n <= opts.n_trunc; ++n) {
    const ScaledComplex p = P.at(n);
    const double term = p.is_zero() ? 0 : std::exp(2 * double(p.log_abs()));
    if (n > 10 && term > prev && prev < 1e-12 * double(sum)) break;
    sum += term;
    prev2 = prev;
    prev = term;
  }
  sm.n_series = n;
  const double rho = prev2 > 0 && std::isfinite(prev2) ? prev / prev2 : 1;
  sm.tail_bound = rho < 1 ? prev * rho / (1 - rho) / double(sum) : INFINITY;
  sm.series = double(1 / sum);

  // Jost formula 2 f_0 / f'_{-1} with central differences
  JostOptions o = opts;
  o.precision_bits = 64;
  const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, std::abs(lambda));
  auto fm1 = [&](double lam) { return solve_jost(model, regime, lam, o).f_at(-1); };
  const ScaledComplex p1 = fm1(lambda + h), m1 = fm1(lambda - h), p2 = fm1(lambda + 2 * h), m2 = fm1(lambda - 2 * h);
  const ScaledComplex d3 = (p1 - m1) * std::complex<double>(1 / (2 * h));
  const ScaledComplex d5 =
      (m2 - p2 + (p1 - m1) * std::complex<double>(8)) * std::complex<double>(1 / (12 * h));
  const auto center = solve_jost(model, regime, lambda, o);
  sm.jost = 2 * ratio(center.f_at(0), d3).real();
  sm.stencil_gap = std::abs(ratio(d3 - d5, d5));
  return sm;
}

std::complex<double> omega_companion(const CoefficientModel& model, const Regime& regime, double lambda,
                                     const JostOptions& opts) {
  const auto f = as_solution(solve_jost(model, regime, lambda, opts));
  const auto g = growing_g(model, f, 1);
  const auto P = first_kind(model, lambda, 8);
  return wronskian(model, P, g, 4).value();
}

}  // namespace jacobi
