#include "jacobi/solutions.hpp"

#include <cmath>
#include <limits>

#include "jacobi/errors.hpp"
#include "jost_table.hpp"

namespace jacobi {

namespace {

ScaledComplex from_log(long double l, std::complex<double> unit = 1.0) {
  return ScaledComplex::from_log(double(l), unit);
}

// c1 = (z - b_n) / a_n and c2 = a_{n-1} / a_n as scaled numbers.
struct StepCoef {
  ScaledComplex c1, c2;
};

StepCoef step_coef(const CoefficientModel& m, std::complex<double> z, long n) {
  StepCoef c;
  c.c1 = z == 0.0 ? ScaledComplex{} : from_log(-m.la(n)) * z;
  const auto [s, l] = m.log_b_over_a(n);
  if (s != 0) c.c1 = c.c1 + from_log(l, double(-s));
  c.c2 = n == 0 ? from_log(-m.la(0) - std::log(2.0L)) : from_log(-m.lr(n - 1));
  return c;
}

double abs_ratio(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero()) return 0;
  if (b.is_zero()) return std::numeric_limits<double>::infinity();
  return std::abs(ratio(a, b));
}

ScaledComplex sabs(const ScaledComplex& x) {
  ScaledComplex r = x;
  r.mant = std::abs(x.mant);
  return r;
}

}  // namespace

SolutionSeq as_solution(const JostBundle& b) {
  SolutionSeq s;
  s.kind = b.conjugated ? SolutionKind::ConjugateJost : SolutionKind::Jost;
  s.z = b.z;
  s.first = -1;
  s.values = b.f;
  return s;
}

SolutionSeq recurrence_solve(const CoefficientModel& model, std::complex<double> z, long n0, ScaledComplex f0,
                             ScaledComplex f1, Direction dir, long end) {
  SolutionSeq s;
  s.z = z;
  if (dir == Direction::Forward) {
    if (end < n0 + 1) throw std::invalid_argument("recurrence_solve: end must exceed n0 + 1");
    s.first = n0;
    s.values.reserve(end - n0 + 1);
    s.values.push_back(f0);
    s.values.push_back(f1);
    for (long n = n0 + 1; n < end; ++n) {
      const auto c = step_coef(model, z, n);
      const ScaledComplex& fn = s.values[n - n0];
      const ScaledComplex& fp = s.values[n - 1 - n0];
      s.values.push_back(c.c1 * fn - c.c2 * fp);
    }
  } else {
    if (end < -1 || end > n0) throw std::invalid_argument("recurrence_solve: backward end must lie in [-1, n0]");
    std::vector<ScaledComplex> rev{f1, f0};
    for (long n = n0; n > end; --n) {
      const auto c = step_coef(model, z, n);
      const ScaledComplex& fn = rev[rev.size() - 1];
      const ScaledComplex& fnext = rev[rev.size() - 2];
      rev.push_back((c.c1 * fn - fnext) / c.c2);
    }
    s.first = end;
    s.values.assign(rev.rbegin(), rev.rend());
  }
  return s;
}

SolutionSeq first_kind(const CoefficientModel& model, std::complex<double> z, long n_max) {
  auto s = recurrence_solve(model, z, -1, ScaledComplex{}, ScaledComplex(1.0), Direction::Forward, n_max);
  s.kind = SolutionKind::FirstKind;
  return s;
}

SolutionSeq second_kind(const CoefficientModel& model, std::complex<double> z, long n_max) {
  auto s = recurrence_solve(model, z, -1, ScaledComplex(-2.0), ScaledComplex{}, Direction::Forward, n_max);
  s.kind = SolutionKind::SecondKind;
  return s;
}

ScaledComplex wronskian(const CoefficientModel& model, const SolutionSeq& f, const SolutionSeq& g, long n) {
  const ScaledComplex d = f.at(n) * g.at(n + 1) - f.at(n + 1) * g.at(n);
  return d * from_log(model.la(n));
}

ConstancyReport wronskian_constancy(const CoefficientModel& model, const SolutionSeq& f, const SolutionSeq& g,
                                    long n_lo, long n_hi) {
  ConstancyReport r;
  const ScaledComplex ref = wronskian(model, f, g, n_lo);
  r.reference = ref.value();
  const double eps = std::numeric_limits<double>::epsilon();
  for (long n = n_lo + 1; n <= n_hi; ++n) {
    const ScaledComplex an = from_log(model.la(n));
    const ScaledComplex w = wronskian(model, f, g, n);
    const ScaledComplex rounding =
        (sabs(f.at(n) * g.at(n + 1)) + sabs(f.at(n + 1) * g.at(n))) * an * std::complex<double>(4 * eps);
    const double dev = abs_ratio(w - ref, sabs(ref) + rounding);
    if (dev > r.max_deviation) r.max_deviation = dev, r.worst_index = n;
  }
  return r;
}

double recurrence_residual(const CoefficientModel& model, const SolutionSeq& f, long n) {
  const auto c = step_coef(model, f.z, n);
  const ScaledComplex t1 = c.c2 * f.at(n - 1), t2 = -(c.c1 * f.at(n)), t3 = f.at(n + 1);
  return abs_ratio(t1 + t2 + t3, sabs(t1) + sabs(t2) + sabs(t3));
}

SolutionSeq growing_g(const CoefficientModel& model, const SolutionSeq& f, long n0) {
  if (n0 < 0 || n0 - 1 < f.first || n0 + 1 > f.last())
    throw std::invalid_argument("growing_g: n0 outside the range of f");
  SolutionSeq g;
  g.kind = SolutionKind::Growing;
  g.z = f.z;
  const long N = f.last();
  std::vector<ScaledComplex> fwd;  // g_{n0-1}..g_N
  fwd.push_back(ScaledComplex{});
  ScaledComplex S{};
  for (long m = n0; m <= N; ++m) {
    if (f.at(m - 1).is_zero() || f.at(m).is_zero())
      throw ZeroCrossing("growing_g: f vanishes at n = " + std::to_string(f.at(m).is_zero() ? m : m - 1));
    const ScaledComplex am1 = m == 0 ? ScaledComplex(0.5) : from_log(model.la(m - 1));
    S = S + ScaledComplex(1.0) / (am1 * f.at(m - 1) * f.at(m));
    fwd.push_back(f.at(m) * S);
  }
  if (n0 - 1 > -1) {
    const auto back = recurrence_solve(model, f.z, n0 - 1, fwd[0], fwd[1], Direction::Backward, -1);
    g.first = -1;
    g.values.assign(back.values.begin(), back.values.end() - 2);
  } else {
    g.first = n0 - 1;
  }
  g.values.insert(g.values.end(), fwd.begin(), fwd.end());
  return g;
}

AsymptoticFit fit_k_coeffs(const CoefficientModel& model, const Regime& regime, const SolutionSeq& F,
                           const SolutionSeq& f, const SolutionSeq& fc) {
  if (!regime.oscillating()) throw RegimeMismatch("fit_k_coeffs requires an oscillating regime");
  const long N = std::min({F.last(), f.last(), fc.last()}) - 1;
  if (N < 16) throw std::invalid_argument("fit_k_coeffs: sequences too short");
  long n_star = N / 2;
  if (!regime.carleman) {
    try {
      const auto eps = eps_sequence(model, F.z, N);
      for (long n = 0; n <= N; ++n) {
        if (eps[n] < 1e-3) {
          n_star = n;
          break;
        }
      }
    } catch (const TailUnbounded&) {
    }
  }
  n_star = std::clamp<long>(n_star, std::max({F.first, f.first, fc.first, 0L}), N - 8);
  std::complex<double> wff = 0, wFfc = 0, wFf = 0;
  for (long n = n_star; n < n_star + 8; ++n) {
    wff += wronskian(model, f, fc, n).value();
    wFfc += wronskian(model, F, fc, n).value();
    wFf += wronskian(model, F, f, n).value();
  }
  wff /= 8.0, wFfc /= 8.0, wFf /= 8.0;
  AsymptoticFit fit;
  fit.n_star = n_star;
  fit.wronskian_ff = wff;
  fit.wronskian_theory = std::complex<double>(0, 2 * std::sqrt(1 - regime.beta_inf * regime.beta_inf)) /
                         regime.varkappa_inf;
  if (std::abs(wff - fit.wronskian_theory) > 0.1 * std::abs(fit.wronskian_theory))
    throw DegenerateWronskian("{f, f~} is not within 10% of its limiting value");
  fit.k_plus = wFfc / wff;
  fit.k_minus = -wFf / wff;
  fit.kappa = std::abs(fit.k_plus);
  fit.eta = std::arg(fit.k_plus);
  return fit;
}

AsymptoticReport verify_asymptotics(const CoefficientModel& model, const AnsatzTable& table, const SolutionSeq& F,
                                    AsymptoticForm form, const AsymptoticTarget& target, long n_lo, long n_hi,
                                    const std::vector<double>* eps) {
  AsymptoticReport r;
  n_lo = std::max(n_lo, std::max(F.first, 0L));
  n_hi = std::min({n_hi, F.last(), table.n_max()});
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long cnt = 0;
  for (long n = n_lo; n <= n_hi; ++n) {
    std::complex<double> resc, pred;
    switch (form) {
      case AsymptoticForm::Oscillating: {
        resc = (F.at(n) * from_log(model.la(n) / 2)).value();
        const double ph = table.phase(n);
        const std::complex<double> e(std::cos(ph), -std::sin(ph));
        pred = target.k_plus * e + target.k_minus * std::conj(e);
        break;
      }
      case AsymptoticForm::Growing:
        resc = (F.at(n) * table.q(n) * from_log(model.la(n))).value();
        pred = target.limit;
        break;
      case AsymptoticForm::Decaying:
        resc = ratio(F.at(n), table.q(n));
        pred = target.limit;
        break;
    }
    const double res = std::abs(resc - pred);
    r.n.push_back(n);
    r.rescaled.push_back(resc);
    r.predicted.push_back(pred);
    r.residual.push_back(res);
    r.max_residual = std::max(r.max_residual, res);
    if (eps && n < long(eps->size()) && (*eps)[n] > 0) r.fitted_c = std::max(r.fitted_c, res / (*eps)[n]);
    if (n > 0 && res > 0) {
      const double x = std::log(double(n)), y = std::log(res);
      sx += x, sy += y, sxx += x * x, sxy += x * y, ++cnt;
    }
  }
  if (cnt >= 2) r.decay_exponent = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return r;
}

IdentityReport identity_thm_kappa(const CoefficientModel& model, const Regime& regime, std::complex<double> z,
                                  const JostOptions& opts) {
  if (regime.kind != RegimeKind::SubCritical) throw RegimeMismatch("identity_thm_kappa requires SubCritical");
  if (z.imag() == 0) throw std::invalid_argument("identity_thm_kappa: Im z must be nonzero");
  const long N = opts.n_trunc;
  const auto fz = as_solution(jost_f(model, regime, z, opts));
  const auto fzb = as_solution(jost_f(model, regime, std::conj(z), opts));
  auto conj_seq = [](SolutionSeq s) {
    for (auto& v : s.values) v = v.conj();
    s.z = std::conj(s.z);
    s.kind = SolutionKind::ConjugateJost;
    return s;
  };
  const auto P = first_kind(model, z, N);
  const auto Pb = first_kind(model, std::conj(z), N);
  const auto fit_z = fit_k_coeffs(model, regime, P, fz, conj_seq(fzb));
  const auto fit_zb = fit_k_coeffs(model, regime, Pb, fzb, conj_seq(fz));
  IdentityReport r;
  r.kappa_z = fit_z.kappa;
  r.kappa_zbar = fit_zb.kappa;
  r.lhs = r.kappa_zbar * r.kappa_zbar - r.kappa_z * r.kappa_z;
  long double s = 0;
  for (long n = 0; n <= N; ++n) s += std::norm(P.value(n));
  r.sum_p2 = double(s);
  std::vector<double> inv;
  long double inv_sum = 0;
  for (long n = N + 1; n <= 4 * N; ++n) {
    inv.push_back(double(model.inv_a(n)));
    inv_sum += inv.back();
  }
  const double inv_tail = double(inv_sum) + detail::extrapolate_tail(inv, 4 * N);
  r.tail = (std::norm(fit_z.k_plus) + std::norm(fit_z.k_minus)) * inv_tail;
  const double b = regime.beta_inf;
  r.rhs = z.imag() * regime.varkappa_inf / std::sqrt(1 - b * b) * (r.sum_p2 + r.tail);
  r.relative_gap = std::abs(r.lhs - r.rhs) / std::max(std::abs(r.lhs), std::abs(r.rhs));
  return r;
}

}  // namespace jacobi
