#include "jacobi/ansatz.hpp"

#include <cmath>

#include "jacobi/errors.hpp"
#include "jost_table.hpp"

namespace jacobi {

ZetaValue ansatz_zeta(double beta, const Regime& regime) {
  if (regime.kind == RegimeKind::Unsupported) throw RegimeMismatch("ansatz: |beta_inf| = 1 is not supported");
  const auto p = detail::zeta_parts<double>(beta, regime.oscillating(), regime.sign_inf);
  return {p.zeta, p.angle, p.in_branch};
}

AnsatzTable::AnsatzTable(const CoefficientModel& model, const Regime& regime, long n_max)
    : t_(std::make_shared<detail::JostTable<double>>(detail::build_table<double>(model, regime, n_max))) {}

long AnsatzTable::n_max() const { return t_->n_max; }
std::complex<double> AnsatzTable::zeta(long n) const { return t_->zeta.at(n); }
double AnsatzTable::angle(long n) const { return t_->angle.at(n); }
bool AnsatzTable::in_branch(long n) const { return t_->in_branch.at(n); }
double AnsatzTable::phase(long n) const { return t_->phase.at(n); }
ScaledComplex AnsatzTable::q(long n) const { return t_->q.at(n); }
double AnsatzTable::beta(long n) const { return t_->beta.at(n); }
double AnsatzTable::alpha(long n) const { return t_->alpha.at(n); }
double AnsatzTable::varkappa(long n) const { return n == -1 ? t_->varkappa_m1 : t_->varkappa.at(n); }
double AnsatzTable::k(long n) const { return t_->k.at(n); }

std::complex<double> AnsatzTable::remainder(long n, std::complex<double> z) const {
  if (n < 1 || n > t_->n_max + 1) throw std::out_of_range("remainder: index out of range");
  return t_->remainder(n, z);
}

std::complex<double> AnsatzTable::remainder_quotient(long n, std::complex<double> z) const {
  if (n < 1 || n > t_->n_max) throw std::out_of_range("remainder_quotient: index out of range");
  // (a_{n-1} Q_{n-1} + (b_n - z) Q_n + a_n Q_{n+1}) / (sqrt(a_{n-1} a_n) Q_n)
  const auto& t = *t_;
  const std::complex<double> back = ratio(t.q[n - 1], t.q[n]) / t.varkappa[n - 1];
  const std::complex<double> fwd = ratio(t.q[n + 1], t.q[n]) * t.varkappa[n - 1];
  return back - 2.0 * t.beta[n] - 2.0 * z * t.alpha[n] + fwd;
}

double phase(const CoefficientModel& model, const Regime& regime, long n) {
  return AnsatzTable(model, regime, std::max<long>(n, 0)).phase(n);
}

ScaledComplex ansatz_q(const CoefficientModel& model, const Regime& regime, long n) {
  return AnsatzTable(model, regime, std::max<long>(n, 0)).q(n);
}

std::complex<double> remainder_r(const CoefficientModel& model, const Regime& regime,
                                 std::complex<double> z, long n) {
  return AnsatzTable(model, regime, n).remainder(n, z);
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Analytic bound of sum_{m>N} of the three terms, when the family admits one.
bool analytic_tail(const CoefficientModel& m, double absz, long N, double* out) {
  if (m.is_tabulated()) return false;
  const bool flat_beta = std::holds_alternative<ZeroDiagonal>(m.b_family()) ||
                         std::holds_alternative<ConstantBeta>(m.b_family());
  if (const auto* g = std::get_if<Geometric>(&m.a_family())) {
    const auto* e = std::get_if<ExponentialDiagonal>(&m.b_family());
    if (!(flat_beta || (e && e->x == g->x)) || !(g->x > 1)) return false;
    *out = absz * double(m.alpha(N + 1)) / (1 - 1 / g->x);
    return true;
  }
  if (const auto* p = std::get_if<PowerLaw>(&m.a_family())) {
    if (!flat_beta || !(p->p > 1)) return false;
    const double j = std::max(double(N) + p->shift, 1.0);  // base index of a_N
    if (j < 2) return false;
    // alpha_m <= a_{m-1}^{-1}/2 and sum_{i>=j} i^-p <= j^-p + j^{1-p}/(p-1)
    const double alpha_tail = (std::pow(j, -p->p) + std::pow(j, 1 - p->p) / (p->p - 1)) / (2 * p->gamma);
    // k_m - 1 = (1 - 1/j^2)^{-p/2} - 1 <= p/(2 j^2) (4/3)^{p/2+1}, sum_{i>j} i^-2 <= 1/j
    const double k_tail = p->p / 2 * std::pow(4.0 / 3.0, p->p / 2 + 1) / j;
    *out = absz * alpha_tail + k_tail;
    return true;
  }
  return false;
}

}  // namespace

namespace detail {

double extrapolate_tail(const std::vector<double>& terms, long n_last) {
  const long L = long(terms.size());
  if (L < 8) return INFINITY;
  const long lo = L / 2;
  bool all_zero = true;
  for (long i = lo; i < L; ++i) all_zero &= terms[i] == 0;
  if (all_zero) return 0;
  const double last = terms[L - 1];
  const double r1 = terms[L - 1] / terms[L - 2], r2 = terms[L - 2] / terms[L - 3];
  if (r1 > 0 && r1 < 0.95 && std::abs(r1 - r2) < 1e-3) return last * r1 / (1 - r1);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long cnt = 0;
  for (long i = lo; i < L; ++i) {
    if (!(terms[i] > 0)) continue;
    const double x = std::log(double(n_last - (L - 1 - i))), y = std::log(terms[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y, ++cnt;
  }
  if (cnt < 2) return last;
  const double s = -(cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  if (s <= 1.05) return INFINITY;
  // the largest of the recent terms guards against oscillating magnitudes
  double peak = 0;
  for (long i = std::max(lo, L - 64); i < L; ++i) peak = std::max(peak, terms[i]);
  return peak * double(n_last) / (s - 1);
}

}  // namespace detail

std::vector<double> eps_sequence(const CoefficientModel& model, std::complex<double> z, long n_cutoff,
                                 TailBound* tail) {
  if (n_cutoff < 4) throw std::invalid_argument("eps_sequence: cutoff must be at least 4");
  if (model.is_tabulated() && !model.tail() && n_cutoff >= model.table_size())
    throw TailUnbounded("tail of a tabulated model without a tail family cannot be bounded");
  const double absz = std::abs(z);
  std::vector<double> terms(n_cutoff + 1, 0.0);  // terms[m] for m = 1..n_cutoff
  long double bp = model.beta(0);
  for (long m = 1; m <= n_cutoff; ++m) {
    const long double bm = model.beta(m);
    terms[m] = double(std::abs(bp - bm) + std::abs(model.k(m) - 1) + model.alpha(m) * absz);
    bp = bm;
  }
  TailBound tb;
  double analytic = 0;
  if (analytic_tail(model, absz, n_cutoff, &analytic)) {
    tb.value = analytic;
    tb.certified = true;
  } else {
    if (model.is_tabulated() && !model.tail())
      throw TailUnbounded("tail of a tabulated model without a tail family cannot be bounded");
    std::vector<double> window(terms.begin() + std::max<long>(1, n_cutoff / 2), terms.end());
    tb.value = detail::extrapolate_tail(window, n_cutoff);
    tb.divergent = std::isinf(tb.value);
  }
  if (tail) *tail = tb;
  std::vector<double> eps(n_cutoff + 1);
  double acc = tb.value;
  for (long n = n_cutoff; n >= 0; --n) {
    eps[n] = acc;
    acc += terms[n];
  }
  return eps;
}

TailBound eps_tail(const CoefficientModel& model, std::complex<double> z, long n, long n_cutoff) {
  if (n < 0 || n >= n_cutoff) throw std::invalid_argument("eps_tail: need 0 <= n < n_cutoff");
  TailBound tb;
  const auto eps = eps_sequence(model, z, n_cutoff, &tb);
  tb.value = eps[n];
  if (tb.divergent) tb.value = INFINITY;
  return tb;
}

}  // namespace jacobi
