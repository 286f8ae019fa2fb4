#include <doctest.h>

#include <cmath>
#include <complex>

#include "jacobi/errors.hpp"
#include "jacobi/solutions.hpp"
#include "support.hpp"

using namespace jacobi;
using cd = std::complex<double>;

namespace {

SolutionSeq conj_seq(SolutionSeq s) {
  for (auto& v : s.values) v = v.conj();
  s.z = std::conj(s.z);
  return s;
}

}  // namespace

TEST_CASE("boundary values of P and P~") {
  const CoefficientModel m(PowerLaw{1, 2, 0}, PowerDiagonal{0.3, 2});
  const cd z(0.4, -1.2);
  const auto P = first_kind(m, z, 20), Pt = second_kind(m, z, 20);
  CHECK(P.value(-1) == cd(0));
  CHECK(P.value(0) == cd(1));
  // a_0 P_1 = z - b_0 at n = 0 (a_{-1} P_{-1} = 0)
  CHECK(std::abs(P.value(1) - (z - m.b(0)) / m.a(0)) <= 1e-15);
  CHECK(Pt.value(-1) == cd(-2));
  CHECK(Pt.value(0) == cd(0));
  CHECK(std::abs(Pt.value(1) - 1.0 / m.a(0)) <= 1e-15);
  // forward from seeds (0, 1) at n = -1 is P
  const auto R = recurrence_solve(m, z, -1, ScaledComplex(0.0), ScaledComplex(1.0), Direction::Forward, 20);
  for (long n = -1; n <= 20; ++n) CHECK(std::abs(ratio(R.at(n) - P.at(n), P.at(n) + ScaledComplex(1e-300))) <= 1e-15);
}

TEST_CASE("P_n for a_n = n^2 against a direct evaluation") {
  // a_0 = 1 by the max(n, 1) convention; P_2 = ((z - b_1) P_1 - a_0 P_0) / a_1, P_3 = (z P_2 - a_1 P_1) / a_2
  const CoefficientModel m(PowerLaw{1, 2, 0});
  const cd z(0.5, 0.5);
  const auto P = first_kind(m, z, 5);
  const cd p1 = z, p2 = (z * p1 - 1.0) / 1.0, p3 = (z * p2 - p1) / 4.0;
  CHECK(std::abs(P.value(3) - p3) <= 1e-15);
}

TEST_CASE("{P, P~} = 1 and constancy on all built-in families") {
  jt::Gen g(41);
  for (const auto& m : jt::builtin_models()) {
    const bool both_grow = classify(m).kind == RegimeKind::SuperCritical;
    for (int i = 0; i < 4; ++i) {
      const cd z = g.z_any();
      const auto P = first_kind(m, z, 1000), Pt = second_kind(m, z, 1000);
      CHECK(std::abs(wronskian(m, P, Pt, -1).value() - 1.0) <= 1e-15);
      CHECK(std::abs(wronskian(m, P, Pt, 0).value() - 1.0) <= 1e-14);
      const auto c = wronskian_constancy(m, P, Pt, -1, 998);
      // two dominant solutions: the Wronskian cancels down to the rounding level of its terms
      CHECK(c.max_deviation < (both_grow ? 1.0 : 1e-10));
      CHECK(std::abs(wronskian(m, P, P, 17).value()) == 0);
    }
  }
}

TEST_CASE("Wronskian constancy for Jost pairs") {
  for (const auto& m : jt::builtin_models()) {
    const auto r = classify(m);
    const cd z(0.3, 0.8);
    const auto f = as_solution(jost_f(m, r, z, {.n_trunc = 1000}));
    const auto P = first_kind(m, z, 1000);
    CHECK(wronskian_constancy(m, P, f, -1, 998).max_deviation < 1e-10);
    CHECK(recurrence_residual(m, f, 500) < 1e-12);
  }
}

TEST_CASE("backward recurrence from the Jost tail reproduces f") {
  jt::Gen g(42);
  for (int i = 0; i < 10; ++i) {
    const auto m = g.any_standard();
    const auto r = classify(m);
    const cd z = g.z_upper();
    const auto f = as_solution(jost_f(m, r, z, {.n_trunc = 3000}));
    const auto back = recurrence_solve(m, z, 599, f.at(599), f.at(600), Direction::Backward, -1);
    for (long n = -1; n < 600; n += 20) {
      CHECK(std::abs(ratio(back.at(n), f.at(n)) - 1.0) <= 1e-8);
    }
  }
}

TEST_CASE("growing solution g: {f, g} = 1 and the rescaled limit") {
  for (double beta : {1.1, -1.1}) {
    const CoefficientModel m(Geometric{1, 2}, ConstantBeta{beta});
    const auto r = classify(m);
    const auto f = as_solution(jost_f(m, r, 0.5, {.n_trunc = 400}));
    const auto g = growing_g(m, f);
    CHECK(g.first == -1);
    for (long n = -1; n < 380; n += 9) CHECK(std::abs(wronskian(m, f, g, n).value() - 1.0) <= 1e-8);
    const AnsatzTable t(m, r, 400);
    // sgn(beta) varkappa_inf / (2 sqrt(beta^2 - 1)) = +-sqrt 2 / (2 sqrt 0.21) = +-1.5430
    const double want = (beta > 0 ? 1 : -1) * std::sqrt(2.0) / (2 * std::sqrt(0.21));
    CHECK(std::abs(want) == doctest::Approx(1.5430).epsilon(1e-4));
    const auto rep = verify_asymptotics(m, t, g, AsymptoticForm::Growing, {.limit = want}, 300, 380);
    CHECK(rep.max_residual < 1e-3);
  }
}

TEST_CASE("fit of k coefficients for f, f~ and P") {
  const CoefficientModel m(PowerLaw{1, 2, 0});
  const auto r = classify(m);
  const double lambda = 0.8;
  const auto f = as_solution(jost_f(m, r, lambda, {.n_trunc = 3000}));
  const auto fc = conj_seq(f);
  const auto a = fit_k_coeffs(m, r, f, f, fc);
  CHECK(std::abs(a.k_plus - 1.0) <= 1e-12);
  CHECK(std::abs(a.k_minus) <= 1e-12);
  const auto b = fit_k_coeffs(m, r, fc, f, fc);
  CHECK(std::abs(b.k_plus) <= 1e-12);
  CHECK(std::abs(b.k_minus - 1.0) <= 1e-12);
  const auto P = first_kind(m, lambda, 3000);
  const auto p = fit_k_coeffs(m, r, P, f, fc);
  CHECK(std::abs(p.k_minus - std::conj(p.k_plus)) <= 1e-8 * p.kappa);
  CHECK(p.kappa > 0);
  // sqrt(a_n) P_n ~ 2 kappa cos(phi_n - eta)
  const AnsatzTable t(m, r, 3000);
  const auto eps = eps_sequence(m, lambda, 3000);
  const auto rep = verify_asymptotics(m, t, P, AsymptoticForm::Oscillating, {p.k_plus, p.k_minus, 0}, 100, 2999, &eps);
  for (std::size_t i = 0; i < rep.n.size(); i += 97) {
    const double ph = t.phase(rep.n[i]);
    CHECK(std::abs(rep.predicted[i].real() - 2 * p.kappa * std::cos(ph - p.eta)) <= 1e-10);
  }
  CHECK(rep.max_residual < 0.1);
  CHECK(rep.fitted_c < 20);
  CHECK(rep.decay_exponent < -0.5);
}

TEST_CASE("a degenerate pair is rejected") {
  const CoefficientModel m(PowerLaw{1, 2, 0});
  const auto r = classify(m);
  const auto f = as_solution(jost_f(m, r, 0.8, {.n_trunc = 500}));
  CHECK_THROWS_AS(fit_k_coeffs(m, r, f, f, f), DegenerateWronskian);
  const CoefficientModel sup(Geometric{1, 2}, ConstantBeta{1.1});
  CHECK_THROWS_AS(fit_k_coeffs(sup, classify(sup), f, f, f), RegimeMismatch);
}

TEST_CASE("identity for kappa at z = i, a_n = n^2") {
  const CoefficientModel m(PowerLaw{1, 2, 0});
  const auto rep = identity_thm_kappa(m, classify(m), cd(0, 1), {.n_trunc = 500});
  CHECK(rep.relative_gap < 1e-2);
  CHECK(rep.kappa_z < rep.kappa_zbar);
  const auto low = identity_thm_kappa(m, classify(m), cd(0.5, -0.7), {.n_trunc = 500});
  CHECK(low.kappa_z > low.kappa_zbar);
  CHECK(low.relative_gap < 1e-2);
}

TEST_CASE("property: kappa(z) < kappa(conj z) in the upper half-plane") {
  jt::Gen g(43);
  for (int i = 0; i < 8; ++i) {
    const auto m = g.sub_critical();
    const auto r = classify(m);
    const cd z = g.z_upper();
    const auto rep = identity_thm_kappa(m, r, z, {.n_trunc = 3000});
    CHECK(rep.kappa_z < rep.kappa_zbar);
    CHECK(rep.relative_gap < 5e-2);
  }
}

TEST_CASE("property: reflection and conjugation symmetries of P") {
  jt::Gen g(44);
  for (int i = 0; i < 30; ++i) {
    const double gamma = g.uniform(0.5, 2), p = g.uniform(1.5, 3), delta = g.uniform(-0.4, 0.4);
    const CoefficientModel pos(PowerLaw{gamma, p, 0}, PowerDiagonal{delta, p});
    const CoefficientModel neg(PowerLaw{gamma, p, 0}, PowerDiagonal{-delta, p});
    const cd z = g.z_any();
    const auto P = first_kind(pos, z, 200), Pm = first_kind(neg, -z, 200), Pc = first_kind(pos, std::conj(z), 200);
    for (long n = 0; n <= 200; n += 7) {
      const ScaledComplex sign(n % 2 ? -1.0 : 1.0);
      CHECK(std::abs(ratio(Pm.at(n), sign * P.at(n)) - 1.0) <= 1e-12);
      CHECK(std::abs(ratio(Pc.at(n), P.at(n).conj()) - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("property: k_+ f + k_- f~ re-synthesizes the solution") {
  jt::Gen g(45);
  for (int i = 0; i < 10; ++i) {
    const auto m = g.sub_critical();
    const auto r = classify(m);
    const double lambda = g.uniform(-2, 2);
    const long N = 1500;
    const auto f = as_solution(jost_f(m, r, lambda, {.n_trunc = N}));
    const auto fc = conj_seq(f);
    // an arbitrary real solution from random seeds
    const auto F = recurrence_solve(m, lambda, -1, ScaledComplex(g.uniform(-1, 1)), ScaledComplex(g.uniform(-1, 1)),
                                    Direction::Forward, N);
    const auto fit = fit_k_coeffs(m, r, F, f, fc);
    CHECK(std::abs(fit.k_minus - std::conj(fit.k_plus)) <= 1e-8 * (1 + fit.kappa));
    for (long n = 0; n < N; n += 31) {
      const auto syn = ScaledComplex(fit.k_plus) * f.at(n) + ScaledComplex(fit.k_minus) * fc.at(n);
      const double scale = std::exp(-0.5 * double(m.la(n))) * (1 + fit.kappa);
      CHECK(std::abs((syn - F.at(n)).value()) <= 1e-8 * scale);
    }
  }
}
