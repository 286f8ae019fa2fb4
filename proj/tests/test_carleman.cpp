#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "jacobi/carleman.hpp"
#include "jacobi/errors.hpp"
#include "support.hpp"

using namespace jacobi;
using cd = std::complex<double>;

namespace {

CoefficientModel hermite() { return CoefficientModel(PowerLaw{std::sqrt(0.5), 0.5, 1}); }

// sqrt(a_n) P_n(lambda) of the orthonormal Hermite polynomials has density e^{-lambda^2} / sqrt(pi)
double hermite_density(double lambda) { return std::exp(-lambda * lambda) / std::sqrt(std::numbers::pi); }

}  // namespace

TEST_CASE("Carleman zeta examples") {
  const auto rs = classify(hermite());
  REQUIRE(rs.kind == RegimeKind::CarlemanSub);
  const double alpha = 0.3, lambda = 1.7;
  // beta = 0: zeta = -i e^{i lambda alpha}, unit modulus
  const cd z0 = carleman_zeta(0, alpha, lambda, rs);
  CHECK(std::abs(z0 - cd(0, -1) * std::exp(cd(0, lambda * alpha))) <= 1e-15);
  CHECK(std::abs(std::abs(z0) - 1) <= 1e-15);
  // z = 0 reduces to the non-Carleman value
  CHECK(std::abs(carleman_zeta(0.4, alpha, 0.0, rs) - ansatz_zeta(0.4, rs).zeta) <= 1e-15);

  const CoefficientModel sup(PowerLaw{1, 1, 0}, PowerDiagonal{-3, 1});
  const auto rp = classify(sup);
  REQUIRE(rp.kind == RegimeKind::CarlemanSuper);
  // beta = 2: (2 - sqrt 3) e^{-lambda alpha / sqrt 3}
  CHECK(std::abs(carleman_zeta(2, alpha, lambda, rp) - (2 - std::sqrt(3.0)) * std::exp(-lambda * alpha / std::sqrt(3.0))) <=
        1e-15);
  CHECK_THROWS_AS(carleman_zeta(1 - 1e-10, alpha, lambda, rs), NearCritical);
  const CoefficientModel non(PowerLaw{1, 2, 0});
  CHECK_THROWS_AS(carleman_zeta(0, alpha, lambda, classify(non)), RegimeMismatch);
}

TEST_CASE("Carleman zeta modulus in the oscillating branch") {
  const auto rs = classify(hermite());
  jt::Gen g(61);
  for (int i = 0; i < 200; ++i) {
    const double beta = g.uniform(-0.95, 0.95), alpha = g.uniform(0, 1);
    const cd z = g.z_any();
    const double want = std::exp(-z.imag() * alpha / std::sqrt(1 - beta * beta));
    CHECK(std::abs(std::abs(carleman_zeta(beta, alpha, z, rs)) - want) <= 1e-14 * want);
  }
}

TEST_CASE("psi is nondecreasing with psi_n / n -> 0") {
  for (const auto& m : {hermite(), CoefficientModel(PowerLaw{1, 1, 0}, PowerDiagonal{3, 1}),
                        CoefficientModel(PowerLaw{1, 0.8, 0}, PowerDiagonal{0.2, 0.8})}) {
    const auto psi = carleman_psi(m, 20000);
    CHECK(psi[0] == 0);
    for (std::size_t n = 1; n < psi.size(); ++n) CHECK(psi[n] >= psi[n - 1]);
    CHECK(psi[20000] / 20000 < psi[2000] / 2000);
    CHECK(psi[20000] / 20000 < 0.05);
  }
}

TEST_CASE("Hermite Jost solution") {
  const auto m = hermite();
  const auto r = classify(m);
  const auto b = carleman_jost(m, r, 0.5, {.n_trunc = 16384});
  CHECK(b.cert.recurrence_residual < 1e-10);
  // sqrt(a_n) |f_n(lambda + i0)| -> 1
  for (long n : {1000L, 8000L, 16000L}) CHECK(std::abs(std::exp(0.5 * double(m.la(n)) + b.f_at(n).log_abs()) - 1) < 0.02);
  // f(lambda - i0) = conj f(lambda + i0) and the half-planes are conjugate
  const auto up = carleman_jost(m, r, cd(0.5, 0.3), {.n_trunc = 4096});
  const auto down = carleman_jost(m, r, cd(0.5, -0.3), {.n_trunc = 4096});
  for (long n = -1; n <= 4096; n += 101) CHECK(std::abs(ratio(down.f_at(n), up.f_at(n).conj()) - 1.0) <= 1e-14);
  CHECK_THROWS_AS(carleman_jost(CoefficientModel(PowerLaw{1, 2, 0}), classify(CoefficientModel(PowerLaw{1, 2, 0})), 0.5),
                  RegimeMismatch);
}

TEST_CASE("Hermite spectral density against the Gaussian weight") {
  const auto m = hermite();
  const auto d = ac_spectral_density(m, classify(m), {0.0, 0.5, 1.0, 2.0, -2.0, 3.0}, {.n_trunc = 16384});
  for (const auto& p : d) {
    CHECK(p.density > 0);
    CHECK(std::abs(p.density / hermite_density(p.lambda) - 1) < 1e-3);
    CHECK(p.density == doctest::Approx(std::sqrt(1.0) / std::numbers::pi / (p.omega_abs * p.omega_abs)));
  }
  CHECK(d[0].density == doctest::Approx(1 / std::sqrt(std::numbers::pi)).epsilon(1e-7));
  CHECK(d[3].density == doctest::Approx(d[4].density).epsilon(1e-10));
}

TEST_CASE("property: density is even for zero diagonal") {
  jt::Gen g(62);
  for (int i = 0; i < 6; ++i) {
    const double p = g.uniform(0.5, 0.9);
    const CoefficientModel m(PowerLaw{g.uniform(0.5, 2), p, 1});
    const double l = g.uniform(0.1, 1.5);
    const auto d = ac_spectral_density(m, classify(m), {l, -l}, {.n_trunc = 8192});
    CHECK(d[0].density == doctest::Approx(d[1].density).epsilon(1e-10));
  }
}

TEST_CASE("sine asymptotics of the Hermite polynomials at 0") {
  const auto m = hermite();
  const auto r = classify(m);
  double prev = INFINITY;
  for (long N : {256L, 512L, 1024L, 2048L, 4096L}) {
    const auto rep = carleman_poly_asym(m, r, 0.0, N, {.n_trunc = 16384});
    double tail = 0;
    for (long n = N / 2; n <= N; ++n) tail = std::max(tail, rep.residual[n]);
    CHECK(tail < prev);
    prev = tail;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("Carleman super-critical prefactor for a_n = n, b_n = 3n") {
  // sqrt(a_n) e^{-vartheta sum_{m<n}} e^{z psi_n} (-1)^n P_n -> Omega / (2 sqrt(beta^2 - 1)), no varkappa factor
  const CoefficientModel m(PowerLaw{1, 1, 0}, PowerDiagonal{3, 1});
  const auto r = classify(m);
  REQUIRE(r.kind == RegimeKind::CarlemanSuper);
  REQUIRE(r.beta_inf == doctest::Approx(-1.5));
  for (cd z : {cd(0.3), cd(0, 1)}) {
    const long N = 4000;
    const cd omega = carleman_jost(m, r, z, {.n_trunc = N}).omega().value();
    const cd want = omega / (2 * std::sqrt(r.beta_inf * r.beta_inf - 1));
    const auto P = first_kind(m, z, N);
    const auto psi = carleman_psi(m, N);
    long double ph = 0;
    std::vector<double> rel;
    for (long n = 0; n <= N; ++n) {
      if (n == 500 || n == 1000 || n == 2000 || n == N) {
        const cd v = (P.at(n) * ScaledComplex::from_log(double(m.la(n) / 2 - ph))).value() * std::exp(z * psi[n]) *
                     (n % 2 ? -1.0 : 1.0);
        rel.push_back(std::abs(v / want - 1.0));
      }
      ph += std::acosh(std::abs(m.beta(n)));
    }
    // O(1/n) approach
    for (std::size_t i = 1; i < rel.size(); ++i) CHECK(rel[i] < 0.7 * rel[i - 1]);
    CHECK(rel.back() < 1e-3);
  }
}

TEST_CASE("condition (D)") {
  CHECK(condition_d(hermite()).holds);
  CHECK(condition_d(CoefficientModel(PowerLaw{1, 1, 0}, PowerDiagonal{3, 1})).holds);
  // a_n ~ n^{1/2} with |b_n| ~ n^{1/2}: sum n^{-1} diverges
  CHECK_FALSE(condition_d(CoefficientModel(PowerLaw{1, 0.5, 1}, ConstantBeta{0.3})).holds);
  CHECK_FALSE(condition_d(CoefficientModel(PowerLaw{1, 0.3, 1})).holds);
}
