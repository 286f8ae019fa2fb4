// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "jacobi/carleman.hpp"
#include "jacobi/errors.hpp"
#include "jacobi/solutions.hpp"
#include "jacobi/spectral.hpp"

using namespace jacobi;
using cd = std::complex<double>;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

CoefficientModel n_squared() { return CoefficientModel(PowerLaw{1, 2, 0}); }
CoefficientModel geometric_m11() { return CoefficientModel(Geometric{1, 2}, ConstantBeta{-1.1}); }
CoefficientModel hermite() { return CoefficientModel(PowerLaw{std::sqrt(0.5), 0.5, 1}); }

Outcome jost_subcritical() {
  const auto m = n_squared();
  const cd z(1, 1);
  JostOptions o;
  o.n_trunc = 2000;
  const auto b = jost_f(m, classify(m), z, o);
  double C = 0;
  for (long n = 1; n <= o.n_trunc; ++n) C = std::max(C, std::abs(b.u[n] - 1.0) * 2.0 * n / std::abs(z));
  const double res = b.cert.recurrence_residual;
  return {res < 1e-12 && C >= 0.5 && C <= 20,
          fmt("recurrence residual %.2e (< 1e-12), fitted C = %.4f (in [0.5, 20])", res, C)};
}

Outcome wronskians() {
  const auto m = n_squared();
  const auto r = classify(m);
  double worst_pp = 0, worst_const = 0;
  for (cd z : {cd(1, 1), cd(0.5), cd(-2, 0.3), cd(0, -1)}) {
    const auto P = first_kind(m, z, 2000), Pt = second_kind(m, z, 2000);
    worst_pp = std::max(worst_pp, std::abs(wronskian(m, P, Pt, 0).value() - 1.0));
    worst_const = std::max(worst_const, wronskian_constancy(m, P, Pt, -1, 1998).max_deviation);
  }
  const double lambda = 1.0;
  const auto f = as_solution(jost_f(m, r, lambda, {.n_trunc = 2000}));
  const auto fc = as_solution(conjugate_jost(m, r, lambda, {.n_trunc = 2000}));
  const cd theory(0, 2 * std::sqrt(1 - r.beta_inf * r.beta_inf) / r.varkappa_inf);
  const double rel = std::abs(wronskian(m, f, fc, 0).value() - theory) / std::abs(theory);
  return {worst_pp < 1e-12 && worst_const < 1e-10 && rel < 1e-6,
          fmt("|{P,P~} - 1| = %.1e, constancy %.1e (< 1e-10), {f,f~} relative gap %.2e (< 1e-6)", worst_pp,
              worst_const, rel)};
}

Outcome identity() {
  const auto m = n_squared();
  const auto rep = identity_thm_kappa(m, classify(m), cd(0, 1), {.n_trunc = 500});
  return {rep.relative_gap < 1e-2 && rep.kappa_z < rep.kappa_zbar,
          fmt("relative gap %.2e (< 1e-2), kappa(i) = %.6f < kappa(-i) = %.6f", rep.relative_gap, rep.kappa_z,
              rep.kappa_zbar)};
}

Outcome eigenvalues() {
  const auto m = geometric_m11();
  const auto r = classify(m);
  EigenOptions o;
  o.lo = 0;
  o.hi = 20;
  o.step = 0.05;
  o.jost.n_trunc = 150;
  const auto res = find_eigenvalues(m, r, o);
  if (res.roots.size() < 5) return {false, fmt("only %zu roots in [0, 20]", res.roots.size())};
  const auto st = finite_section_stable(m, 5);
  double worst_eig = 0, worst_mass = 0, total = 0;
  for (std::size_t k = 0; k < res.roots.size(); ++k) {
    const double lambda = res.roots[k].lambda;
    if (k < 5) worst_eig = std::max(worst_eig, std::abs(lambda - st.eigs[k]) / std::max(1.0, std::abs(lambda)));
    const auto mass = spectral_mass(m, r, lambda, o.jost);
    if (!(mass.series > 0 && mass.jost > 0)) return {false, "non-positive mass"};
    worst_mass = std::max(worst_mass, std::abs(mass.series - mass.jost) / mass.series);
    total += mass.series;
  }
  return {worst_eig < 1e-6 && worst_mass < 1e-4 && total <= 1 + 1e-6,
          fmt("%zu roots, oracle N = %ld, eigenvalue gap %.1e (< 1e-6), mass gap %.1e (< 1e-4), sum %.10f", res.roots.size(),
              st.N, worst_eig, worst_mass, total)};
}

Outcome growing_limit() {
  const auto m = geometric_m11();
  const auto r = classify(m);
  const auto f = as_solution(jost_f(m, r, 0.5, {.n_trunc = 400}));
  const auto g = growing_g(m, f);
  const AnsatzTable t(m, r, 400);
  const double want = r.sign_inf * r.varkappa_inf / (2 * std::sqrt(r.beta_inf * r.beta_inf - 1));
  const auto rep = verify_asymptotics(m, t, g, AsymptoticForm::Growing, {.limit = want}, 300, 300);
  double wr = 0;
  for (long n = -1; n < 399; ++n) wr = std::max(wr, std::abs(wronskian(m, f, g, n).value() - 1.0));
  return {rep.max_residual < 1e-3 && wr < 1e-8,
          fmt("rescaled g_300 = %.6f vs %.6f (gap %.1e < 1e-3), max |{f,g} - 1| = %.1e (< 1e-8)",
              rep.rescaled[0].real(), want, rep.max_residual, wr)};
}

Outcome poly_prefactor() {
  const auto m = geometric_m11();
  const auto r = classify(m);
  const cd z(0, 1);
  const auto v = jost_function(m, r, z, {.n_trunc = 500});
  const double want =
      r.varkappa_inf * std::abs(v.omega.value()) / (2 * std::sqrt(r.beta_inf * r.beta_inf - 1));
  const auto P = first_kind(m, z, 400);
  const AnsatzTable t(m, r, 400);
  double worst = 0;
  for (long n = 200; n <= 400; ++n) {
    const double resc = std::exp(P.at(n).log_abs() + 0.5 * double(m.la(n)) - t.phase(n));
    worst = std::max(worst, std::abs(resc / want - 1));
  }
  return {worst < 1e-3, fmt("max relative gap over n in [200, 400]: %.2e (< 1e-3), prefactor %.8f", worst, want)};
}

Outcome classifier_table() {
  struct Row {
    const char* name;
    CoefficientModel m;
    Verdict want;
  };
  const std::vector<Row> rows = {
      {"n^2", n_squared(), Verdict::DeficiencyOneOne},
      {"2^n beta 1.1", CoefficientModel(Geometric{1, 2}, ConstantBeta{1.1}), Verdict::EssentiallySelfAdjoint},
      {"2^n beta -1.1", geometric_m11(), Verdict::EssentiallySelfAdjoint},
      {"2^(n^2) beta 2", CoefficientModel(Stretched{1, 2, 2}, ConstantBeta{2}), Verdict::DeficiencyOneOne},
      {"Hermite", hermite(), Verdict::EssentiallySelfAdjoint}};
  std::string detail;
  bool ok = true;
  for (const auto& row : rows) {
    const auto v = self_adjointness(row.m, classify(row.m)).verdict;
    ok &= v == row.want;
    detail += std::string(detail.empty() ? "" : ", ") + row.name + " -> " + to_string(v);
  }
  ok &= classify(n_squared()).kind == RegimeKind::SubCritical;
  return {ok, detail};
}

Outcome carleman_hermite() {
  const auto m = hermite();
  const auto r = classify(m);
  const JostOptions o{.n_trunc = 16384};
  const double jost_res = carleman_jost(m, r, 0.0, o).cert.recurrence_residual;

  std::vector<double> sine;
  bool decreasing = true;
  for (long N = 256; N <= 4096; N *= 2) {
    const auto rep = carleman_poly_asym(m, r, 0.0, N, o);
    double tail = 0;
    for (long n = N / 2; n <= N; ++n) tail = std::max(tail, rep.residual[n]);
    if (!sine.empty() && !(tail < sine.back())) decreasing = false;
    sine.push_back(tail);
  }

  // density on a 0.05 grid, integrated over bins of width 0.1 by Simpson's rule
  std::vector<double> grid;
  for (int i = -60; i <= 60; ++i) grid.push_back(0.05 * i);
  const auto dens = ac_spectral_density(m, r, grid, o);
  bool positive = true;
  double worst_gauss = 0;
  for (const auto& p : dens) {
    positive &= p.density > 0;
    worst_gauss = std::max(worst_gauss, std::abs(p.density * std::sqrt(std::numbers::pi) * std::exp(p.lambda * p.lambda) - 1));
  }

  // oracle: e_0-weights of the 2000 x 2000 section; the continuous CDF is taken through
  // the midpoints of the jumps and interpolated linearly between nodes
  const long N = 2000;
  const auto eigs = finite_section_eigs_in(m, N, -4, 4);
  const auto w = finite_section_weights(m, N, eigs);
  std::vector<double> xs, cdf;
  double acc = 0;  // the mass below -4 cancels in bin differences
  for (std::size_t k = 0; k < eigs.size(); ++k) {
    xs.push_back(eigs[k]);
    cdf.push_back(acc + w[k] / 2);
    acc += w[k];
  }
  auto F = [&](double x) {
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t j = std::size_t(it - xs.begin());
    return cdf[j - 1] + (cdf[j] - cdf[j - 1]) * (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
  };
  double worst_bin = 0;
  for (int b = 0; b < 60; ++b) {
    const double lo = -3 + 0.1 * b;
    const double mass = 0.1 / 6 * (dens[2 * b].density + 4 * dens[2 * b + 1].density + dens[2 * b + 2].density);
    const double oracle = F(lo + 0.1) - F(lo);
    worst_bin = std::max(worst_bin, std::abs(mass / oracle - 1));
  }
  return {jost_res < 1e-10 && decreasing && positive && worst_bin < 0.05,
          fmt("Jost residual %.1e (< 1e-10), sine residual %.1e -> %.1e over N = 256..4096 (%s), density %s on [-3,3], "
              "worst bin gap %.2e (< 5%%), Gaussian check %.1e",
              jost_res, sine.front(), sine.back(), decreasing ? "decreasing" : "NOT decreasing",
              positive ? "positive" : "NOT positive", worst_bin, worst_gauss)};
}

Outcome kernel_sign() {
  const std::vector<CoefficientModel> models = {
      n_squared(),
      CoefficientModel(PowerLaw{2, 1.5, 0}, PowerDiagonal{1, 1.5}),
      geometric_m11(),
      CoefficientModel(Geometric{1, 2}, ConstantBeta{1.1}),
      CoefficientModel(Geometric{1, 3}, ConstantBeta{2}),
      CoefficientModel(Geometric{1, 2}, ExponentialDiagonal{0.5, 2}),
      CoefficientModel(Stretched{1, 2, 0.5}),
      CoefficientModel(Stretched{1, 2, 2}, ConstantBeta{2}),
      CoefficientModel(ParityPerturbed{2, 0.9, -0.9}),
      CoefficientModel::tabulated({1, 1, 4, 9}, {0, 0, 0, 0}, n_squared())};
  double worst = 0;
  int flipped = 0, runs = 0;
  JostOptions o;
  o.n_trunc = 1500;
  for (const auto& m : models) {
    const auto r = classify(m);
    for (cd z : {cd(0), cd(1, 1), cd(-2, 0.5), cd(3), cd(0.5, -2)}) {
      JostOptions oz = o;
      if (std::holds_alternative<Stretched>(m.a_family()) && std::get<Stretched>(m.a_family()).q > 1) oz.n_trunc = 30;
      const auto b = solve_u(m, r, z, oz);
      worst = std::max(worst, b.cert.ueq_residual / oz.tol);
      flipped += b.kernel_sign != -1;
      ++runs;
    }
  }
  return {worst < 10 && flipped == 0,
          fmt("%d solves on %zu families: max residual %.2e x tol (< 10), kernel sign -1 in all", runs, models.size(),
              worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"jost-subcritical", jost_subcritical}, {"wronskians", wronskians},         {"kappa-identity", identity},
      {"eigenvalue-oracle", eigenvalues},    {"growing-solution", growing_limit}, {"poly-asymptotics", poly_prefactor},
      {"self-adjointness", classifier_table}, {"carleman-hermite", carleman_hermite}, {"kernel-sign", kernel_sign}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(), dt);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
