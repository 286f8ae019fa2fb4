// jacobi-jost: batch front end for the Jacobi-matrix toolkit.
//
// Artifacts (CSV or JSON) go to --out, or to stdout when --out is absent.
// The human-readable summary always goes to stderr.
//
// Exit codes: 0 success, 2 convergence or precision failure (including a
// failed check), 3 configuration error, 4 regime refusal.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "jacobi/ansatz.hpp"
#include "jacobi/carleman.hpp"
#include "jacobi/coefficients.hpp"
#include "jacobi/errors.hpp"
#include "jacobi/model_io.hpp"
#include "jacobi/solutions.hpp"
#include "jacobi/spectral.hpp"
#include "jacobi/volterra.hpp"

using namespace jacobi;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kConvergence = 2, kConfig = 3, kRegime = 4 };

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json cjson(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::string cnum(std::complex<double> z) {
  return num(z.real()) + (std::signbit(z.imag()) ? "-" : "+") + num(std::abs(z.imag())) + "i";
}

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

struct Summary {
  std::string command;
  std::vector<std::string> lines;
  std::vector<Check> checks;
  std::vector<std::string> warnings;

  void check(std::string name, bool pass, std::string detail) {
    checks.push_back({std::move(name), pass, std::move(detail)});
  }
  void warn(const std::string& w) {
    if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) warnings.push_back(w);
  }
  void warn_all(const std::vector<std::string>& ws) {
    for (const auto& w : ws) warn(w);
  }
  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
  void print(std::ostream& os, const std::string& status = {}) const {
    os << "command: " << command << "\n";
    for (const auto& l : lines) os << l << "\n";
    for (const auto& c : checks) os << (c.pass ? "  PASS " : "  FAIL ") << c.name << ": " << c.detail << "\n";
    for (const auto& w : warnings) os << "warning: " << w << "\n";
    os << "status: " << (!status.empty() ? status : ok() ? "OK" : "CHECKS FAILED") << "\n";
  }
};

struct Run {
  LoadedModel lm{CoefficientModel(PowerLaw{}), {}, {}, {}};
  Regime regime;
  std::string command;
  std::vector<std::complex<double>> z;
  std::optional<Grid> grid;
  long n = 400;
  JostOptions jost;
  int bits = 53;
  Summary summary;
  std::ostringstream artifact;
};

[[noreturn]] void refuse(const std::string& msg) { throw RegimeMismatch(msg); }

void regime_lines(Run& r) {
  std::ostringstream os;
  os << "model: " << r.lm.model.describe() << " [" << r.lm.hash << "]";
  r.summary.lines.push_back(os.str());
  os.str("");
  os << "regime: " << to_string(r.regime.kind) << " (beta_inf=" << r.regime.beta_inf
     << ", varkappa_inf=" << r.regime.varkappa_inf << ")";
  r.summary.lines.push_back(os.str());
}

void l1_warnings(Run& r) {
  if (r.regime.carleman || r.regime.kind == RegimeKind::Unsupported) return;
  const auto d = ell1_diagnostics(r.lm.model, 4096);
  if (d.k_violated) r.summary.warn("ℓ¹ hypothesis violated: sum |k_n - 1| appears to diverge");
  if (d.beta_violated) r.summary.warn("ℓ¹ hypothesis violated: sum |beta_n - beta_{n-1}| appears to diverge");
  if (d.alpha_violated) r.summary.warn("ℓ¹ hypothesis violated: sum alpha_n appears to diverge");
}

void require_supported(const Run& r) {
  if (r.regime.kind == RegimeKind::Unsupported)
    refuse("regime refused: |beta_inf| = 1 (beta_inf = " + num(r.regime.beta_inf) +
           ") is outside the supported regimes |beta_inf| < 1 and |beta_inf| > 1");
}

const std::vector<std::complex<double>>& need_z(const Run& r) {
  if (r.z.empty()) throw ConfigError("command '" + r.command + "' needs --z", "z");
  return r.z;
}

const Grid& need_grid(const Run& r) {
  if (!r.grid) throw ConfigError("command '" + r.command + "' needs --grid lo:hi:step", "grid");
  return *r.grid;
}

void cmd_classify(Run& r) {
  const auto sa = r.regime.kind == RegimeKind::Unsupported ? std::optional<SelfAdjointness>{}
                                                            : std::optional{self_adjointness(r.lm.model, r.regime)};
  json out{{"model_hash", r.lm.hash},
           {"model", json::parse(r.lm.canonical)},
           {"regime", to_string(r.regime.kind)},
           {"beta_inf", r.regime.beta_inf},
           {"varkappa_inf", r.regime.varkappa_inf},
           {"carleman", r.regime.carleman},
           {"evidence", r.regime.evidence}};
  if (!r.regime.carleman && r.regime.kind != RegimeKind::Unsupported) {
    const auto d = ell1_diagnostics(r.lm.model, 4096);
    out["l1"] = {{"exponent_k", d.exponent_k},
                 {"exponent_beta", d.exponent_beta},
                 {"exponent_alpha", d.exponent_alpha},
                 {"k_violated", d.k_violated},
                 {"beta_violated", d.beta_violated},
                 {"alpha_violated", d.alpha_violated}};
  }
  if (r.regime.carleman) {
    const auto cd = condition_d(r.lm.model);
    out["condition_d"] = {{"holds", cd.holds}, {"evidence", cd.evidence}};
    if (!cd.holds) r.summary.warn("sum a_n^-3 (1 + |b_n|) diverges: " + cd.evidence);
  }
  if (sa) {
    const std::string v = sa->verdict == Verdict::DeficiencyOneOne ? "deficiency (1,1)" : "essentially self-adjoint";
    out["verdict"] = to_string(sa->verdict);
    out["verdict_evidence"] = sa->evidence;
    r.summary.lines.push_back("verdict: " + to_string(r.regime.kind) + ", " + v);
  }
  l1_warnings(r);
  out["warnings"] = r.summary.warnings;
  r.artifact << out.dump(2) << "\n";
  require_supported(r);
}

void solution_rows(Run& r, const CoefficientModel& m, const SolutionSeq& F, std::complex<double> z,
                   const std::vector<std::complex<double>>& rescaled, const std::vector<std::complex<double>>& pred,
                   long n_hi) {
  for (long n = 0; n <= n_hi; ++n) {
    const ScaledComplex v = F.at(n);
    const std::complex<double> rs = n < long(rescaled.size()) ? rescaled[n] : std::complex<double>(NAN, NAN);
    const std::complex<double> pr = n < long(pred.size()) ? pred[n] : std::complex<double>(NAN, NAN);
    const double res = n >= 1 && n < n_hi ? recurrence_residual(m, F, n) : NAN;
    r.artifact << num(z.real()) << ',' << num(z.imag()) << ',' << n << ',' << num(double(v.log10_abs())) << ','
               << num(double(v.arg())) << ',' << num(rs.real()) << ',' << num(rs.imag()) << ',' << num(pr.real())
               << ',' << num(pr.imag()) << ',' << num(res) << '\n';
  }
}

const char* kSolutionHeader = "z_re,z_im,n,log10_abs,arg,rescaled_re,rescaled_im,prediction_re,prediction_im,residual\n";

void cmd_jost(Run& r) {
  require_supported(r);
  l1_warnings(r);
  r.artifact << kSolutionHeader;
  for (const auto z : need_z(r)) {
    const auto b = solve_jost(r.lm.model, r.regime, z, r.jost);
    r.summary.warn_all(b.warnings);
    const auto f = as_solution(b);
    // rescaled: u_n = f_n / Q_n, prediction: its limit 1
    std::vector<std::complex<double>> u(b.u.begin(), b.u.end()), one(b.u.size(), 1.0);
    solution_rows(r, r.lm.model, f, z, u, one, b.n_trunc);
    std::ostringstream os;
    os << "z=" << cnum(z) << ": Omega=" << cnum(b.omega().value())
       << " precision_bits=" << b.precision_bits;
    r.summary.lines.push_back(os.str());
    r.summary.check("recurrence residual", b.cert.recurrence_residual < r.jost.tol,
                    num(b.cert.recurrence_residual) + " < " + num(r.jost.tol));
    r.summary.check("u-equation residual", b.cert.ueq_residual < 10 * r.jost.tol,
                    num(b.cert.ueq_residual) + " < 10 tol");
    if (b.cert.hypothesis_violated)
      r.summary.lines.push_back("a priori bound: not available, G_max R_tail = " +
                                num(b.cert.g_max * b.cert.r_tail));
    else
      r.summary.check("a priori bound", b.cert.g_max * b.cert.r_tail < 0.5,
                      "G_max R_tail = " + num(b.cert.g_max * b.cert.r_tail));
  }
}

// P_n(z) with its asymptotic model.
void cmd_poly(Run& r) {
  require_supported(r);
  l1_warnings(r);
  const auto& m = r.lm.model;
  r.artifact << kSolutionHeader;
  const long N = r.n;
  // the fit needs a few dozen indices even when only the first few rows are printed
  const long M = std::max(N, 64L);
  for (const auto z : need_z(r)) {
    const auto P = first_kind(m, z, M + 1);
    std::vector<std::complex<double>> rs(M + 1, NAN), pr(M + 1, NAN);
    if (r.regime.carleman) {
      if (r.regime.kind == RegimeKind::CarlemanSub && z.imag() == 0) {
        const auto rep = carleman_poly_asym(m, r.regime, z.real(), N, r.jost);
        for (std::size_t i = 0; i < rep.n.size(); ++i) rs[rep.n[i]] = rep.rescaled[i], pr[rep.n[i]] = rep.predicted[i];
        r.summary.check("sine model residual at N", rep.residual.back() < 0.05, num(rep.residual.back()));
      } else {
        r.summary.warn("no asymptotic model tabulated for Carleman P_n at z = " + cnum(z));
      }
      solution_rows(r, m, P, z, rs, pr, N);
      continue;
    }
    JostOptions o = r.jost;
    o.n_trunc = std::max(o.n_trunc, M + 2);
    const auto fb = jost_f(m, r.regime, z, o);
    r.summary.warn_all(fb.warnings);
    AnsatzTable tab(m, r.regime, M + 2);
    const long lo = std::max(1L, M / 2);
    AsymptoticReport rep;
    if (r.regime.oscillating()) {
      const auto fc = conjugate_jost(m, r.regime, z, o);
      const auto fit = fit_k_coeffs(m, r.regime, P, as_solution(fb), as_solution(fc));
      rep = verify_asymptotics(m, tab, P, AsymptoticForm::Oscillating, {fit.k_plus, fit.k_minus, 0}, 1, M);
      r.summary.lines.push_back("k_plus=" + cnum(fit.k_plus) + " kappa=" + num(fit.kappa) + " eta=" + num(fit.eta));
    } else {
      const double s = r.regime.sign_inf, root = std::sqrt(r.regime.beta_inf * r.regime.beta_inf - 1);
      const std::complex<double> limit = -fb.omega().value() * s * r.regime.varkappa_inf / (2 * root);
      rep = verify_asymptotics(m, tab, P, AsymptoticForm::Growing, {0, 0, limit}, 1, M);
      r.summary.lines.push_back("predicted limit=" + cnum(limit));
    }
    for (std::size_t i = 0; i < rep.n.size(); ++i) rs[rep.n[i]] = rep.rescaled[i], pr[rep.n[i]] = rep.predicted[i];
    double head = 0, tail = 0;
    for (std::size_t i = 0; i < rep.n.size(); ++i)
      (rep.n[i] >= lo ? tail : head) = std::max(rep.n[i] >= lo ? tail : head, rep.n[i] >= lo / 2 ? rep.residual[i] : 0);
    r.summary.lines.push_back("asymptotic residual: sup over [N/4, N/2) " + num(head) + ", over [N/2, N] " + num(tail));
    r.summary.check("asymptotic residual decreasing", tail < head || tail < 1e-12,
                    tail < head ? num(tail) + " < " + num(head) : "at rounding level");
    solution_rows(r, m, P, z, rs, pr, N);
  }
}

// Fitted asymptotic constants of P and P~.
void cmd_asym(Run& r) {
  require_supported(r);
  l1_warnings(r);
  if (r.regime.carleman) refuse("asym: use poly or carleman-density for Carleman models");
  const auto& m = r.lm.model;
  json rows = json::array();
  for (const auto z : need_z(r)) {
    const auto fb = jost_f(m, r.regime, z, r.jost);
    r.summary.warn_all(fb.warnings);
    const auto f = as_solution(fb);
    json row{{"z", cjson(z)}, {"omega", cjson(fb.omega().value())}};
    if (r.regime.oscillating()) {
      const auto fc = as_solution(conjugate_jost(m, r.regime, z, r.jost));
      const long N = r.jost.n_trunc;
      for (const auto& [name, F] : {std::pair{"P", first_kind(m, z, N)}, std::pair{"Pt", second_kind(m, z, N)}}) {
        const auto fit = fit_k_coeffs(m, r.regime, F, f, fc);
        row[name] = {{"k_plus", cjson(fit.k_plus)}, {"k_minus", cjson(fit.k_minus)}, {"kappa", fit.kappa},
                     {"eta", fit.eta},          {"n_star", fit.n_star}};
        row["wronskian_ff"] = cjson(fit.wronskian_ff);
        row["wronskian_theory"] = cjson(fit.wronskian_theory);
      }
      const double gap = std::abs(row["wronskian_ff"][0].get<double>() - row["wronskian_theory"][0].get<double>()) +
                         std::abs(row["wronskian_ff"][1].get<double>() - row["wronskian_theory"][1].get<double>());
      r.summary.check("{f, f~} against its limit", gap < 1e-6 * std::abs(row["wronskian_theory"][1].get<double>()),
                      num(gap));
    } else {
      const auto g = growing_g(m, f, 1);
      AnsatzTable tab(m, r.regime, fb.n_trunc);
      const double s = r.regime.sign_inf, root = std::sqrt(r.regime.beta_inf * r.regime.beta_inf - 1);
      const std::complex<double> limit = s * r.regime.varkappa_inf / (2 * root);
      const long hi = std::min(r.n, fb.n_trunc - 1);
      const auto rep = verify_asymptotics(m, tab, g, AsymptoticForm::Growing, {0, 0, limit}, hi, hi);
      const auto w = wronskian(m, f, g, hi / 2).value();
      row["g_limit"] = cjson(rep.rescaled.front());
      row["g_limit_theory"] = cjson(limit);
      row["wronskian_fg"] = cjson(w);
      r.summary.check("g limit at n=" + std::to_string(hi), rep.residual.front() < 1e-3, num(rep.residual.front()));
      r.summary.check("{f, g} = 1", std::abs(w - 1.0) < 1e-8, num(std::abs(w - 1.0)));
    }
    rows.push_back(row);
  }
  r.artifact << json{{"model_hash", r.lm.hash}, {"results", rows}, {"warnings", r.summary.warnings}}.dump(2) << "\n";
}

void require_esa_discrete(Run& r) {
  require_supported(r);
  if (r.regime.kind != RegimeKind::SuperCritical && r.regime.kind != RegimeKind::CarlemanSuper)
    refuse("regime refused: discrete spectrum requires |beta_inf| > 1, got " + to_string(r.regime.kind));
  const auto sa = self_adjointness(r.lm.model, r.regime);
  if (sa.verdict == Verdict::DeficiencyOneOne)
    refuse("regime refused: deficiency indices (1,1), eigenvalues depend on the self-adjoint extension (" +
           sa.evidence + ")");
}

void cmd_eig(Run& r) {
  require_esa_discrete(r);
  l1_warnings(r);
  const auto& m = r.lm.model;
  const Grid& g = need_grid(r);
  EigenOptions eo;
  eo.lo = g.lo, eo.hi = g.hi, eo.step = g.step;
  eo.jost = r.jost;
  const auto roots = find_eigenvalues(m, r.regime, eo);
  r.summary.warn_all(roots.warnings);

  // oracle section size: the stability rule on the eigenvalues below hi
  const int bits = std::max(r.bits, 128);
  long count = long(finite_section_eigs_in(m, 60, -INFINITY, g.hi, bits).size());
  if (count == 0) count = 1;
  const auto st = finite_section_stable(m, count, 60, 20, 1e-10, 400, bits);
  const auto oracle = finite_section_eigs_in(m, st.N, g.lo, g.hi, bits);

  json eigs = json::array(), series = json::array(), jost = json::array(), gaps = json::array(),
       omega_rel = json::array();
  double total = 0;
  for (const auto& root : roots.roots) {
    eigs.push_back(root.lambda);
    omega_rel.push_back(root.omega_rel);
    const auto sm = spectral_mass(m, r.regime, root.lambda, r.jost);
    series.push_back(sm.series);
    jost.push_back(sm.jost);
    total += sm.series;
    const double rel = std::abs(sm.jost - sm.series) / sm.series;
    r.summary.check("masses agree at " + num(root.lambda), rel < 1e-4, num(rel));
    double gap = INFINITY;
    for (double e : oracle) gap = std::min(gap, std::abs(e - root.lambda) / std::max(1.0, std::abs(e)));
    gaps.push_back(std::isfinite(gap) ? json(gap) : json(nullptr));
    r.summary.check("oracle match at " + num(root.lambda), gap < 1e-6, num(gap));
  }
  for (double e : oracle) {
    bool hit = false;
    for (const auto& root : roots.roots) hit |= std::abs(e - root.lambda) < 1e-6 * std::max(1.0, std::abs(e));
    if (!hit) r.summary.check("Omega root for oracle eigenvalue " + num(e), false, "missing");
  }
  r.summary.check("sum of masses <= 1", total <= 1 + 1e-6, num(total));
  r.summary.lines.push_back("eigenvalues found: " + std::to_string(roots.roots.size()) +
                            ", oracle N = " + std::to_string(st.N));
  json out{{"model_hash", r.lm.hash},
           {"interval", {g.lo, g.hi}},
           {"eigenvalues", eigs},
           {"omega_rel", omega_rel},
           {"masses", {{"series", series}, {"jost", jost}}},
           {"oracle", {{"N", st.N}, {"eigs", oracle}, {"gaps", gaps}}},
           {"verdict", to_string(self_adjointness(m, r.regime).verdict)},
           {"warnings", r.summary.warnings}};
  r.artifact << out.dump(2) << "\n";
}

void cmd_mass(Run& r) {
  require_esa_discrete(r);
  json rows = json::array();
  for (const auto z : need_z(r)) {
    if (z.imag() != 0) throw ConfigError("mass: lambda must be real", "z");
    const auto sm = spectral_mass(r.lm.model, r.regime, z.real(), r.jost);
    const auto om = jost_function(r.lm.model, r.regime, z.real(), r.jost);
    const double omega_rel = std::exp(double(om.omega.log_abs())) / om.scale;
    rows.push_back({{"lambda", z.real()},
                    {"series", sm.series},
                    {"jost", sm.jost},
                    {"tail_bound", sm.tail_bound},
                    {"n_series", sm.n_series},
                    {"stencil_gap", sm.stencil_gap},
                    {"omega_rel", omega_rel}});
    r.summary.check("lambda = " + num(z.real()) + " is an eigenvalue", omega_rel < 1e-6,
                    "|Omega| relative to its envelope " + num(omega_rel));
    if (omega_rel >= 1e-6) continue;
    const double rel = std::abs(sm.jost - sm.series) / sm.series;
    r.summary.check("masses agree at " + num(z.real()), rel < 1e-4, num(rel));
  }
  r.artifact << json{{"model_hash", r.lm.hash}, {"masses", rows}, {"warnings", r.summary.warnings}}.dump(2) << "\n";
}

void cmd_identity(Run& r) {
  require_supported(r);
  l1_warnings(r);
  if (r.regime.kind != RegimeKind::SubCritical) refuse("identity: requires the SubCritical regime");
  json rows = json::array();
  for (const auto z : need_z(r)) {
    if (z.imag() == 0) throw ConfigError("identity: Im z must be nonzero", "z");
    const auto id = identity_thm_kappa(r.lm.model, r.regime, z, r.jost);
    rows.push_back({{"z", cjson(z)},
                    {"kappa_z", id.kappa_z},
                    {"kappa_zbar", id.kappa_zbar},
                    {"lhs", id.lhs},
                    {"rhs", id.rhs},
                    {"sum_p2", id.sum_p2},
                    {"relative_gap", id.relative_gap}});
    r.summary.lines.push_back("lhs=" + num(id.lhs) + " rhs=" + num(id.rhs));
    r.summary.check("identity gap", id.relative_gap < 1e-2, num(id.relative_gap));
    const bool order = z.imag() > 0 ? id.kappa_z < id.kappa_zbar : id.kappa_z > id.kappa_zbar;
    r.summary.check("kappa ordering", order, "kappa(z)=" + num(id.kappa_z) + ", kappa(conj z)=" + num(id.kappa_zbar));
  }
  r.artifact << json{{"model_hash", r.lm.hash}, {"identity", rows}, {"warnings", r.summary.warnings}}.dump(2)
             << "\n";
}

void cmd_density(Run& r) {
  require_supported(r);
  if (r.regime.kind != RegimeKind::CarlemanSub) refuse("carleman-density: requires the CarlemanSub regime");
  const auto cd = condition_d(r.lm.model);
  if (!cd.holds) r.summary.warn("sum a_n^-3 (1 + |b_n|) diverges: " + cd.evidence);
  const auto pts = ac_spectral_density(r.lm.model, r.regime, need_grid(r).points(), r.jost);
  r.artifact << "lambda,omega_abs,density\n";
  bool positive = true;
  for (const auto& p : pts) {
    positive &= p.density > 0;
    r.artifact << num(p.lambda) << ',' << num(p.omega_abs) << ',' << num(p.density) << '\n';
  }
  r.summary.check("density positive", positive, std::to_string(pts.size()) + " points");
}

int default_bits() {
  if (const char* env = std::getenv("JACOBI_PRECISION_BITS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != 0 || v <= 0) throw ConfigError("JACOBI_PRECISION_BITS must be a positive integer");
    return int(v);
  }
  return 53;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jost solutions, orthogonal polynomials and spectral data of Jacobi matrices"};
  std::string config, model, cmd, grid, out;
  std::vector<std::string> zs;
  long n = 0, n_trunc = 0;
  double tol = 0;
  int bits = 0;
  app.add_option("--config", config, "Experiment document (JSON); flags override its fields");
  app.add_option("--model", model, "Model document (JSON)");
  app.add_option("--cmd", cmd, "classify | jost | poly | asym | eig | mass | identity | carleman-density");
  app.add_option("--z", zs, "Spectral parameter, e.g. 1+1i (repeatable)");
  app.add_option("--grid", grid, "Real grid lo:hi:step");
  app.add_option("--n", n, "Largest index for poly and asym");
  app.add_option("--n-trunc", n_trunc, "Truncation index of the Volterra solve");
  app.add_option("--tol", tol, "Residual tolerance");
  app.add_option("--bits", bits, "Working precision in bits (default $JACOBI_PRECISION_BITS or 53)");
  app.add_option("--out", out, "Artifact path (default stdout)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  Run r;
  try {
    ExperimentConfig cfg;
    if (!config.empty()) cfg = load_experiment(config);
    if (!model.empty()) cfg.model = load_model(model);
    if (!cfg.model) throw ConfigError("no model given (--model or the experiment's \"model\" field)", "model");
    if (!cmd.empty()) cfg.command = cmd;
    if (!zs.empty()) {
      cfg.z.clear();
      for (const auto& s : zs) cfg.z.push_back(parse_complex(s));
    }
    if (!grid.empty()) cfg.grid = parse_grid(grid);
    for (auto [flag, v] : {std::pair{"--n", double(n)}, std::pair{"--n-trunc", double(n_trunc)},
                           std::pair{"--tol", tol}, std::pair{"--bits", double(bits)}})
      if (app.count(flag) && !(v > 0)) throw ConfigError(std::string(flag) + " must be positive", flag + 2);
    if (n > 0) cfg.n = n;
    if (n_trunc > 0) cfg.n_trunc = n_trunc;
    if (tol > 0) cfg.tol = tol;
    if (bits > 0) cfg.precision_bits = bits;
    if (!out.empty()) cfg.out = out;

    r.lm = *cfg.model;
    r.command = cfg.command;
    r.z = cfg.z;
    r.grid = cfg.grid;
    if (cfg.n > 0) r.n = cfg.n;
    if (cfg.n_trunc > 0) r.jost.n_trunc = cfg.n_trunc;
    if (cfg.tol > 0) r.jost.tol = cfg.tol;
    r.bits = cfg.precision_bits > 0 ? cfg.precision_bits : default_bits();
    r.jost.precision_bits = std::min(r.bits, 64);
    r.summary.command = r.command;
    if (r.bits > 64) r.summary.warn("Jost solves run at 64 bits; the requested " + std::to_string(r.bits) +
                                    " bits apply to the finite-section oracle");

    r.regime = classify(r.lm.model);
    regime_lines(r);
    static const std::map<std::string, void (*)(Run&)> commands{
        {"classify", cmd_classify}, {"jost", cmd_jost}, {"poly", cmd_poly},         {"asym", cmd_asym},
        {"eig", cmd_eig},           {"mass", cmd_mass}, {"identity", cmd_identity}, {"carleman-density", cmd_density}};
    const auto it = commands.find(r.command);
    if (it == commands.end()) throw ConfigError("unknown command '" + r.command + "'", "command");
    it->second(r);

    if (cfg.out.empty()) {
      std::cout << r.artifact.str();
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) throw ConfigError("cannot write " + cfg.out, "out");
      f << r.artifact.str();
    }
    r.summary.print(std::cerr);
    return r.summary.ok() ? kOk : kConvergence;
  } catch (const ConfigError& e) {
    std::cerr << "config error";
    if (!e.field().empty()) std::cerr << " in field '" << e.field() << "'";
    if (e.line() > 0) std::cerr << " (line " << e.line() << ")";
    std::cerr << ": " << e.what() << "\n";
    return kConfig;
  } catch (const RegimeMismatch& e) {
    r.summary.print(std::cerr, "REFUSED");
    std::cerr << "refused: " << e.what() << "\n";
    return kRegime;
  } catch (const Error& e) {
    r.summary.print(std::cerr, "FAILED");
    std::cerr << "failed: " << e.what() << "\n";
    return kConvergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  }
}
