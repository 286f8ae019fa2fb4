#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace jacobi {

/// a_n = gamma * j^p with j = max(n + shift, 1).
struct PowerLaw {
  double gamma = 1;
  double p = 2;
  double shift = 0;
};

/// a_n = gamma * x^n.
struct Geometric {
  double gamma = 1;
  double x = 2;
};

/// a_n = gamma * x^(n^q).
struct Stretched {
  double gamma = 1;
  double x = 2;
  double q = 1;
};

/// a_n = j^p (1 + c_odd / j) for odd n and j^p (1 + c_even / j) for even n, j = max(n, 1).
struct ParityPerturbed {
  double p = 2;
  double c_odd = 1;
  double c_even = -1;
};

/// b_n = 0.
struct ZeroDiagonal {};

/// b_n = delta * j^q, j being the base index of the a-family.
struct PowerDiagonal {
  double delta = 1;
  double q = 1;
};

/// b_n = delta * x^n.
struct ExponentialDiagonal {
  double delta = 1;
  double x = 2;
};

/// b_n = -2 beta sqrt(a_{n-1} a_n), so that beta_n == beta for every n.
struct ConstantBeta {
  double beta = 0;
};

using AFamily = std::variant<PowerLaw, Geometric, Stretched, ParityPerturbed>;
using BFamily = std::variant<ZeroDiagonal, PowerDiagonal, ExponentialDiagonal, ConstantBeta>;

/// Off-diagonal a_n > 0 and diagonal b_n of a semi-infinite Jacobi matrix.
///
/// Everything is evaluated in long double from closed forms. Logarithms and
/// log-ratios are exposed separately because a_n itself overflows for the
/// fast-growing families. Index -1 follows the convention a_{-1} = 1/2; the
/// family formula evaluated at n = -1 is available as la_ext(-1) and is used
/// for beta_0, alpha_0 and varkappa_{-1}.
class CoefficientModel {
 public:
  CoefficientModel(AFamily a, BFamily b = ZeroDiagonal{});
  /// Explicit a_0..a_{L-1}, b_0..b_{L-1}; indices >= L come from `tail`.
  static CoefficientModel tabulated(std::vector<double> a, std::vector<double> b,
                                    std::optional<CoefficientModel> tail = std::nullopt);

  double a(long n) const;
  double b(long n) const;
  long double la(long n) const;      ///< ln a_n (n = -1 gives ln 1/2)
  long double la_ext(long n) const;  ///< family value of ln a_n, also at n = -1
  long double lr(long n) const;      ///< ln(a_{n+1} / a_n), n >= 0
  long double lr_ext(long n) const;  ///< as lr, with the family value of a_{-1} at n = -1

  long double beta(long n) const;        ///< -b_n / (2 sqrt(a_{n-1} a_n))
  long double alpha(long n) const;       ///< 1 / (2 sqrt(a_{n-1} a_n))
  long double varkappa(long n) const;    ///< sqrt(a_{n+1} / a_n), n >= -1
  long double k(long n) const;           ///< varkappa_{n-1} / varkappa_n
  long double b_over_a(long n) const;    ///< b_n / a_n
  long double a_prev_over_a(long n) const;  ///< a_{n-1} / a_n with a_{-1} = 1/2
  long double inv_a(long n) const;       ///< 1 / a_n

  /// Sign and natural log of |b_n|; sign 0 means b_n == 0.
  std::pair<int, long double> b_log(long n) const;
  /// Sign and natural log of |b_n / a_n|, without forming either factor.
  std::pair<int, long double> log_b_over_a(long n) const;

  const AFamily& a_family() const { return a_; }
  const BFamily& b_family() const { return b_; }
  bool is_tabulated() const { return static_cast<bool>(table_); }
  long table_size() const;
  const CoefficientModel* tail() const;

  /// Closed-form beta_infinity, if the families determine it.
  std::optional<double> beta_inf_closed() const;
  /// Closed-form varkappa_infinity (may be +inf), if the families determine it.
  std::optional<double> varkappa_inf_closed() const;
  /// Whether sum 1/a_n diverges; nullopt when undecidable.
  std::optional<bool> carleman_divergent() const;
  /// Whether sum a_n^{-1} rho^{2n} diverges, rho >= 1; nullopt when undecidable.
  std::optional<bool> weighted_series_divergent(double rho) const;

  std::string describe() const;

 private:
  struct Table;
  long double base_index(long n) const;
  long double la_family(long n) const;
  long double lr_family(long n) const;

  AFamily a_;
  BFamily b_;
  std::shared_ptr<const Table> table_;
};

enum class RegimeKind { SubCritical, SuperCritical, CarlemanSub, CarlemanSuper, Unsupported };

std::string to_string(RegimeKind k);

struct Regime {
  RegimeKind kind = RegimeKind::Unsupported;
  double beta_inf = 0;
  double varkappa_inf = 1;
  double theta_inf = 0;     ///< arccos beta_inf (oscillating branch)
  double vartheta_inf = 0;  ///< arccosh |beta_inf| (exponential branch)
  int sign_inf = 1;         ///< sgn beta_inf (+1 when beta_inf == 0)
  bool carleman = false;    ///< sum 1/a_n diverges
  std::vector<std::string> evidence;

  bool oscillating() const {
    return kind == RegimeKind::SubCritical || kind == RegimeKind::CarlemanSub;
  }
};

struct ClassifyOptions {
  long window = 256;
  double tol = 1e-8;
  long n_probe = 4096;
};

/// Limits beta_inf, varkappa_inf and the regime. Closed forms are used when
/// available, otherwise a Richardson estimate over the probe window.
Regime classify(const CoefficientModel& model, const ClassifyOptions& opts = {});

/// Partial sums of the summability conditions together with fitted decay exponents.
struct L1Diagnostics {
  long n_max = 0;
  std::vector<double> sum_k;       ///< sum |k_m - 1|, m = 2..n
  std::vector<double> sum_beta;    ///< sum |beta_m - beta_{m-1}|
  std::vector<double> sum_alpha;   ///< sum alpha_m
  std::vector<double> sum_inv_a;   ///< sum 1/a_m
  double exponent_k = 0, exponent_beta = 0, exponent_alpha = 0, exponent_inv_a = 0;
  bool k_violated = false, beta_violated = false, alpha_violated = false, carleman = false;
};

L1Diagnostics ell1_diagnostics(const CoefficientModel& model, long n_max);

enum class Verdict { EssentiallySelfAdjoint, DeficiencyOneOne };

std::string to_string(Verdict v);

struct SelfAdjointness {
  Verdict verdict = Verdict::EssentiallySelfAdjoint;
  std::string evidence;
};

/// Essential self-adjointness from the regime and the family tails.
SelfAdjointness self_adjointness(const CoefficientModel& model, const Regime& regime);

}  // namespace jacobi
