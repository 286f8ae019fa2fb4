#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace jacobi {

/// Complex number stored as mantissa * 2^exp2 so that sequences growing or
/// decaying like exp(n^2) stay representable. Rescaling by powers of two is
/// exact, so the mantissa carries full precision. Zero has mant == 0.
template <class T>
struct Scaled {
  std::complex<T> mant{};
  long exp2 = 0;

  Scaled() = default;
  Scaled(std::complex<T> m, long e = 0) : mant(m), exp2(e) { normalize(); }

  /// exp(log_mag) * unit, for magnitudes far outside the floating range.
  static Scaled from_log(T log_mag, std::complex<T> unit = T(1)) {
    if (!std::isfinite(log_mag)) {
      return log_mag < 0 ? Scaled{} : Scaled(std::complex<T>(std::numeric_limits<T>::infinity()));
    }
    const T ln2 = std::log(T(2));
    const T e = std::floor(log_mag / ln2);
    Scaled s;
    s.mant = unit * std::exp(log_mag - e * ln2);
    s.exp2 = static_cast<long>(e);
    s.normalize();
    return s;
  }

  void normalize() {
    const T m = std::max(std::abs(mant.real()), std::abs(mant.imag()));
    if (m == 0 || !std::isfinite(m)) {
      if (m == 0) exp2 = 0;
      return;
    }
    int e = 0;
    std::frexp(m, &e);
    mant = std::complex<T>(std::ldexp(mant.real(), -e), std::ldexp(mant.imag(), -e));
    exp2 += e;
  }

  bool is_zero() const { return mant == std::complex<T>(0); }
  bool is_finite() const { return std::isfinite(mant.real()) && std::isfinite(mant.imag()); }

  /// Natural log of the modulus; -inf for zero.
  T log_abs() const {
    if (is_zero()) return -std::numeric_limits<T>::infinity();
    return std::log(std::abs(mant)) + T(exp2) * std::log(T(2));
  }
  T log10_abs() const { return log_abs() / std::log(T(10)); }
  T arg() const { return std::arg(mant); }

  /// Plain value; overflows to inf or underflows to 0 when out of range.
  std::complex<T> value() const {
    const int e = static_cast<int>(std::clamp<long>(exp2, -100000, 100000));
    return {std::ldexp(mant.real(), e), std::ldexp(mant.imag(), e)};
  }

  Scaled conj() const {
    Scaled s = *this;
    s.mant = std::conj(mant);
    return s;
  }

  template <class U>
  Scaled<U> cast() const {
    Scaled<U> s;
    s.mant = std::complex<U>(static_cast<U>(mant.real()), static_cast<U>(mant.imag()));
    s.exp2 = exp2;
    return s;
  }

  friend Scaled operator*(const Scaled& a, const Scaled& b) {
    Scaled s;
    s.mant = a.mant * b.mant;
    s.exp2 = a.exp2 + b.exp2;
    s.normalize();
    return s;
  }
  friend Scaled operator*(const Scaled& a, std::complex<T> c) {
    Scaled s = a;
    s.mant *= c;
    s.normalize();
    return s;
  }
  friend Scaled operator*(std::complex<T> c, const Scaled& a) { return a * c; }
  friend Scaled operator/(const Scaled& a, const Scaled& b) {
    Scaled s;
    s.mant = a.mant / b.mant;
    s.exp2 = a.exp2 - b.exp2;
    s.normalize();
    return s;
  }
  friend Scaled operator+(const Scaled& a, const Scaled& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const long e = std::max(a.exp2, b.exp2);
    auto shift = [e](const Scaled& x) {
      const long d = x.exp2 - e;
      if (d < -std::numeric_limits<T>::digits - 4) return std::complex<T>(0);
      return std::complex<T>(std::ldexp(x.mant.real(), int(d)), std::ldexp(x.mant.imag(), int(d)));
    };
    return Scaled(shift(a) + shift(b), e);
  }
  friend Scaled operator-(const Scaled& a) {
    Scaled s = a;
    s.mant = -s.mant;
    return s;
  }
  friend Scaled operator-(const Scaled& a, const Scaled& b) { return a + (-b); }

  /// a / b as a plain complex number (the ratio must be in range).
  friend std::complex<T> ratio(const Scaled& a, const Scaled& b) { return (a / b).value(); }
};

using ScaledComplex = Scaled<double>;

}  // namespace jacobi
