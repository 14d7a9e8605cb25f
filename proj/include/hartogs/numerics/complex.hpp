#pragma once

// Complex numbers over an arbitrary real-like scalar R (double or a jet).
// std::complex<T> is unspecified for non-floating T, hence this small type.

#include <array>
#include <cmath>
#include <complex>
#include <type_traits>
#include <vector>

#include "hartogs/errors.hpp"
#include "hartogs/numerics/jet.hpp"

namespace hartogs {

using complex = std::complex<double>;
using CVector = std::vector<complex>;

template <typename R>
struct Cx {
  R re{};
  R im{};

  Cx() : re(0.0), im(0.0) {}
  Cx(const R& r) : re(r), im(0.0) {}  // NOLINT
  Cx(const R& r, const R& i) : re(r), im(i) {}
  template <typename S>
    requires std::is_arithmetic_v<S>
  Cx(S r) : re(static_cast<double>(r)), im(0.0) {}  // NOLINT
  explicit Cx(const complex& z)
    requires(!std::is_same_v<R, double>)
      : re(z.real()), im(z.imag()) {}
  Cx(const complex& z)  // NOLINT
    requires std::is_same_v<R, double>
      : re(z.real()), im(z.imag()) {}

  Cx& operator+=(const Cx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Cx& operator-=(const Cx& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Cx operator-() const { return {-re, -im}; }
};

template <typename R>
Cx<R> operator+(Cx<R> a, const Cx<R>& b) {
  return a += b;
}
template <typename R>
Cx<R> operator-(Cx<R> a, const Cx<R>& b) {
  return a -= b;
}
template <typename R>
Cx<R> operator*(const Cx<R>& a, const Cx<R>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <typename R>
Cx<R> operator*(const Cx<R>& a, const R& s) {
  return {a.re * s, a.im * s};
}
template <typename R>
Cx<R> operator*(const R& s, const Cx<R>& a) {
  return {a.re * s, a.im * s};
}
template <typename R>
  requires(!std::is_same_v<R, double>)
Cx<R> operator*(const Cx<R>& a, double s) {
  return {a.re * s, a.im * s};
}
template <typename R>
  requires(!std::is_same_v<R, double>)
Cx<R> operator*(double s, const Cx<R>& a) {
  return {a.re * s, a.im * s};
}
template <typename R>
  requires(!std::is_same_v<R, double>)
Cx<R> operator*(const Cx<R>& a, const complex& s) {
  return {a.re * s.real() - a.im * s.imag(), a.re * s.imag() + a.im * s.real()};
}
template <typename R>
  requires(!std::is_same_v<R, double>)
Cx<R> operator*(const complex& s, const Cx<R>& a) {
  return a * s;
}

template <typename R>
Cx<R> conj(const Cx<R>& a) {
  return {a.re, -a.im};
}

/// |a|^2 as a real scalar.
template <typename R>
R abs2(const Cx<R>& a) {
  return a.re * a.re + a.im * a.im;
}

template <typename R>
Cx<R> operator/(const Cx<R>& a, const Cx<R>& b) {
  const R inv = reciprocal(abs2(b));
  return (a * conj(b)) * inv;
}
template <typename R>
Cx<R> operator/(const Cx<R>& a, const R& s) {
  const R inv = reciprocal(s);
  return a * inv;
}

template <typename R>
double pivot_magnitude(const Cx<R>& a) {
  return std::hypot(scalar_value(a.re), scalar_value(a.im));
}
inline double pivot_magnitude(const complex& a) { return std::abs(a); }
inline double pivot_magnitude(double a) { return std::abs(a); }

/// Principal power c^p (branch cut on the negative real axis).
inline Cx<double> cpow(const Cx<double>& c, double p) { return Cx<double>(std::pow(complex(c.re, c.im), p)); }

/// Principal power of a complex jet: the Taylor series of c^p about the
/// value of c, composed with the nilpotent part.
template <int D, int K>
Cx<Jet<double, D, K>> cpow(const Cx<Jet<double, D, K>>& c, double p) {
  using J = Jet<double, D, K>;
  const complex c0(c.re.value(), c.im.value());
  if (c0 == complex(0.0)) throw DomainError("cpow: zero base");
  const Cx<J> h(c.re.infinitesimal(), c.im.infinitesimal());
  std::array<complex, K + 1> a{};
  double binom = 1.0;
  for (int k = 0; k <= K; ++k) {
    a[k] = binom * std::pow(c0, p - k);
    binom *= (p - k) / (k + 1.0);
  }
  Cx<J> r(a[K]);
  for (int k = K - 1; k >= 0; --k) r = r * h + Cx<J>(a[k]);
  return r;
}

inline complex to_complex(const Cx<double>& a) { return {a.re, a.im}; }

/// Lifts a numeric complex vector into the R-valued complex type.
template <typename R>
std::vector<Cx<R>> lift(const CVector& v) {
  std::vector<Cx<R>> out;
  out.reserve(v.size());
  for (const auto& z : v) out.emplace_back(R(z.real()), R(z.imag()));
  return out;
}

}  // namespace hartogs
