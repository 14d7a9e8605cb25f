#pragma once

// Truncated multivariate Taylor arithmetic.
//
// A Jet<T, D, K> carries the Taylor coefficients f^(alpha)(x0) / alpha! of a
// function of D seeded directions for every multi-index |alpha| <= K. Since the
// non-constant part of a jet is nilpotent of index K + 1, every elementary
// function is propagated exactly (to rounding) by a finite Taylor polynomial.
// The coefficient type T may itself be a jet, which gives higher mixed
// derivatives by nesting (used for fourth-order curvature terms).

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <type_traits>

#include "hartogs/errors.hpp"

namespace hartogs {

namespace detail {

constexpr int binomial_int(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<int>(r);
}

template <int D, int K>
struct MultiIndexTable {
  static_assert(D >= 1 && D <= 8, "jets support 1..8 directions");
  static_assert(K >= 1 && K <= 4, "jets support orders 1..4");

  static constexpr int kSize = binomial_int(D + K, K);

  struct Product {
    std::int16_t lhs;
    std::int16_t rhs;
    std::int16_t out;
  };

  static constexpr int count_products() {
    MultiIndexTable<D, K> t(0);
    int n = 0;
    for (int p = 0; p < kSize; ++p)
      for (int q = 0; q < kSize; ++q)
        if (t.degree[p] + t.degree[q] <= K) ++n;
    return n;
  }

  std::array<std::array<std::int8_t, D>, kSize> alpha{};
  std::array<int, kSize> degree{};
  std::array<double, kSize> factorial{};

  // Enumerates multi-indices by degree; within a degree the first component
  // varies fastest, so entry 1 + d is the unit index e_d.
  constexpr explicit MultiIndexTable(int) {
    int next = 0;
    for (int deg = 0; deg <= K; ++deg) {
      std::array<int, D> a{};
      while (true) {
        int s = 0;
        for (int i = 0; i < D; ++i) s += a[i];
        if (s == deg) {
          double f = 1.0;
          for (int i = 0; i < D; ++i) {
            alpha[next][i] = static_cast<std::int8_t>(a[i]);
            for (int j = 2; j <= a[i]; ++j) f *= j;
          }
          degree[next] = deg;
          factorial[next] = f;
          ++next;
        }
        int i = 0;
        while (i < D && a[i] == K) {
          a[i] = 0;
          ++i;
        }
        if (i == D) break;
        ++a[i];
      }
    }
  }

  constexpr int index_of(const std::array<int, D>& a) const {
    for (int p = 0; p < kSize; ++p) {
      bool same = true;
      for (int i = 0; i < D; ++i) same = same && alpha[p][i] == a[i];
      if (same) return p;
    }
    return -1;
  }
};

template <int D, int K>
struct JetTables {
  using Table = MultiIndexTable<D, K>;
  static constexpr int kSize = Table::kSize;
  static constexpr int kProducts = Table::count_products();

  static constexpr Table table{0};

  static constexpr std::array<typename Table::Product, kProducts> make_products() {
    std::array<typename Table::Product, kProducts> out{};
    int n = 0;
    for (int p = 0; p < kSize; ++p) {
      for (int q = 0; q < kSize; ++q) {
        if (table.degree[p] + table.degree[q] > K) continue;
        std::array<int, D> s{};
        for (int i = 0; i < D; ++i) s[i] = table.alpha[p][i] + table.alpha[q][i];
        out[n++] = {static_cast<std::int16_t>(p), static_cast<std::int16_t>(q),
                    static_cast<std::int16_t>(table.index_of(s))};
      }
    }
    return out;
  }

  static constexpr auto products = make_products();
};

}  // namespace detail

template <typename T, int D, int K = 3>
class Jet;

template <typename T>
struct is_jet : std::false_type {};
template <typename T, int D, int K>
struct is_jet<Jet<T, D, K>> : std::true_type {};
template <typename T>
inline constexpr bool is_jet_v = is_jet<T>::value;

template <typename T, int D, int K>
class Jet {
 public:
  using value_type = T;
  static constexpr int kDirections = D;
  static constexpr int kOrder = K;
  static constexpr int kSize = detail::JetTables<D, K>::kSize;

  Jet() : c_{} {}
  Jet(const T& v) : c_{} { c_[0] = v; }  // NOLINT: constants promote implicitly
  template <typename S>
    requires(std::is_arithmetic_v<S> && !std::is_same_v<S, T>)
  Jet(S v) : c_{} {  // NOLINT
    c_[0] = T(static_cast<double>(v));
  }

  /// The jet of the coordinate function value + t_direction.
  static Jet variable(const T& value, int direction) {
    if (direction < 0 || direction >= D) throw DimensionError("jet direction out of range");
    Jet j(value);
    j.c_[1 + direction] = T(1.0);
    return j;
  }

  const T& value() const { return c_[0]; }
  T& value() { return c_[0]; }

  const T& operator[](int index) const { return c_[index]; }
  T& operator[](int index) { return c_[index]; }

  static constexpr const auto& table() { return detail::JetTables<D, K>::table; }

  /// Taylor coefficient f^(alpha) / alpha!; zero for |alpha| > K.
  T coefficient(const std::array<int, D>& alpha) const {
    int idx = table().index_of(alpha);
    if (idx < 0) return T(0.0);
    return c_[idx];
  }

  /// Partial derivative f^(alpha) along the seeded directions.
  T derivative(const std::array<int, D>& alpha) const {
    int idx = table().index_of(alpha);
    if (idx < 0) return T(0.0);
    return c_[idx] * table().factorial[idx];
  }

  Jet& operator+=(const Jet& o) {
    for (int i = 0; i < kSize; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int i = 0; i < kSize; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Jet& operator+=(const T& s) {
    c_[0] += s;
    return *this;
  }
  Jet& operator-=(const T& s) {
    c_[0] -= s;
    return *this;
  }
  Jet& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    *this = *this * o;
    return *this;
  }

  Jet operator-() const {
    Jet r;
    for (int i = 0; i < kSize; ++i) r.c_[i] = -c_[i];
    return r;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (const auto& p : detail::JetTables<D, K>::products) r.c_[p.out] += a.c_[p.lhs] * b.c_[p.rhs];
    return r;
  }

  /// The part with vanishing constant term.
  Jet infinitesimal() const {
    Jet h = *this;
    h.c_[0] = T(0.0);
    return h;
  }

 private:
  std::array<T, kSize> c_;
};

template <typename T, int D, int K>
Jet<T, D, K> operator+(Jet<T, D, K> a, const Jet<T, D, K>& b) { return a += b; }
template <typename T, int D, int K>
Jet<T, D, K> operator-(Jet<T, D, K> a, const Jet<T, D, K>& b) { return a -= b; }

template <typename T, int D, int K>
Jet<T, D, K> operator+(Jet<T, D, K> a, const T& s) { return a += s; }
template <typename T, int D, int K>
Jet<T, D, K> operator+(const T& s, Jet<T, D, K> a) { return a += s; }
template <typename T, int D, int K>
Jet<T, D, K> operator-(Jet<T, D, K> a, const T& s) { return a -= s; }
template <typename T, int D, int K>
Jet<T, D, K> operator-(const T& s, const Jet<T, D, K>& a) { return (-a) += s; }
template <typename T, int D, int K>
Jet<T, D, K> operator*(Jet<T, D, K> a, const T& s) { return a *= s; }
template <typename T, int D, int K>
Jet<T, D, K> operator*(const T& s, Jet<T, D, K> a) { return a *= s; }

template <typename T, int D, int K, typename S>
  requires(std::is_arithmetic_v<S> && !std::is_same_v<S, T>)
Jet<T, D, K> operator+(Jet<T, D, K> a, S s) { return a += T(static_cast<double>(s)); }
template <typename T, int D, int K, typename S>
  requires(std::is_arithmetic_v<S> && !std::is_same_v<S, T>)
Jet<T, D, K> operator+(S s, Jet<T, D, K> a) { return a += T(static_cast<double>(s)); }
template <typename T, int D, int K, typename S>
  requires(std::is_arithmetic_v<S> && !std::is_same_v<S, T>)
Jet<T, D, K> operator-(Jet<T, D, K> a, S s) { return a -= T(static_cast<double>(s)); }
template <typename T, int D, int K, typename S>
  requires(std::is_arithmetic_v<S> && !std::is_same_v<S, T>)
Jet<T, D, K> operator-(S s, const Jet<T, D, K>& a) { return (-a) += T(static_cast<double>(s)); }
template <typename T, int D, int K, typename S>
  requires(std::is_arithmetic_v<S> && !std::is_same_v<S, T>)
Jet<T, D, K> operator*(Jet<T, D, K> a, S s) { return a *= T(static_cast<double>(s)); }
template <typename T, int D, int K, typename S>
  requires(std::is_arithmetic_v<S> && !std::is_same_v<S, T>)
Jet<T, D, K> operator*(S s, Jet<T, D, K> a) { return a *= T(static_cast<double>(s)); }

// Scalar-level helpers, overloaded for double and for jets.

inline double scalar_value(double x) { return x; }
template <typename T, int D, int K>
double scalar_value(const Jet<T, D, K>& j) {
  return scalar_value(j.value());
}

inline double reciprocal(double x) {
  if (x == 0.0) throw DomainError("reciprocal of zero");
  return 1.0 / x;
}

namespace detail {

// Sum_k a[k] h^k with h = f - f(0), exact for the truncated algebra.
template <typename T, int D, int K>
Jet<T, D, K> compose(const Jet<T, D, K>& f, const std::array<T, K + 1>& a) {
  const Jet<T, D, K> h = f.infinitesimal();
  Jet<T, D, K> r(a[K]);
  for (int k = K - 1; k >= 0; --k) r = r * h + a[k];
  return r;
}

}  // namespace detail

template <typename T, int D, int K>
Jet<T, D, K> reciprocal(const Jet<T, D, K>& f) {
  const T inv = reciprocal(f.value());
  std::array<T, K + 1> a;
  a[0] = inv;
  for (int k = 1; k <= K; ++k) a[k] = -(a[k - 1] * inv);
  return detail::compose(f, a);
}

template <typename T, int D, int K>
Jet<T, D, K> operator/(const Jet<T, D, K>& a, const Jet<T, D, K>& b) {
  return a * reciprocal(b);
}
template <typename T, int D, int K>
Jet<T, D, K> operator/(const Jet<T, D, K>& a, const T& s) {
  return a * reciprocal(s);
}
template <typename T, int D, int K>
Jet<T, D, K> operator/(const T& s, const Jet<T, D, K>& b) {
  return reciprocal(b) * s;
}
template <typename T, int D, int K, typename S>
  requires(std::is_arithmetic_v<S> && !std::is_same_v<S, T>)
Jet<T, D, K> operator/(const Jet<T, D, K>& a, S s) {
  return a * reciprocal(T(static_cast<double>(s)));
}
template <typename T, int D, int K, typename S>
  requires(std::is_arithmetic_v<S> && !std::is_same_v<S, T>)
Jet<T, D, K> operator/(S s, const Jet<T, D, K>& b) {
  return reciprocal(b) * T(static_cast<double>(s));
}

template <typename T, int D, int K>
Jet<T, D, K> log(const Jet<T, D, K>& f) {
  using std::log;
  if (!(scalar_value(f) > 0.0)) throw DomainError("log of a non-positive value");
  const T inv = reciprocal(f.value());
  std::array<T, K + 1> a;
  a[0] = log(f.value());
  T p = inv;
  for (int k = 1; k <= K; ++k) {
    a[k] = p * ((k % 2 == 1 ? 1.0 : -1.0) / k);
    p = p * inv;
  }
  return detail::compose(f, a);
}

template <typename T, int D, int K>
Jet<T, D, K> exp(const Jet<T, D, K>& f) {
  using std::exp;
  const T e = exp(f.value());
  std::array<T, K + 1> a;
  double fact = 1.0;
  for (int k = 0; k <= K; ++k) {
    if (k > 0) fact *= k;
    a[k] = e * (1.0 / fact);
  }
  return detail::compose(f, a);
}

/// f^p for real p; requires f > 0 unless p is a non-negative integer.
template <typename T, int D, int K>
Jet<T, D, K> pow(const Jet<T, D, K>& f, double p) {
  using std::pow;
  const double v = scalar_value(f);
  const bool integral = p == std::floor(p) && p >= 0.0;
  if (!integral && !(v > 0.0)) throw DomainError("non-integer power of a non-positive value");
  if (integral && p <= K) {
    Jet<T, D, K> r(T(1.0));
    for (int i = 0; i < static_cast<int>(p); ++i) r = r * f;
    return r;
  }
  // a[k] = binom(p, k) f0^(p - k)
  const T inv = reciprocal(f.value());
  std::array<T, K + 1> a;
  a[0] = pow(f.value(), p);
  T fk = a[0];
  double b = 1.0;
  for (int k = 1; k <= K; ++k) {
    b *= (p - (k - 1)) / k;
    fk = fk * inv;
    a[k] = fk * b;
  }
  return detail::compose(f, a);
}

template <typename T, int D, int K>
Jet<T, D, K> sqrt(const Jet<T, D, K>& f) {
  return pow(f, 0.5);
}

template <typename T, int D, int K>
std::ostream& operator<<(std::ostream& os, const Jet<T, D, K>& j) {
  os << "Jet[" << j.value();
  for (int i = 1; i < Jet<T, D, K>::kSize; ++i) os << ", " << j[i];
  return os << "]";
}

}  // namespace hartogs
