#pragma once

// The isometric embedding of the Hartogs polydisk M_{Delta^r}(mu) into l^2,
// and the analysis of geodesics through the origin with linear support.
//
// Direction vectors xi are ordered like ambient coordinates: the r base
// components first, the fiber component last.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hartogs/domains.hpp"
#include "hartogs/errors.hpp"
#include "hartogs/geodesic.hpp"
#include "hartogs/hartogs.hpp"
#include "hartogs/numerics/complex.hpp"
#include "hartogs/numerics/special.hpp"

namespace hartogs {

struct Truncation {
  int k_max = 60;  ///< largest total base degree |k| (and largest psi exponent)
  int a_max = 60;  ///< largest fiber power

  void validate() const {
    if (k_max < 0 || a_max < 1) throw InvalidArgument("Truncation: need k_max >= 0 and a_max >= 1");
  }
};

namespace detail {

/// Calls f(k) for every multi-index k in N^r with |k| <= kmax, in
/// graded order (by |k|, then lexicographically).
template <typename F>
void for_each_multi_index(int r, int kmax, F&& f) {
  std::vector<int> k(static_cast<std::size_t>(r), 0);
  for (int deg = 0; deg <= kmax; ++deg) {
    // Compositions of deg into r parts.
    auto rec = [&](auto&& self, int pos, int left) -> void {
      if (pos == r - 1) {
        k[static_cast<std::size_t>(pos)] = left;
        f(static_cast<const std::vector<int>&>(k));
        return;
      }
      for (int v = left; v >= 0; --v) {
        k[static_cast<std::size_t>(pos)] = v;
        self(self, pos + 1, left - v);
      }
    };
    if (r == 0) {
      if (deg == 0) f(static_cast<const std::vector<int>&>(k));
      continue;
    }
    rec(rec, 0, deg);
  }
}

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline void check_hartogs_polydisk_point(int r, double mu, const CVector& z, complex w) {
  if (r < 1) throw InvalidArgument("Hartogs polydisk rank must be positive");
  if (z.size() != static_cast<std::size_t>(r)) throw DimensionError("base point length must equal r");
  if (!h_contains(HartogsSpec(DomainSpec::polydisk(r), mu), HartogsPoint{z, w}, 0.0))
    throw DomainError("point outside the Hartogs polydisk");
}

}  // namespace detail

/// (psi_1, ..., psi_r, Psi) truncated: psi_j = sqrt(mu) z_j^k / sqrt(k) for
/// 1 <= k <= k_max, then Psi_{k, a} = sqrt(prod_j binom(mu a + k_j - 1, k_j) / a) z^k w^a
/// for a = 1..a_max and |k| <= k_max.
inline CVector embed(int r, double mu, const CVector& z, complex w, const Truncation& trunc) {
  trunc.validate();
  detail::check_hartogs_polydisk_point(r, mu, z, w);
  CVector out;
  const double smu = std::sqrt(mu);
  for (int j = 0; j < r; ++j) {
    complex pw = 1.0;
    for (int k = 1; k <= trunc.k_max; ++k) {
      pw *= z[static_cast<std::size_t>(j)];
      out.push_back(smu * pw / std::sqrt(static_cast<double>(k)));
    }
  }
  complex wa = 1.0;
  for (int a = 1; a <= trunc.a_max; ++a) {
    wa *= w;
    detail::for_each_multi_index(r, trunc.k_max, [&](const std::vector<int>& k) {
      double coef = 1.0 / a;
      complex mono = wa;
      for (int j = 0; j < r; ++j) {
        coef *= gen_binomial(mu * a, static_cast<unsigned>(k[static_cast<std::size_t>(j)]));
        mono *= std::pow(z[static_cast<std::size_t>(j)], k[static_cast<std::size_t>(j)]);
      }
      out.push_back(std::sqrt(coef) * mono);
    });
  }
  return out;
}

/// |sum |f_j|^2 - Phi(z, w)| for the truncated embedding.
inline double norm_residual(int r, double mu, const CVector& z, complex w, const Truncation& trunc) {
  const CVector f = embed(r, mu, z, w, trunc);
  detail::CompensatedSum s;
  for (const auto& c : f) s.add(std::norm(c));
  const double phi = potential(HartogsSpec(DomainSpec::polydisk(r), mu), HartogsPoint{z, w});
  return std::abs(s.value() - phi);
}

enum class LinearClass { InBase, InFiber, HyperbolicSpace, Impossible };

inline const char* to_string(LinearClass c) {
  switch (c) {
    case LinearClass::InBase: return "InBase";
    case LinearClass::InFiber: return "InFiber";
    case LinearClass::HyperbolicSpace: return "HyperbolicSpace";
    case LinearClass::Impossible: return "Impossible";
  }
  return "?";
}

/// Constraints on gamma(t) = xi v(t) with v(0) = 0, v'(0) = 1 imposed by the
/// low-order Taylor coefficients of the geodesic equations.
struct LinearConstraints {
  double v2 = 0.0;  ///< forced value of v''(0)
  /// v'''(0) demanded by the fiber equation and by each nonzero base equation.
  double v3_fiber = 0.0;
  std::vector<double> v3_base;
  /// mu sum_j |xi_j|^2 = |xi_s|^2 for every s with xi_s != 0.
  bool muxi_consistent = false;
  /// Number of nonzero base components.
  int active_rank = 0;
  /// v^(5)(0) from the third derivative of the fiber equation in its
  /// simplified closed form (carrying 36 (mu - 1) |xi_s|^4) and from a base
  /// equation; consistent iff the two agree.
  double v5_fiber = 0.0;
  double v5_base = 0.0;
  bool fifth_order_consistent = false;
  /// v^(5)(0) from the fiber equation expanded term by term from the series,
  /// and whether it agrees with the base value.
  double v5_fiber_series = 0.0;
  bool fifth_order_series_consistent = false;
};

struct LinearGeodesicVerdict {
  LinearClass cls = LinearClass::Impossible;
  LinearConstraints constraints;
};

/// Classifies a geodesic of M_{Delta^r}(mu) through the origin with linear
/// support along xi (base components first, fiber last):
///   fiber component zero -> InBase; base part zero -> InFiber;
///   otherwise the first-derivative equations force mu sum |xi_j|^2 = |xi_s|^2
///   (else Impossible), hence equal moduli and r mu = 1, and the
///   fifth-order comparison leaves only mu = 1, i.e. r = mu = 1
///   (HyperbolicSpace); any other case is Impossible.
inline LinearGeodesicVerdict line_constraints(int r, double mu, const CVector& xi, double tol = 1e-12) {
  if (r < 1) throw InvalidArgument("line_constraints: r must be positive");
  if (!(mu > 0.0)) throw InvalidArgument("line_constraints: mu must be positive");
  if (xi.size() != static_cast<std::size_t>(r + 1)) throw DimensionError("line_constraints: xi must have length r + 1");
  if (norm2(xi) == 0.0) throw InvalidArgument("line_constraints: zero direction");

  const double scale = norm2(xi) * norm2(xi);
  const double f2 = std::norm(xi.back());
  std::vector<double> s2(static_cast<std::size_t>(r));
  double base2 = 0.0;
  for (int j = 0; j < r; ++j) {
    s2[static_cast<std::size_t>(j)] = std::norm(xi[static_cast<std::size_t>(j)]);
    base2 += s2[static_cast<std::size_t>(j)];
  }

  LinearGeodesicVerdict out;
  auto& c = out.constraints;
  c.v2 = 0.0;
  c.v3_fiber = -2.0 * (f2 + mu * base2);
  for (int j = 0; j < r; ++j)
    if (s2[static_cast<std::size_t>(j)] > tol * scale) {
      c.v3_base.push_back(-2.0 * (s2[static_cast<std::size_t>(j)] + f2));
      ++c.active_rank;
    }

  if (f2 <= tol * scale) {
    out.cls = LinearClass::InBase;
    return out;
  }
  if (base2 <= tol * scale) {
    out.cls = LinearClass::InFiber;
    return out;
  }

  c.muxi_consistent = true;
  double s_ref = 0.0;
  for (int j = 0; j < r; ++j) {
    const double sj = s2[static_cast<std::size_t>(j)];
    if (sj <= tol * scale) continue;
    if (std::abs(mu * base2 - sj) > 1e-10 * scale) c.muxi_consistent = false;
    s_ref = sj;
  }

  // Fifth order, evaluated with v'''(0) from a base equation.
  const double v3 = -2.0 * (f2 + s_ref);
  c.v5_base = 16.0 * (s_ref + f2) * (s_ref + f2);
  c.v5_fiber = 16.0 * (f2 + s_ref) * (f2 + s_ref) - 36.0 * (mu - 1.0) * s_ref * s_ref;
  c.fifth_order_consistent = std::abs(c.v5_fiber - c.v5_base) <= 1e-10 * scale;

  // Term-by-term fiber coefficient sums: S2 = |xi_0|^2 + mu sum |xi_j|^2,
  // S3 = |xi_0|^4 + 2 mu |xi_0|^2 sum |xi_j|^2 + (mu/2) sum |xi_j|^4 + (mu^2/2)(sum |xi_j|^2)^2.
  double quart = 0.0;
  for (double sj : s2) quart += sj * sj;
  const double S2 = f2 + mu * base2;
  const double S3 = f2 * f2 + 2.0 * mu * f2 * base2 + 0.5 * mu * quart + 0.5 * mu * mu * base2 * base2;
  c.v5_fiber_series = -26.0 * S2 * v3 - 36.0 * S3;
  c.fifth_order_series_consistent = std::abs(c.v5_fiber_series - c.v5_base) <= 1e-10 * scale;

  if (!c.muxi_consistent) {
    out.cls = LinearClass::Impossible;
    return out;
  }
  out.cls = (c.fifth_order_consistent && c.active_rank == 1 && std::abs(mu - 1.0) <= 1e-12) ? LinearClass::HyperbolicSpace
                                                                                             : LinearClass::Impossible;
  return out;
}

/// Largest Euclidean distance from the geodesic through the origin with
/// initial velocity xi to the complex line C xi, over [0, T].
inline double line_deviation(int r, double mu, const CVector& xi, double T, double tol = 1e-10) {
  if (xi.size() != static_cast<std::size_t>(r + 1)) throw DimensionError("line_deviation: xi must have length r + 1");
  const HartogsPotential phi(HartogsSpec(DomainSpec::polydisk(r), mu));
  const auto trace = geodesic_ivp(phi, CVector(xi.size(), 0.0), xi, T, tol);
  const double n2 = norm2(xi) * norm2(xi);
  double worst = 0.0;
  for (const auto& z : trace.positions) {
    const complex c = dot(z, xi) / n2;
    CVector res(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) res[i] = z[i] - c * xi[i];
    worst = std::max(worst, norm2(res));
  }
  return worst;
}

namespace detail {

/// Truncated power series in a real variable t with complex coefficients.
class Series {
 public:
  static constexpr int kDegree = 8;

  Series() { c_.fill(0.0); }
  static Series constant(complex a) {
    Series s;
    s.c_[0] = a;
    return s;
  }

  complex operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  complex& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

  friend Series operator*(const Series& a, const Series& b) {
    Series r;
    for (int i = 0; i <= kDegree; ++i)
      for (int j = 0; i + j <= kDegree; ++j) r.c_[static_cast<std::size_t>(i + j)] += a.c_[static_cast<std::size_t>(i)] * b.c_[static_cast<std::size_t>(j)];
    return r;
  }
  friend Series operator+(Series a, const Series& b) {
    for (int i = 0; i <= kDegree; ++i) a.c_[static_cast<std::size_t>(i)] += b.c_[static_cast<std::size_t>(i)];
    return a;
  }
  friend Series operator*(complex s, Series a) {
    for (auto& x : a.c_) x *= s;
    return a;
  }

  Series second_derivative() const {
    Series r;
    for (int i = 2; i <= kDegree; ++i) r.c_[static_cast<std::size_t>(i - 2)] = static_cast<double>(i * (i - 1)) * c_[static_cast<std::size_t>(i)];
    return r;
  }

  Series conj() const {
    Series r;
    for (int i = 0; i <= kDegree; ++i) r.c_[static_cast<std::size_t>(i)] = std::conj(c_[static_cast<std::size_t>(i)]);
    return r;
  }

 private:
  std::array<complex, kDegree + 1> c_;
};

inline Series power(const Series& s, int n) {
  Series r = Series::constant(1.0);
  for (int i = 0; i < n; ++i) r = r * s;
  return r;
}

}  // namespace detail

/// t-derivatives at t = 0 of the geodesic equations of M_{Delta^r}(mu)
/// restricted to gamma(t) = xi v(t):
///   base s:  mu conj(xi_s) sum_k |xi_s|^{2(k-1)} v^{k-1} (conj(v)^k)''
///            + conj(xi_s) sum_{k,a} k_s A^2 |xi^k|^2 / |xi_s|^2 |xi_0|^{2a} (conj(v)^n)'' v^{n-1},
///   fiber:   conj(xi_0) sum_{k,a} a A^2 |xi^k|^2 |xi_0|^{2a-2} (conj(v)^n)'' v^{n-1},
/// with n = |k| + a and a A^2 = prod_j binom(mu a + k_j - 1, k_j).
/// `v_derivs` holds v^(m)(0) for m = 0..5; the result is ordered like xi.
inline CVector series_residual(int r, double mu, const CVector& xi, const CVector& v_derivs, int order) {
  using detail::Series;
  if (r < 1) throw InvalidArgument("series_residual: r must be positive");
  if (xi.size() != static_cast<std::size_t>(r + 1)) throw DimensionError("series_residual: xi must have length r + 1");
  if (v_derivs.size() != 6) throw InvalidArgument("series_residual: need v^(m)(0) for m = 0..5");
  if (order < 0 || order > 3) throw InvalidArgument("series_residual: order must lie in 0..3");
  for (const auto& c : v_derivs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw InvalidArgument("series_residual: non-finite coefficient");

  Series v;
  double fact = 1.0;
  for (int m = 0; m <= 5; ++m) {
    if (m > 0) fact *= m;
    v[m] = v_derivs[static_cast<std::size_t>(m)] / fact;
  }
  const Series vbar = v.conj();

  // Truncation n = |k| + a <= 8 keeps every term reaching t^order at t = 0.
  constexpr int kMaxN = 8;
  std::vector<Series> term(kMaxN + 1);  // (conj(v)^n)'' v^(n-1)
  for (int n = 1; n <= kMaxN; ++n) term[static_cast<std::size_t>(n)] = power(vbar, n).second_derivative() * power(v, n - 1);

  const double f2 = std::norm(xi.back());
  std::vector<double> s2(static_cast<std::size_t>(r));
  for (int j = 0; j < r; ++j) s2[static_cast<std::size_t>(j)] = std::norm(xi[static_cast<std::size_t>(j)]);

  std::vector<Series> eq(static_cast<std::size_t>(r + 1));
  for (int a = 1; a <= kMaxN; ++a)
    detail::for_each_multi_index(r, kMaxN - a, [&](const std::vector<int>& k) {
      int n = a;
      double aA2 = 1.0;
      double mod = 1.0;
      for (int j = 0; j < r; ++j) {
        const int kj = k[static_cast<std::size_t>(j)];
        n += kj;
        aA2 *= gen_binomial(mu * a, static_cast<unsigned>(kj));
        mod *= std::pow(s2[static_cast<std::size_t>(j)], kj);
      }
      const Series& t = term[static_cast<std::size_t>(n)];
      eq[static_cast<std::size_t>(r)] = eq[static_cast<std::size_t>(r)] + complex(aA2 * mod * std::pow(f2, a - 1)) * t;
      for (int s = 0; s < r; ++s) {
        const int ks = k[static_cast<std::size_t>(s)];
        if (ks == 0) continue;
        // |xi^k|^2 / |xi_s|^2 written without dividing by |xi_s|^2.
        double m = 1.0;
        for (int j = 0; j < r; ++j) m *= std::pow(s2[static_cast<std::size_t>(j)], k[static_cast<std::size_t>(j)] - (j == s ? 1 : 0));
        eq[static_cast<std::size_t>(s)] = eq[static_cast<std::size_t>(s)] + complex(ks * (aA2 / a) * m * std::pow(f2, a)) * t;
      }
    });
  for (int s = 0; s < r; ++s)
    for (int k = 1; k <= kMaxN; ++k)
      eq[static_cast<std::size_t>(s)] =
          eq[static_cast<std::size_t>(s)] + complex(mu * std::pow(s2[static_cast<std::size_t>(s)], k - 1)) * term[static_cast<std::size_t>(k)];

  CVector out(static_cast<std::size_t>(r + 1));
  double ofact = 1.0;
  for (int m = 2; m <= order; ++m) ofact *= m;
  for (int s = 0; s <= r; ++s) out[static_cast<std::size_t>(s)] = std::conj(xi[static_cast<std::size_t>(s)]) * eq[static_cast<std::size_t>(s)][order] * ofact;
  return out;
}

}  // namespace hartogs
