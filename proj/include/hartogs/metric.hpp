#pragma once

// Kaehler metric g_{i jbar} = d^2 Phi / dz_i dzbar_j of a potential, its
// Christoffel symbols, holomorphic sectional curvature, and the second
// fundamental form of holomorphic charts.

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <span>
#include <vector>

#include "hartogs/chart.hpp"
#include "hartogs/errors.hpp"
#include "hartogs/numerics/complex.hpp"
#include "hartogs/numerics/jet.hpp"
#include "hartogs/numerics/matrix.hpp"
#include "hartogs/numerics/wirtinger.hpp"

namespace hartogs {

/// A real potential on an open subset of C^N, evaluable over jets.
template <typename P>
concept Potential = requires(const P& p, std::span<const double> x, const CVector& c) {
  { p.complex_dim() } -> std::convertible_to<int>;
  { p(x) } -> std::convertible_to<double>;
  { p.inside(c, 1e-9) } -> std::convertible_to<bool>;
};

/// Largest acceptable condition number of g.
inline constexpr double kMaxMetricCondition = 1e12;

struct MetricData {
  std::size_t n = 0;
  CMatrix g;      ///< g(i, j) = g_{i jbar}
  CMatrix g_inv;  ///< matrix inverse of g
  std::vector<complex> dg;  ///< dg[(i n + j) n + l] = d g_{j lbar} / dz_i

  complex dg_at(std::size_t i, std::size_t j, std::size_t l) const { return dg[(i * n + j) * n + l]; }
};

struct Christoffel {
  std::size_t n = 0;
  std::vector<complex> gamma;  ///< gamma[(k n + i) n + j] = Gamma^k_{ij}

  complex operator()(std::size_t k, std::size_t i, std::size_t j) const { return gamma[(k * n + i) * n + j]; }
};

namespace detail {

template <Potential P>
std::vector<double> checked_real_point(const P& phi, const CVector& p, double margin) {
  if (p.size() != static_cast<std::size_t>(phi.complex_dim())) throw DimensionError("metric: point length mismatch");
  if (!phi.inside(p, margin)) throw DomainError("metric: point is not interior with the required margin");
  return to_real(p);
}

/// Real directions (x_c, y_c) for each complex index in `idx`.
template <std::size_t M>
std::array<int, 2 * M> pair_directions(const std::array<std::size_t, M>& idx) {
  std::array<int, 2 * M> d{};
  for (std::size_t k = 0; k < M; ++k) {
    d[2 * k] = static_cast<int>(2 * idx[k]);
    d[2 * k + 1] = static_cast<int>(2 * idx[k] + 1);
  }
  return d;
}

/// Fills g and dg entries whose indices all lie in `idx` from one jet.
template <std::size_t M, Potential P>
void harvest(const P& phi, std::span<const double> x, const std::array<std::size_t, M>& idx, MetricData& m) {
  constexpr int D = static_cast<int>(2 * M);
  const auto jet = jet_eval<D, 3>(phi, x, pair_directions(idx));
  for (std::size_t a = 0; a < M; ++a)
    for (std::size_t b = 0; b < M; ++b) {
      const int ia = static_cast<int>(a);
      const int ib = static_cast<int>(b);
      m.g(idx[a], idx[b]) = wirtinger(jet, {{ia, false}, {ib, true}});
      for (std::size_t c = 0; c < M; ++c) {
        const int ic = static_cast<int>(c);
        m.dg[(idx[c] * m.n + idx[a]) * m.n + idx[b]] = wirtinger(jet, {{ic, false}, {ia, false}, {ib, true}});
      }
    }
}

inline void check_condition(const CMatrix& g, const CMatrix& g_inv) {
  const double cond = norm_inf(g) * norm_inf(g_inv);
  if (!(cond <= kMaxMetricCondition)) throw NumericalError("metric: ill-conditioned metric (too close to the boundary)");
}

}  // namespace detail

/// g, its inverse, and all first derivatives of g at p.
template <Potential P>
MetricData metric_at(const P& phi, const CVector& p) {
  const auto x = detail::checked_real_point(phi, p, 1e-9);
  const std::size_t n = p.size();
  MetricData m;
  m.n = n;
  m.g = CMatrix(n, n);
  m.dg.assign(n * n * n, 0.0);
  const std::span<const double> xs(x);
  if (n == 1) {
    detail::harvest<1>(phi, xs, {0}, m);
  } else if (n == 2) {
    detail::harvest<2>(phi, xs, {0, 1}, m);
  } else {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c) detail::harvest<3>(phi, xs, {a, b, c}, m);
  }
  m.g_inv = inverse(m.g);
  detail::check_condition(m.g, m.g_inv);
  return m;
}

/// Gamma^k_{ij} = sum_l g^{k lbar} d g_{j lbar} / dz_i.
inline Christoffel christoffel_from(const MetricData& m) {
  Christoffel c;
  c.n = m.n;
  c.gamma.assign(m.n * m.n * m.n, 0.0);
  for (std::size_t k = 0; k < m.n; ++k)
    for (std::size_t i = 0; i < m.n; ++i)
      for (std::size_t j = 0; j < m.n; ++j) {
        complex s = 0.0;
        for (std::size_t l = 0; l < m.n; ++l) s += m.g_inv(l, k) * m.dg_at(i, j, l);
        c.gamma[(k * m.n + i) * m.n + j] = s;
      }
  return c;
}

template <Potential P>
Christoffel christoffel_at(const P& phi, const CVector& p) {
  return christoffel_from(metric_at(phi, p));
}

/// The metric matrix alone, from second-order jets over coordinate pairs.
template <Potential P>
CMatrix metric_matrix(const P& phi, const CVector& p, double margin = 0.0) {
  const auto x = detail::checked_real_point(phi, p, margin);
  const std::span<const double> xs(x);
  const std::size_t n = p.size();
  CMatrix g(n, n);
  if (n == 1) {
    const auto jet = jet_eval<2, 2>(phi, xs, {0, 1});
    g(0, 0) = wirtinger(jet, {{0, false}, {0, true}});
    return g;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const auto jet = jet_eval<4, 2>(phi, xs, detail::pair_directions<2>({a, b}));
      g(a, b) = wirtinger(jet, {{0, false}, {1, true}});
      g(b, a) = wirtinger(jet, {{1, false}, {0, true}});
      g(a, a) = wirtinger(jet, {{0, false}, {0, true}});
      g(b, b) = wirtinger(jet, {{1, false}, {1, true}});
    }
  return g;
}

/// g(u, vbar) = sum g_{i jbar} u_i conj(v_j).
inline complex metric_product(const CMatrix& g, const CVector& u, const CVector& v) {
  complex s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) s += g(i, j) * u[i] * std::conj(v[j]);
  return s;
}

namespace detail {

/// Central-difference metric with one Richardson step (h and h/2), from
/// g_{i jbar} = (Phi_{x_i x_j} + Phi_{y_i y_j} + i (Phi_{x_i y_j} - Phi_{y_i x_j})) / 4.
template <Potential P>
CMatrix metric_fd_at_step(const P& phi, const std::vector<double>& x0, std::size_t n, double h) {
  const std::size_t m = x0.size();
  auto eval = [&](std::size_t a, double sa, std::size_t b, double sb) {
    std::vector<double> x(x0);
    x[a] += sa;
    x[b] += sb;
    return static_cast<double>(phi(std::span<const double>(x)));
  };
  auto second = [&](std::size_t a, std::size_t b, double s) {
    return (eval(a, s, b, s) - eval(a, s, b, -s) - eval(a, -s, b, s) + eval(a, -s, b, -s)) / (4.0 * s * s);
  };
  std::vector<double> hess(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      const double d = (4.0 * second(a, b, 0.5 * h) - second(a, b, h)) / 3.0;
      hess[a * m + b] = d;
      hess[b * m + a] = d;
    }
  CMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t xi = 2 * i, yi = 2 * i + 1, xj = 2 * j, yj = 2 * j + 1;
      g(i, j) = complex(hess[xi * m + xj] + hess[yi * m + yj], hess[xi * m + yj] - hess[yi * m + xj]) / 4.0;
    }
  return g;
}

}  // namespace detail

/// Finite-difference metric. Evaluates the Richardson-extrapolated central
/// difference on the steps h0, h0/2, ..., h0/16 and returns the estimate
/// whose successor differs from it least.
template <Potential P>
CMatrix metric_matrix_fd(const P& phi, const CVector& p, double h0 = 2e-3) {
  const auto x0 = detail::checked_real_point(phi, p, 0.0);
  std::vector<CMatrix> est;
  for (int k = 0; k < 5; ++k) est.push_back(detail::metric_fd_at_step(phi, x0, p.size(), h0 / (1 << k)));
  std::size_t best = 1;
  double best_diff = max_abs(est[1] - est[0]);
  for (std::size_t k = 2; k < est.size(); ++k) {
    const double d = max_abs(est[k] - est[k - 1]);
    if (d < best_diff) {
      best_diff = d;
      best = k;
    }
  }
  return est[best];
}

namespace detail {

inline CVector scaled(const CVector& v, complex s) {
  CVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

inline std::vector<double> unit_real(std::size_t size, std::size_t index) {
  std::vector<double> e(size, 0.0);
  e[index] = 1.0;
  return e;
}

/// b_l = d_X d_Y d_{lbar} Phi for every l.
template <Potential P>
CVector third_derivatives(const P& phi, std::span<const double> x, const CVector& X, const CVector& Y) {
  const std::size_t n = X.size();
  const bool same = X == Y;
  CVector b(n);
  const auto xr = to_real(X);
  const auto xi = to_real(scaled(X, complex(0.0, 1.0)));
  const auto yr = to_real(Y);
  const auto yi = to_real(scaled(Y, complex(0.0, 1.0)));
  for (std::size_t l = 0; l < n; ++l) {
    const auto el = unit_real(x.size(), 2 * l);
    const auto fl = unit_real(x.size(), 2 * l + 1);
    if (same) {
      const std::vector<std::vector<double>> dirs{xr, xi, el, fl};
      const auto jet = jet_eval_along<4, 3>(phi, x, dirs);
      b[l] = wirtinger(jet, {{0, false}, {0, false}, {1, true}});
    } else {
      const std::vector<std::vector<double>> dirs{xr, xi, yr, yi, el, fl};
      const auto jet = jet_eval_along<6, 3>(phi, x, dirs);
      b[l] = wirtinger(jet, {{0, false}, {1, false}, {2, true}});
    }
  }
  return b;
}

/// Solves g^T gamma = b, i.e. gamma^k = sum_l g^{k lbar} b_l.
inline CVector raise_index(const CMatrix& g, const CVector& b) { return LuDecomposition(g.transpose()).solve(b); }

}  // namespace detail

/// Gamma(X, Y)^k = sum_{ij} Gamma^k_{ij} X^i Y^j, computed from directional
/// jets without assembling the full tensor.
template <Potential P>
CVector christoffel_contract(const P& phi, const CVector& p, const CVector& X, const CVector& Y, double margin = 0.0) {
  if (X.size() != p.size() || Y.size() != p.size()) throw DimensionError("christoffel_contract: vector length mismatch");
  const auto x = detail::checked_real_point(phi, p, margin);
  const CMatrix g = metric_matrix(phi, p, margin);
  return detail::raise_index(g, detail::third_derivatives(phi, std::span<const double>(x), X, Y));
}

/// Holomorphic sectional curvature R(X, Xbar, X, Xbar) / g(X, Xbar)^2 with the
/// convention that the unit disk potential -log(1 - |z|^2) has curvature -2.
template <Potential P>
double sectional_curvature(const P& phi, const CVector& p, const CVector& X) {
  if (X.size() != p.size()) throw DimensionError("sectional_curvature: vector length mismatch");
  if (norm2(X) == 0.0) throw InvalidArgument("sectional_curvature: zero direction");
  const auto x = detail::checked_real_point(phi, p, 1e-9);
  const std::span<const double> xs(x);
  const CMatrix g = metric_matrix(phi, p);
  const CMatrix g_inv = inverse(g);
  detail::check_condition(g, g_inv);

  const std::vector<std::vector<double>> dirs{to_real(X), to_real(detail::scaled(X, complex(0.0, 1.0)))};
  const auto jet4 = jet_eval_along<2, 4>(phi, xs, dirs);
  // d_X^2 d_Xbar^2 = (1/16) (d_s^2 + d_t^2)^2 along zeta = s + i t.
  const double phi4 = (jet4.derivative({4, 0}) + 2.0 * jet4.derivative({2, 2}) + jet4.derivative({0, 4})) / 16.0;

  const CVector b = detail::third_derivatives(phi, xs, X, X);
  complex corr = 0.0;
  for (std::size_t p1 = 0; p1 < b.size(); ++p1)
    for (std::size_t q = 0; q < b.size(); ++q) corr += b[q] * g_inv(q, p1) * std::conj(b[p1]);

  const double gxx = metric_product(g, X, X).real();
  return -(phi4 - corr.real()) / (gxx * gxx);
}

/// Largest normal component of the ambient covariant derivative of chart
/// tangent fields, max over pairs (a, b) of
/// |(d_a d_b F + Gamma(X_a, X_b))^normal|_g / (|X_a|_g |X_b|_g).
/// Zero iff the chart is totally geodesic at q.
template <Potential P>
double tg_residual(const P& phi, const Chart& chart, const CVector& q) {
  if (q.size() != static_cast<std::size_t>(chart.param_dim())) throw DimensionError("tg_residual: parameter length mismatch");
  if (chart.param_dim() == phi.complex_dim()) return 0.0;
  const CVector p = chart.embedding(q);
  const auto x = detail::checked_real_point(phi, p, 1e-9);
  const std::span<const double> xs(x);
  const CMatrix g = metric_matrix(phi, p);
  const auto basis = chart.tangent_basis_at(q);
  const std::size_t k = basis.size();

  CMatrix gram(k, k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t d = 0; d < k; ++d) gram(d, c) = metric_product(g, basis[c], basis[d]);
  const LuDecomposition gram_lu(gram);
  for (std::size_t c = 0; c < k; ++c)
    if (!(gram(c, c).real() > 0.0)) throw NumericalError("tg_residual: degenerate tangent basis");
  {
    const CMatrix gi = gram_lu.inverse();
    if (!(norm_inf(gram) * norm_inf(gi) < 1e12)) throw NumericalError("tg_residual: degenerate tangent basis");
  }

  double worst = 0.0;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b) {
      CVector v = detail::raise_index(g, detail::third_derivatives(phi, xs, basis[a], basis[b]));
      const CVector h = chart.second_derivative(q, a, b);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += h[i];
      CVector rhs(k);
      for (std::size_t d = 0; d < k; ++d) rhs[d] = metric_product(g, v, basis[d]);
      const CVector alpha = gram_lu.solve(rhs);
      for (std::size_t c = 0; c < k; ++c)
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= alpha[c] * basis[c][i];
      const double nv = std::sqrt(std::max(0.0, metric_product(g, v, v).real()));
      const double na = std::sqrt(metric_product(g, basis[a], basis[a]).real());
      const double nb = std::sqrt(metric_product(g, basis[b], basis[b]).real());
      worst = std::max(worst, nv / (na * nb));
    }
  return worst;
}

}  // namespace hartogs
