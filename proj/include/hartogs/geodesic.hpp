#pragma once

// Geodesics of a Kaehler metric: zdd^k + Gamma^k_{ij} zd^i zd^j = 0,
// integrated with the Dormand-Prince 5(4) pair.

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "hartogs/errors.hpp"
#include "hartogs/metric.hpp"
#include "hartogs/numerics/complex.hpp"

namespace hartogs {

enum class GeodesicStatus { Completed, BoundaryReached };

inline const char* to_string(GeodesicStatus s) {
  return s == GeodesicStatus::Completed ? "Completed" : "BoundaryReached";
}

/// Membership margin every accepted state must keep.
inline constexpr double kGeodesicMargin = 1e-7;

struct GeodesicTrace {
  std::vector<double> times;
  std::vector<CVector> positions;
  std::vector<CVector> velocities;
  std::vector<double> energies;  ///< g(zd, conj(zd)) at each state
  GeodesicStatus status = GeodesicStatus::Completed;
  std::size_t rejected_steps = 0;

  std::size_t size() const { return times.size(); }

  /// max_t |E(t) - E(0)| / E(0).
  double energy_drift() const {
    if (energies.empty()) return 0.0;
    double d = 0.0;
    for (double e : energies) d = std::max(d, std::abs(e - energies.front()));
    return d / energies.front();
  }

  /// CSV with header t,re_z1,im_z1,...,re_w,im_w,energy. The last coordinate
  /// is labelled w when `fiber_last` is set.
  void write_csv(std::ostream& os, bool fiber_last = true) const {
    const std::size_t n = positions.empty() ? 0 : positions.front().size();
    os << "t";
    for (std::size_t i = 0; i < n; ++i) {
      const std::string name = (fiber_last && i + 1 == n) ? "w" : "z" + std::to_string(i + 1);
      os << ",re_" << name << ",im_" << name;
    }
    os << ",energy\n";
    std::ostringstream line;
    line << std::setprecision(17);
    for (std::size_t k = 0; k < times.size(); ++k) {
      line.str("");
      line << times[k];
      for (const auto& c : positions[k]) line << ',' << c.real() << ',' << c.imag();
      line << ',' << energies[k] << '\n';
      os << line.str();
    }
  }
};

namespace detail {

/// Dormand-Prince 5(4) tableau.
struct DormandPrince {
  static constexpr std::array<double, 7> c{0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
  static constexpr std::array<std::array<double, 6>, 7> a{{
      {},
      {1.0 / 5},
      {3.0 / 40, 9.0 / 40},
      {44.0 / 45, -56.0 / 15, 32.0 / 9},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
      {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
  }};
  // Fifth-order weights equal the last row of a; e = b5 - b4.
  static constexpr std::array<double, 7> e{71.0 / 57600, 0.0, -71.0 / 16695, 71.0 / 1920, -17253.0 / 339200,
                                           22.0 / 525, -1.0 / 40};
};

/// (zd, -Gamma(zd, zd)) as one vector, or nullopt outside the domain.
template <Potential P>
std::optional<CVector> geodesic_rhs(const P& phi, const CVector& y) {
  const std::size_t n = y.size() / 2;
  const CVector z(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
  const CVector v(y.begin() + static_cast<std::ptrdiff_t>(n), y.end());
  if (!phi.inside(z, 0.0)) return std::nullopt;
  const CVector acc = christoffel_contract(phi, z, v, v);
  CVector f(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = v[i];
    f[n + i] = -acc[i];
  }
  return f;
}

template <Potential P>
double energy(const P& phi, const CVector& z, const CVector& v) {
  return metric_product(metric_matrix(phi, z), v, v).real();
}

}  // namespace detail

/// Integrates the geodesic from p0 with initial velocity v0 over [0, T] with
/// relative and absolute tolerance `tol`. Stops with BoundaryReached when an
/// accepted step would leave the domain's 1e-7 margin.
template <Potential P>
GeodesicTrace geodesic_ivp(const P& phi, const CVector& p0, const CVector& v0, double T, double tol = 1e-10) {
  using DP = detail::DormandPrince;
  const std::size_t n = p0.size();
  if (n != static_cast<std::size_t>(phi.complex_dim()) || v0.size() != n) throw DimensionError("geodesic_ivp: length mismatch");
  if (norm2(v0) == 0.0) throw InvalidArgument("geodesic_ivp: zero initial velocity");
  if (!(T > 0.0) || !(tol > 0.0)) throw InvalidArgument("geodesic_ivp: T and tol must be positive");
  if (!phi.inside(p0, kGeodesicMargin)) throw DomainError("geodesic_ivp: start point is not interior");

  GeodesicTrace trace;
  CVector y(p0);
  y.insert(y.end(), v0.begin(), v0.end());
  double t = 0.0;
  trace.times.push_back(t);
  trace.positions.push_back(p0);
  trace.velocities.push_back(v0);
  trace.energies.push_back(detail::energy(phi, p0, v0));

  auto k0 = detail::geodesic_rhs(phi, y);
  if (!k0) throw DomainError("geodesic_ivp: start point is not interior");
  double h = std::min(T, 0.01 / std::max(1.0, std::sqrt(norm2(v0))));
  std::array<CVector, 7> k;
  k[0] = *k0;

  while (t < T) {
    const bool last = h >= T - t;
    if (last) h = T - t;
    if (h < 1e-14 * std::max(1.0, t)) throw NumericalError("geodesic_ivp: step size underflow");

    bool stage_outside = false;
    for (int s = 1; s < 7 && !stage_outside; ++s) {
      CVector ys = y;
      for (int r = 0; r < s; ++r) {
        const double a = DP::a[s][r];
        if (a == 0.0) continue;
        for (std::size_t i = 0; i < ys.size(); ++i) ys[i] += h * a * k[r][i];
      }
      auto f = detail::geodesic_rhs(phi, ys);
      if (!f) {
        stage_outside = true;
        break;
      }
      k[s] = std::move(*f);
    }
    if (stage_outside) {
      ++trace.rejected_steps;
      h *= 0.25;
      continue;
    }

    // The last stage is evaluated at the fifth-order solution.
    CVector ynew = y;
    double err = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      complex incr = 0.0;
      complex e = 0.0;
      for (int s = 0; s < 6; ++s) incr += DP::a[6][s] * k[s][i];
      for (int s = 0; s < 7; ++s) e += DP::e[s] * k[s][i];
      ynew[i] += h * incr;
      e *= h;
      const double scale_re = tol + tol * std::max(std::abs(y[i].real()), std::abs(ynew[i].real()));
      const double scale_im = tol + tol * std::max(std::abs(y[i].imag()), std::abs(ynew[i].imag()));
      err = std::max({err, std::abs(e.real()) / scale_re, std::abs(e.imag()) / scale_im});
    }

    if (err > 1.0) {
      ++trace.rejected_steps;
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      continue;
    }

    const CVector z(ynew.begin(), ynew.begin() + static_cast<std::ptrdiff_t>(n));
    if (!phi.inside(z, kGeodesicMargin)) {
      trace.status = GeodesicStatus::BoundaryReached;
      break;
    }
    const CVector v(ynew.begin() + static_cast<std::ptrdiff_t>(n), ynew.end());
    t = last ? T : t + h;
    y = std::move(ynew);
    k[0] = k[6];
    trace.times.push_back(t);
    trace.positions.push_back(z);
    trace.velocities.push_back(v);
    trace.energies.push_back(detail::energy(phi, z, v));
    h *= err == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
  }
  return trace;
}

}  // namespace hartogs
