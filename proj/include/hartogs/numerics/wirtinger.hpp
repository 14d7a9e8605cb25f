#pragma once

// Seeding real jets at a point and assembling complex Wirtinger derivatives
// from their real Taylor coefficients.

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "hartogs/errors.hpp"
#include "hartogs/numerics/complex.hpp"
#include "hartogs/numerics/jet.hpp"

namespace hartogs {

/// Jets of the coordinate functions x_i + sum_d dirs[d][i] t_d.
template <typename J>
std::vector<J> seed_along(std::span<const double> point, std::span<const std::vector<double>> dirs) {
  constexpr int D = J::kDirections;
  if (dirs.size() != static_cast<std::size_t>(D)) throw DimensionError("seed: direction count must equal jet width");
  std::vector<J> x;
  x.reserve(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    J xi(point[i]);
    for (int d = 0; d < D; ++d) {
      if (dirs[d].size() != point.size()) throw DimensionError("seed: direction length mismatch");
      xi[1 + d] = typename J::value_type(dirs[d][i]);
    }
    x.push_back(xi);
  }
  return x;
}

/// Order-K jet of f at `point` along the real coordinate axes `directions`.
/// f is any callable accepting std::span<const R> for a real-like R.
template <int D, int K = 3, typename F>
Jet<double, D, K> jet_eval(const F& f, std::span<const double> point, const std::array<int, D>& directions) {
  std::vector<std::vector<double>> dirs(D, std::vector<double>(point.size(), 0.0));
  for (int d = 0; d < D; ++d) {
    if (directions[d] < 0 || static_cast<std::size_t>(directions[d]) >= point.size())
      throw DimensionError("jet_eval: direction index out of range");
    dirs[d][directions[d]] = 1.0;
  }
  const auto x = seed_along<Jet<double, D, K>>(point, dirs);
  return f(std::span<const Jet<double, D, K>>(x));
}

/// Order-K jet of f at `point` along arbitrary real direction vectors.
template <int D, int K = 3, typename F>
Jet<double, D, K> jet_eval_along(const F& f, std::span<const double> point, std::span<const std::vector<double>> dirs) {
  const auto x = seed_along<Jet<double, D, K>>(point, dirs);
  return f(std::span<const Jet<double, D, K>>(x));
}

/// One factor of a Wirtinger derivative: d/dz_p (conjugate = false) or
/// d/dzbar_p (conjugate = true), where complex direction p is carried by the
/// real jet directions (2p, 2p + 1) as (x_p, y_p).
struct WirtingerFactor {
  int pair;
  bool conjugate;
};

/// Expands prod_f (1/2)(d/dx_p -/+ i d/dy_p) over the factors and reads the
/// resulting real partial derivatives off the jet.
template <int D, int K>
complex wirtinger(const Jet<double, D, K>& jet, std::span<const WirtingerFactor> factors) {
  if (D % 2 != 0) throw DimensionError("wirtinger: jet directions do not form (x, y) pairs");
  const std::size_t m = factors.size();
  if (m > static_cast<std::size_t>(K)) throw DimensionError("wirtinger: derivative order exceeds jet order");
  for (const auto& f : factors)
    if (f.pair < 0 || 2 * f.pair + 1 >= D) throw DimensionError("wirtinger: pair index outside the jet directions");

  complex total = 0.0;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::array<int, D> alpha{};
    complex coef = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& f = factors[i];
      if (mask & (1u << i)) {
        ++alpha[2 * f.pair + 1];
        coef *= complex(0.0, f.conjugate ? 0.5 : -0.5);
      } else {
        ++alpha[2 * f.pair];
        coef *= 0.5;
      }
    }
    total += coef * jet.derivative(alpha);
  }
  return total;
}

template <int D, int K>
complex wirtinger(const Jet<double, D, K>& jet, std::initializer_list<WirtingerFactor> factors) {
  return wirtinger(jet, std::span<const WirtingerFactor>(factors.begin(), factors.size()));
}

/// Interleaves a complex vector into (Re z_0, Im z_0, Re z_1, ...).
inline std::vector<double> to_real(const CVector& z) {
  std::vector<double> x(2 * z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    x[2 * i] = z[i].real();
    x[2 * i + 1] = z[i].imag();
  }
  return x;
}

inline CVector to_complex_vector(std::span<const double> x) {
  if (x.size() % 2 != 0) throw DimensionError("odd-length real coordinate vector");
  CVector z(x.size() / 2);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = {x[2 * i], x[2 * i + 1]};
  return z;
}

/// Regroups interleaved real coordinates into complex ones over R.
template <typename R>
std::vector<Cx<R>> pair_up(std::span<const R> x) {
  if (x.size() % 2 != 0) throw DimensionError("odd-length real coordinate vector");
  std::vector<Cx<R>> z;
  z.reserve(x.size() / 2);
  for (std::size_t i = 0; i + 1 < x.size(); i += 2) z.emplace_back(x[i], x[i + 1]);
  return z;
}

}  // namespace hartogs
