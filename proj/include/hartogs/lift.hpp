#pragma once

// Holomorphic maps between Hartogs domains of the form
// (z, w) -> (phi(z), e^{mu h(z)} w), built as a chain of stages.

#include <array>
#include <cmath>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "hartogs/domains.hpp"
#include "hartogs/errors.hpp"
#include "hartogs/hartogs.hpp"
#include "hartogs/numerics/complex.hpp"
#include "hartogs/numerics/jet.hpp"
#include "hartogs/numerics/matrix.hpp"

namespace hartogs {

/// z -> M z on the base, w unchanged.
struct LinearStage {
  CMatrix matrix;
};

/// Coordinatewise disk automorphisms z_j -> e^{i theta_j} (z_j - a_j) / (1 - conj(a_j) z_j)
/// with fiber factor prod_j [sqrt(1 - |a_j|^2) / (1 - conj(a_j) z_j)]^mu
/// (principal branch). With `inverse` set the stage applies the exact inverse
/// map instead.
struct MobiusStage {
  CVector a;
  std::vector<double> theta;
  double mu = 1.0;
  bool inverse = false;
};

using LiftStage = std::variant<LinearStage, MobiusStage>;

class LiftedMap {
 public:
  /// `source_dim` is the base dimension of the source domain.
  LiftedMap(std::size_t source_dim, std::vector<LiftStage> stages) : source_dim_(source_dim), stages_(std::move(stages)) {
    target_dim_ = source_dim_;
    for (const auto& s : stages_) {
      if (const auto* l = std::get_if<LinearStage>(&s)) {
        if (l->matrix.cols() != target_dim_) throw DimensionError("LiftedMap: linear stage shape mismatch");
        target_dim_ = l->matrix.rows();
      } else {
        const auto& m = std::get<MobiusStage>(s);
        if (m.a.size() != target_dim_ || m.theta.size() != target_dim_)
          throw DimensionError("LiftedMap: Mobius stage length mismatch");
        for (const auto& c : m.a)
          if (!(std::abs(c) < 1.0)) throw DomainError("LiftedMap: Mobius center must lie in the open disk");
        if (!(m.mu > 0.0)) throw InvalidArgument("LiftedMap: mu must be positive");
      }
    }
  }

  std::size_t source_dim() const { return source_dim_; }
  std::size_t target_dim() const { return target_dim_; }
  const std::vector<LiftStage>& stages() const { return stages_; }

  /// Applies the map to full coordinates (z, w) over any real-like scalar.
  template <typename R>
  std::vector<Cx<R>> apply(std::span<const Cx<R>> coords) const {
    if (coords.size() != source_dim_ + 1) throw DimensionError("LiftedMap: coordinate length mismatch");
    std::vector<Cx<R>> z(coords.begin(), coords.end() - 1);
    Cx<R> w = coords.back();
    for (const auto& s : stages_) {
      if (const auto* l = std::get_if<LinearStage>(&s))
        z = LinearMap{l->matrix}.apply<R>(std::span<const Cx<R>>(z));
      else
        apply_mobius(std::get<MobiusStage>(s), z, w);
    }
    z.push_back(w);
    return z;
  }

  CVector operator()(const CVector& coords) const {
    const auto out = apply<double>(std::span<const Cx<double>>(lift<double>(coords)));
    CVector r;
    r.reserve(out.size());
    for (const auto& c : out) r.push_back(to_complex(c));
    return r;
  }

  HartogsPoint operator()(const HartogsPoint& p) const { return HartogsPoint::from_coords((*this)(p.coords())); }

  /// The multiplier e^{mu h(z)} acting on the fiber.
  complex fiber_factor(const DomainPoint& z) const {
    CVector c = z;
    c.push_back(1.0);
    return (*this)(c).back();
  }

  /// Holomorphic Jacobian dF_k / dz_i, (target + 1) x (source + 1).
  CMatrix jacobian(const CVector& coords) const {
    using J = Jet<double, 1, 1>;
    if (coords.size() != source_dim_ + 1) throw DimensionError("LiftedMap: coordinate length mismatch");
    CMatrix jac(target_dim_ + 1, source_dim_ + 1);
    std::vector<Cx<J>> x(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
      for (std::size_t k = 0; k < coords.size(); ++k)
        x[k] = Cx<J>(J(coords[k].real()), J(coords[k].imag()));
      x[i].re = J::variable(coords[i].real(), 0);
      const auto y = apply<J>(std::span<const Cx<J>>(x));
      for (std::size_t k = 0; k < y.size(); ++k) jac(k, i) = complex(y[k].re[1], y[k].im[1]);
    }
    return jac;
  }

  /// Second derivative D^2 F(u, v) at `coords`.
  CVector second_derivative(const CVector& coords, const CVector& u, const CVector& v) const {
    using J = Jet<double, 2, 2>;
    if (coords.size() != source_dim_ + 1 || u.size() != coords.size() || v.size() != coords.size())
      throw DimensionError("LiftedMap: coordinate length mismatch");
    std::vector<Cx<J>> x(coords.size());
    for (std::size_t k = 0; k < coords.size(); ++k) {
      J re(coords[k].real());
      J im(coords[k].imag());
      re[1] = u[k].real();
      im[1] = u[k].imag();
      re[2] = v[k].real();
      im[2] = v[k].imag();
      x[k] = Cx<J>(re, im);
    }
    const auto y = apply<J>(std::span<const Cx<J>>(x));
    CVector out(y.size());
    for (std::size_t k = 0; k < y.size(); ++k) out[k] = complex(y[k].re.derivative({1, 1}), y[k].im.derivative({1, 1}));
    return out;
  }

  /// The inverse map; every stage must be invertible (square linear stages).
  LiftedMap inverse() const {
    if (source_dim_ != target_dim_) throw InvalidArgument("LiftedMap::inverse: map is not between equal dimensions");
    std::vector<LiftStage> rev;
    for (auto it = stages_.rbegin(); it != stages_.rend(); ++it) {
      if (const auto* l = std::get_if<LinearStage>(&*it)) {
        if (!l->matrix.square()) throw InvalidArgument("LiftedMap::inverse: non-square linear stage");
        rev.emplace_back(LinearStage{hartogs::inverse(l->matrix)});
      } else {
        MobiusStage m = std::get<MobiusStage>(*it);
        m.inverse = !m.inverse;
        rev.emplace_back(std::move(m));
      }
    }
    return LiftedMap(source_dim_, std::move(rev));
  }

  /// outer o inner, with adjacent linear stages multiplied together.
  friend LiftedMap compose(const LiftedMap& outer, const LiftedMap& inner) {
    if (inner.target_dim_ != outer.source_dim_) throw DimensionError("compose: dimension mismatch");
    std::vector<LiftStage> stages = inner.stages_;
    for (const auto& s : outer.stages_) {
      if (!stages.empty() && std::holds_alternative<LinearStage>(s) && std::holds_alternative<LinearStage>(stages.back())) {
        auto& last = std::get<LinearStage>(stages.back());
        last.matrix = std::get<LinearStage>(s).matrix * last.matrix;
      } else {
        stages.push_back(s);
      }
    }
    return LiftedMap(inner.source_dim_, std::move(stages));
  }

 private:
  template <typename R>
  static void apply_mobius(const MobiusStage& m, std::vector<Cx<R>>& z, Cx<R>& w) {
    Cx<R> factor(1.0);
    for (std::size_t j = 0; j < z.size(); ++j) {
      const complex a = m.a[j];
      const complex rot = std::polar(1.0, m.theta[j]);
      const double scale = std::pow(1.0 - std::norm(a), 0.5 * m.mu);
      if (!m.inverse) {
        const Cx<R> den = Cx<R>(1.0) - mul(std::conj(a), z[j]);
        factor = factor * cpow(den, -m.mu) * Cx<R>(complex(scale));
        z[j] = mul(rot, (z[j] - Cx<R>(a)) / den);
      } else {
        // Solve z' = e^{i theta}(z - a)/(1 - conj(a) z) for z, and divide the
        // fiber by the forward factor at the recovered z.
        const Cx<R> b = mul(std::conj(rot), z[j]);
        const Cx<R> orig = (b + Cx<R>(a)) / (Cx<R>(1.0) + mul(std::conj(a), b));
        const Cx<R> den = Cx<R>(1.0) - mul(std::conj(a), orig);
        factor = factor * cpow(den, m.mu) * Cx<R>(complex(1.0 / scale));
        z[j] = orig;
      }
    }
    w = w * factor;
  }

  template <typename R>
  static Cx<R> mul(const complex& c, const Cx<R>& x) {
    if constexpr (std::is_same_v<R, double>)
      return Cx<double>(c) * x;
    else
      return x * c;
  }

  std::size_t source_dim_;
  std::size_t target_dim_;
  std::vector<LiftStage> stages_;
};

/// (z, w) -> (phi(z), w) for a linear base map phi fixing the origin.
inline LiftedMap lift_embedding(const LinearMap& phi) {
  return LiftedMap(phi.source_dim(), {LinearStage{phi.matrix}});
}

inline LiftedMap lift_identity(std::size_t n) { return lift_embedding(LinearMap{CMatrix::identity(n)}); }

/// Lift of the polydisk automorphism with Mobius centers a and phases theta
/// to M_{Delta^n}(mu).
inline LiftedMap lift_automorphism_polydisk(const CVector& a, const std::vector<double>& theta, double mu) {
  if (a.size() != theta.size()) throw DimensionError("lift_automorphism_polydisk: a and theta lengths differ");
  return LiftedMap(a.size(), {MobiusStage{a, theta, mu, false}});
}

}  // namespace hartogs
