#pragma once

// Cartan-Hartogs domains M(mu) = {(z, w) : |w|^2 < N(z, z)^mu} over a
// classical base, and their Kaehler potentials -log(N^mu - |w|^2).
//
// Ambient coordinates list the base coordinates first and w last.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

#include "hartogs/domains.hpp"
#include "hartogs/errors.hpp"
#include "hartogs/numerics/complex.hpp"
#include "hartogs/numerics/wirtinger.hpp"

namespace hartogs {

class HartogsSpec {
 public:
  HartogsSpec(DomainSpec base, double mu) : base_(std::move(base)), mu_(mu) {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw InvalidArgument("HartogsSpec: mu must be a positive number");
  }

  const DomainSpec& base() const { return base_; }
  double mu() const { return mu_; }
  /// Complex dimension of M(mu): base dimension plus the fiber.
  int dim() const { return base_.dim() + 1; }

  friend bool operator==(const HartogsSpec&, const HartogsSpec&) = default;

 private:
  DomainSpec base_;
  double mu_;
};

struct HartogsPoint {
  DomainPoint z;
  complex w{0.0};

  /// (z_1, ..., z_d, w).
  CVector coords() const {
    CVector c = z;
    c.push_back(w);
    return c;
  }
  static HartogsPoint from_coords(const CVector& c) {
    if (c.empty()) throw DimensionError("HartogsPoint: empty coordinate vector");
    return {DomainPoint(c.begin(), c.end() - 1), c.back()};
  }
};

/// Base membership with the margin, and |w|^2 < N^mu - margin.
inline bool h_contains(const HartogsSpec& spec, const HartogsPoint& p, double margin = 1e-9) {
  if (!contains(spec.base(), p.z, margin)) return false;
  const auto z = lift<double>(p.z);
  const double nmu = generic_norm_pow<double>(spec.base(), std::span<const Cx<double>>(z), spec.mu());
  return std::norm(p.w) < nmu - margin;
}

inline bool h_contains(const HartogsSpec& spec, const CVector& coords, double margin = 1e-9) {
  if (coords.size() != static_cast<std::size_t>(spec.dim())) throw DimensionError("h_contains: coordinate length mismatch");
  return h_contains(spec, HartogsPoint::from_coords(coords), margin);
}

/// The potential -log(N^mu - |w|^2) as a function of interleaved real
/// coordinates, differentiable through jets.
class HartogsPotential {
 public:
  explicit HartogsPotential(HartogsSpec spec) : spec_(std::move(spec)) {}

  const HartogsSpec& spec() const { return spec_; }
  int complex_dim() const { return spec_.dim(); }

  template <typename R>
  R operator()(std::span<const R> x) const {
    using std::log;
    const auto z = pair_up<R>(x);
    if (z.size() != static_cast<std::size_t>(complex_dim())) throw DimensionError("potential: coordinate length mismatch");
    const auto base = std::span<const Cx<R>>(z.data(), z.size() - 1);
    const R nmu = generic_norm_pow<R>(spec_.base(), base, spec_.mu());
    return -log(nmu - abs2(z.back()));
  }

  bool inside(const CVector& coords, double margin) const { return h_contains(spec_, coords, margin); }

 private:
  HartogsSpec spec_;
};

/// The base potential -log N(z, z) of a bounded symmetric domain.
class BasePotential {
 public:
  explicit BasePotential(DomainSpec spec) : spec_(std::move(spec)) {}

  const DomainSpec& spec() const { return spec_; }
  int complex_dim() const { return spec_.dim(); }

  template <typename R>
  R operator()(std::span<const R> x) const {
    using std::log;
    const auto z = pair_up<R>(x);
    return -log(generic_norm_pow<R>(spec_, std::span<const Cx<R>>(z), 1.0));
  }

  bool inside(const CVector& coords, double margin) const { return contains(spec_, coords, margin); }

 private:
  DomainSpec spec_;
};

/// Phi(z, w) at a point of M(mu).
inline double potential(const HartogsSpec& spec, const HartogsPoint& p) {
  if (!h_contains(spec, p, 0.0)) throw DomainError("potential: point outside the Hartogs domain");
  const auto x = to_real(p.coords());
  return HartogsPotential(spec)(std::span<const double>(x));
}

/// Seeded point of M(mu): a base sample from `sample`, then w uniform in the
/// disk of radius shrink * N(z)^(mu / 2).
inline HartogsPoint h_sample(const HartogsSpec& spec, double shrink, std::uint64_t seed) {
  HartogsPoint p;
  p.z = sample(spec.base(), shrink, seed);
  std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ULL);
  const auto z = lift<double>(p.z);
  const double nmu = generic_norm_pow<double>(spec.base(), std::span<const Cx<double>>(z), spec.mu());
  p.w = shrink * std::sqrt(nmu) * uniform_disk(gen);
  return p;
}

}  // namespace hartogs
