#pragma once

// Membership, generic norms, matrix realizations, polydisk embeddings, the
// Jordan triple product and seeded sampling for classical Cartan domains.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "hartogs/domain_spec.hpp"
#include "hartogs/errors.hpp"
#include "hartogs/numerics/complex.hpp"
#include "hartogs/numerics/matrix.hpp"

namespace hartogs {

using DomainPoint = CVector;

namespace detail {

inline void check_length(const DomainSpec& spec, std::size_t n) {
  if (n != static_cast<std::size_t>(spec.dim()))
    throw DimensionError("point has " + std::to_string(n) + " coordinates, " + spec.name() + " needs " +
                         std::to_string(spec.dim()));
}

/// Calls f(factor, offset) for each factor of a product (or the spec itself).
template <typename F>
void for_each_block(const DomainSpec& spec, F&& f) {
  if (spec.kind() != DomainKind::Product) {
    f(spec, std::size_t{0});
    return;
  }
  std::size_t offset = 0;
  for (const auto& factor : spec.factors()) {
    f(factor, offset);
    offset += static_cast<std::size_t>(factor.dim());
  }
}

}  // namespace detail

/// Z built from the coordinates of a matrix-type domain, over any scalar S
/// supporting construction from 0.0 and unary minus.
template <typename S>
Matrix<S> matrix_realization_of(const DomainSpec& spec, std::span<const S> z) {
  detail::check_length(spec, z.size());
  switch (spec.kind()) {
    case DomainKind::TypeI: {
      const auto m = static_cast<std::size_t>(spec.params()[0]);
      const auto n = static_cast<std::size_t>(spec.params()[1]);
      return Matrix<S>(m, n, std::vector<S>(z.begin(), z.end()));
    }
    case DomainKind::TypeII: {
      const auto n = static_cast<std::size_t>(spec.params()[0]);
      Matrix<S> u(n, n);
      std::size_t idx = 0;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          u(j, k) = z[idx];
          u(k, j) = -z[idx];
          ++idx;
        }
      return u;
    }
    case DomainKind::TypeIII: {
      const auto m = static_cast<std::size_t>(spec.params()[0]);
      Matrix<S> s(m, m);
      std::size_t idx = 0;
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = j; k < m; ++k) {
          s(j, k) = z[idx];
          s(k, j) = z[idx];
          ++idx;
        }
      return s;
    }
    default:
      throw InvalidArgument("matrix_realization: " + spec.name() + " is not a matrix-type domain");
  }
}

inline CMatrix matrix_realization(const DomainSpec& spec, const DomainPoint& z) {
  return matrix_realization_of<complex>(spec, std::span<const complex>(z));
}

/// Inverse of matrix_realization: reads the coordinates back off a matrix.
inline DomainPoint coordinates_of(const DomainSpec& spec, const CMatrix& m) {
  if (spec.kind() == DomainKind::TypeIV || spec.kind() == DomainKind::Product)
    throw InvalidArgument("coordinates_of: " + spec.name() + " is not a matrix-type domain");
  if (m.rows() != static_cast<std::size_t>(spec.matrix_rows()) ||
      m.cols() != static_cast<std::size_t>(spec.matrix_cols()))
    throw DimensionError("coordinates_of: matrix shape does not match " + spec.name());
  DomainPoint z;
  const std::size_t n = m.cols();
  for (std::size_t j = 0; j < m.rows(); ++j) {
    std::size_t k0 = 0;
    if (spec.kind() == DomainKind::TypeII) k0 = j + 1;
    if (spec.kind() == DomainKind::TypeIII) k0 = j;
    for (std::size_t k = k0; k < n; ++k) z.push_back(m(j, k));
  }
  return z;
}

/// N(z, z)^mu over a real-like R (double or a jet). No membership check: the
/// caller guarantees an interior point.
template <typename R>
R generic_norm_pow(const DomainSpec& spec, std::span<const Cx<R>> z, double mu) {
  using std::pow;
  switch (spec.kind()) {
    case DomainKind::TypeI:
    case DomainKind::TypeII:
    case DomainKind::TypeIII: {
      const auto zm = matrix_realization_of<Cx<R>>(spec, z);
      const auto a = Matrix<Cx<R>>::identity(zm.rows()) - zm * zm.adjoint();
      const R d = det(a).re;
      const double e = spec.kind() == DomainKind::TypeII ? 0.5 * mu : mu;
      if (e == 1.0) return d;
      return pow(d, e);
    }
    case DomainKind::TypeIV: {
      detail::check_length(spec, z.size());
      Cx<R> sq(0.0);
      R s(0.0);
      for (const auto& c : z) {
        sq += c * c;
        s += abs2(c);
      }
      const R n = R(1.0) + abs2(sq) - R(2.0) * s;
      if (mu == 1.0) return n;
      return pow(n, mu);
    }
    case DomainKind::Product: {
      detail::check_length(spec, z.size());
      R out(1.0);
      detail::for_each_block(spec, [&](const DomainSpec& f, std::size_t off) {
        out = out * generic_norm_pow<R>(f, z.subspan(off, static_cast<std::size_t>(f.dim())), mu);
      });
      return out;
    }
  }
  throw InvalidArgument("generic_norm: unknown domain kind");
}

/// True iff z lies in the domain with the given margin: I - ZZ* - margin I is
/// positive definite for matrix types; for TypeIV both 1 - sum|z|^2 and N
/// exceed the margin; products test every block.
inline bool contains(const DomainSpec& spec, const DomainPoint& z, double margin = 1e-9) {
  detail::check_length(spec, z.size());
  switch (spec.kind()) {
    case DomainKind::TypeI:
    case DomainKind::TypeII:
    case DomainKind::TypeIII: {
      const auto zm = matrix_realization(spec, z);
      CMatrix a = CMatrix::identity(zm.rows()) - zm * zm.adjoint();
      // Symmetrize away rounding so the Hermitian precondition holds exactly.
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j) {
          const complex h = 0.5 * (a(i, j) + std::conj(a(j, i)));
          a(i, j) = h;
          a(j, i) = std::conj(h);
        }
      return is_positive_definite(a, margin);
    }
    case DomainKind::TypeIV: {
      complex sq = 0.0;
      double s = 0.0;
      for (const auto& c : z) {
        sq += c * c;
        s += std::norm(c);
      }
      return 1.0 - s > margin && 1.0 + std::norm(sq) - 2.0 * s > margin;
    }
    case DomainKind::Product: {
      bool inside = true;
      detail::for_each_block(spec, [&](const DomainSpec& f, std::size_t off) {
        if (!inside) return;
        const DomainPoint block(z.begin() + static_cast<std::ptrdiff_t>(off),
                                z.begin() + static_cast<std::ptrdiff_t>(off + static_cast<std::size_t>(f.dim())));
        inside = contains(f, block, margin);
      });
      return inside;
    }
  }
  return false;
}

/// The generic norm N(z, z), in (0, 1] on the domain.
inline double generic_norm(const DomainSpec& spec, const DomainPoint& z) {
  if (!contains(spec, z, 0.0)) throw DomainError("generic_norm: point outside " + spec.name());
  return generic_norm_pow<double>(spec, std::span<const Cx<double>>(lift<double>(z)), 1.0);
}

/// A complex-linear map C^r -> C^N given by its matrix (N x r). Every
/// polydisk embedding of a classical domain is linear, so the matrix is also
/// its constant Jacobian.
struct LinearMap {
  CMatrix matrix;

  std::size_t source_dim() const { return matrix.cols(); }
  std::size_t target_dim() const { return matrix.rows(); }

  CVector operator()(const CVector& z) const {
    if (z.size() != source_dim()) throw DimensionError("linear map: argument length mismatch");
    return matrix * z;
  }

  template <typename R>
  std::vector<Cx<R>> apply(std::span<const Cx<R>> z) const {
    if (z.size() != source_dim()) throw DimensionError("linear map: argument length mismatch");
    std::vector<Cx<R>> out(target_dim(), Cx<R>(0.0));
    for (std::size_t i = 0; i < target_dim(); ++i)
      for (std::size_t j = 0; j < source_dim(); ++j) {
        const complex c = matrix(i, j);
        if (c == complex(0.0)) continue;
        if constexpr (std::is_same_v<R, double>)
          out[i] += Cx<double>(c) * z[j];
        else
          out[i] += z[j] * c;
      }
    return out;
  }

  const CMatrix& jacobian() const { return matrix; }
};

/// The standard totally geodesic polydisk Delta^r -> Omega of an irreducible
/// classical domain, with N(phi(z)) = prod (1 - |z_j|^2).
inline LinearMap polydisk_embedding(const DomainSpec& spec) {
  const auto r = static_cast<std::size_t>(spec.rank());
  const auto d = static_cast<std::size_t>(spec.dim());
  CMatrix j(d, r);
  switch (spec.kind()) {
    case DomainKind::TypeI: {
      const auto n = static_cast<std::size_t>(spec.params()[1]);
      for (std::size_t k = 0; k < r; ++k) j(k * n + k, k) = 1.0;
      break;
    }
    case DomainKind::TypeII: {
      // Coordinate k sits at (k, n-1-k) with +1 and at (n-1-k, k) with -1.
      const auto n = static_cast<std::size_t>(spec.params()[0]);
      CMatrix probe(n, n);
      for (std::size_t k = 0; k < r; ++k) {
        probe(k, n - 1 - k) = 1.0;
        probe(n - 1 - k, k) = -1.0;
        const auto coords = coordinates_of(spec, probe);
        for (std::size_t i = 0; i < d; ++i) j(i, k) = coords[i];
        probe(k, n - 1 - k) = 0.0;
        probe(n - 1 - k, k) = 0.0;
      }
      break;
    }
    case DomainKind::TypeIII: {
      const auto m = static_cast<std::size_t>(spec.params()[0]);
      std::size_t idx = 0;
      for (std::size_t row = 0; row < m; ++row) {
        j(idx, row) = 1.0;
        idx += m - row;
      }
      break;
    }
    case DomainKind::TypeIV:
      j(0, 0) = 0.5;
      j(0, 1) = 0.5;
      j(1, 0) = complex(0.0, 0.5);
      j(1, 1) = complex(0.0, -0.5);
      break;
    case DomainKind::Product:
      throw InvalidArgument("polydisk_embedding: use product_polydisk_embedding for products");
  }
  return LinearMap{std::move(j)};
}

/// Block-diagonal combination of per-factor embeddings.
inline LinearMap product_embedding(const std::vector<LinearMap>& blocks) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    rows += b.target_dim();
    cols += b.source_dim();
  }
  CMatrix j(rows, cols);
  std::size_t r0 = 0;
  std::size_t c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.target_dim(); ++i)
      for (std::size_t k = 0; k < b.source_dim(); ++k) j(r0 + i, c0 + k) = b.matrix(i, k);
    r0 += b.target_dim();
    c0 += b.source_dim();
  }
  return LinearMap{std::move(j)};
}

/// Polydisk embedding of any spec: the irreducible one, or the block-diagonal
/// combination over the factors of a product.
inline LinearMap product_polydisk_embedding(const DomainSpec& spec) {
  if (spec.irreducible()) return polydisk_embedding(spec);
  std::vector<LinearMap> blocks;
  for (const auto& f : spec.factors()) blocks.push_back(product_polydisk_embedding(f));
  return product_embedding(blocks);
}

/// {U, V, W} = U V* W + W V* U.
inline CMatrix triple_product(const CMatrix& u, const CMatrix& v, const CMatrix& w) {
  if (u.rows() != v.rows() || u.rows() != w.rows() || u.cols() != v.cols() || u.cols() != w.cols())
    throw DimensionError("triple_product: U, V, W must share one shape");
  const CMatrix vs = v.adjoint();
  return u * vs * w + w * vs * u;
}

/// True iff the complex span of `basis` is closed under the triple product.
inline bool subtriple_closure(const DomainSpec& spec, const std::vector<CMatrix>& basis, double tol = 1e-10) {
  if (basis.empty()) throw InvalidArgument("subtriple_closure: empty basis");
  const auto rows = static_cast<std::size_t>(spec.matrix_rows());
  const auto cols = static_cast<std::size_t>(spec.matrix_cols());
  std::vector<CVector> flat;
  double scale = 0.0;
  for (const auto& b : basis) {
    if (b.rows() != rows || b.cols() != cols) throw DimensionError("subtriple_closure: basis shape mismatch");
    flat.push_back(b.entries());
    scale = std::max(scale, max_abs(b));
  }
  const double threshold = tol * std::max(1.0, scale * scale * scale);
  for (const auto& u : basis)
    for (const auto& v : basis)
      for (const auto& w : basis)
        if (span_residual(flat, triple_product(u, v, w).entries()) >= threshold) return false;
  return true;
}

/// Portable uniform double in [0, 1) from a 64-bit engine.
inline double uniform01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

/// Uniform point of the closed unit disk.
inline complex uniform_disk(std::mt19937_64& gen) {
  const double r = std::sqrt(uniform01(gen));
  const double t = 2.0 * std::numbers::pi * uniform01(gen);
  return std::polar(r, t);
}

/// Seeded point of shrink * Omega. Draws u uniformly in the unit polydisk and
/// a radial factor s uniform in [0, 1), proposes s * u, and accepts when it
/// lies in Omega; the result is shrink * s * u.
inline DomainPoint sample(const DomainSpec& spec, double shrink, std::uint64_t seed) {
  if (!(shrink > 0.0 && shrink <= 1.0)) throw InvalidArgument("sample: shrink must lie in (0, 1]");
  std::mt19937_64 gen(seed);
  const auto d = static_cast<std::size_t>(spec.dim());
  DomainPoint u(d);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    for (auto& c : u) c = uniform_disk(gen);
    const double s = uniform01(gen);
    for (auto& c : u) c *= s;
    if (contains(spec, u, 0.0)) {
      for (auto& c : u) c *= shrink;
      return u;
    }
  }
  throw NumericalError("sample: rejection budget exhausted for " + spec.name());
}

}  // namespace hartogs
