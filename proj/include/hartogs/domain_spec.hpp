#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hartogs/errors.hpp"

namespace hartogs {

enum class DomainKind { TypeI, TypeII, TypeIII, TypeIV, Product };

/// A classical Cartan domain, or a finite product of them.
///
/// Coordinates: TypeI(m, n) uses the m x n matrix entries in row-major order;
/// TypeII(n) the strictly upper entries u_jk (j < k) in row-major order;
/// TypeIII(m) the upper-triangle entries (diagonal included) in row-major
/// order; TypeIV(n) the n vector entries; a product concatenates its factors.
class DomainSpec {
 public:
  static DomainSpec type_i(int m, int n) {
    if (m < 1 || n < m) throw InvalidArgument("TypeI(m, n) requires n >= m >= 1");
    return DomainSpec(DomainKind::TypeI, {m, n}, {});
  }
  static DomainSpec type_ii(int n) {
    if (n < 2) throw InvalidArgument("TypeII(n) requires n >= 2");
    return DomainSpec(DomainKind::TypeII, {n}, {});
  }
  static DomainSpec type_iii(int m) {
    if (m < 1) throw InvalidArgument("TypeIII(m) requires m >= 1");
    return DomainSpec(DomainKind::TypeIII, {m}, {});
  }
  static DomainSpec type_iv(int n) {
    if (n < 5) throw InvalidArgument("TypeIV(n) requires n >= 5");
    return DomainSpec(DomainKind::TypeIV, {n}, {});
  }
  static DomainSpec product(std::vector<DomainSpec> factors) {
    if (factors.empty()) throw InvalidArgument("product of zero domains");
    return DomainSpec(DomainKind::Product, {}, std::move(factors));
  }
  /// The unit disk, realized as TypeI(1, 1).
  static DomainSpec disk() { return type_i(1, 1); }
  /// The polydisk of dimension n as a product of n disks.
  static DomainSpec polydisk(int n) {
    if (n < 1) throw InvalidArgument("polydisk dimension must be positive");
    return product(std::vector<DomainSpec>(static_cast<std::size_t>(n), disk()));
  }

  DomainKind kind() const { return kind_; }
  const std::vector<int>& params() const { return params_; }
  const std::vector<DomainSpec>& factors() const { return factors_; }
  bool irreducible() const { return kind_ != DomainKind::Product; }

  int rank() const {
    switch (kind_) {
      case DomainKind::TypeI: return params_[0];
      case DomainKind::TypeII: return params_[0] / 2;
      case DomainKind::TypeIII: return params_[0];
      case DomainKind::TypeIV: return 2;
      case DomainKind::Product:
        return std::accumulate(factors_.begin(), factors_.end(), 0,
                               [](int s, const DomainSpec& f) { return s + f.rank(); });
    }
    return 0;
  }

  /// Genus of an irreducible domain (metadata only); none for products.
  std::optional<int> genus() const {
    switch (kind_) {
      case DomainKind::TypeI: return params_[0] + params_[1];
      case DomainKind::TypeII: return 2 * params_[0] - 2;
      case DomainKind::TypeIII: return params_[0] + 1;
      case DomainKind::TypeIV: return params_[0];
      case DomainKind::Product: return std::nullopt;
    }
    return std::nullopt;
  }

  int dim() const {
    switch (kind_) {
      case DomainKind::TypeI: return params_[0] * params_[1];
      case DomainKind::TypeII: return params_[0] * (params_[0] - 1) / 2;
      case DomainKind::TypeIII: return params_[0] * (params_[0] + 1) / 2;
      case DomainKind::TypeIV: return params_[0];
      case DomainKind::Product:
        return std::accumulate(factors_.begin(), factors_.end(), 0,
                               [](int s, const DomainSpec& f) { return s + f.dim(); });
    }
    return 0;
  }

  /// True for a product of TypeI(1, 1) factors (a polydisk).
  bool is_polydisk() const {
    auto is_disk = [](const DomainSpec& s) {
      return s.kind_ == DomainKind::TypeI && s.params_[0] == 1 && s.params_[1] == 1;
    };
    if (is_disk(*this)) return true;
    if (kind_ != DomainKind::Product) return false;
    for (const auto& f : factors_)
      if (!is_disk(f)) return false;
    return true;
  }

  /// Size of the square matrix I - Z Z^* (rows of Z) for matrix types.
  int matrix_rows() const {
    switch (kind_) {
      case DomainKind::TypeI:
      case DomainKind::TypeII:
      case DomainKind::TypeIII: return params_[0];
      default: throw InvalidArgument("matrix_rows: not a matrix-type domain");
    }
  }
  int matrix_cols() const {
    switch (kind_) {
      case DomainKind::TypeI: return params_[1];
      case DomainKind::TypeII:
      case DomainKind::TypeIII: return params_[0];
      default: throw InvalidArgument("matrix_cols: not a matrix-type domain");
    }
  }

  std::string name() const {
    switch (kind_) {
      case DomainKind::TypeI: return "I(" + std::to_string(params_[0]) + "," + std::to_string(params_[1]) + ")";
      case DomainKind::TypeII: return "II(" + std::to_string(params_[0]) + ")";
      case DomainKind::TypeIII: return "III(" + std::to_string(params_[0]) + ")";
      case DomainKind::TypeIV: return "IV(" + std::to_string(params_[0]) + ")";
      case DomainKind::Product: {
        std::string s;
        for (const auto& f : factors_) s += (s.empty() ? "" : "x") + f.name();
        return s;
      }
    }
    return {};
  }

  friend bool operator==(const DomainSpec& a, const DomainSpec& b) {
    return a.kind_ == b.kind_ && a.params_ == b.params_ && a.factors_ == b.factors_;
  }

 private:
  DomainSpec(DomainKind kind, std::vector<int> params, std::vector<DomainSpec> factors)
      : kind_(kind), params_(std::move(params)), factors_(std::move(factors)) {}

  DomainKind kind_;
  std::vector<int> params_;
  std::vector<DomainSpec> factors_;
};

}  // namespace hartogs
