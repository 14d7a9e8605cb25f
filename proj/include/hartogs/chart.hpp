#pragma once

// Holomorphic charts of submanifolds of a Hartogs domain, and the slice
// constructions {(z, w) : z in Omega'} they come from.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hartogs/domains.hpp"
#include "hartogs/errors.hpp"
#include "hartogs/hartogs.hpp"
#include "hartogs/lift.hpp"
#include "hartogs/numerics/matrix.hpp"

namespace hartogs {

/// A chart (z', w) -> F(z', w) of a submanifold of M_Omega(mu). F is a
/// linear slice map, optionally followed by an automorphism `transport`.
/// Parameters range over {z' in param_base, (z', w) mapped inside}.
class Chart {
 public:
  Chart(std::string name, HartogsSpec ambient, DomainSpec param_base, LiftedMap slice,
        std::optional<LiftedMap> transport = std::nullopt)
      : name_(std::move(name)),
        ambient_(std::move(ambient)),
        param_base_(std::move(param_base)),
        slice_(std::move(slice)),
        transport_(std::move(transport)),
        map_(transport_ ? compose(*transport_, slice_) : slice_) {
    if (slice_.source_dim() != static_cast<std::size_t>(param_base_.dim()))
      throw DimensionError("Chart: slice source does not match the parameter domain");
    if (map_.target_dim() != static_cast<std::size_t>(ambient_.base().dim()))
      throw DimensionError("Chart: chart target does not match the ambient domain");
    for (const auto& s : slice_.stages())
      if (!std::holds_alternative<LinearStage>(s)) throw InvalidArgument("Chart: slice map must be linear");
    if (transport_) inverse_transport_ = transport_->inverse();
  }

  const std::string& name() const { return name_; }
  const HartogsSpec& ambient() const { return ambient_; }
  const DomainSpec& param_base() const { return param_base_; }
  const LiftedMap& map() const { return map_; }
  /// Complex dimension of the parameter space (fiber included).
  int param_dim() const { return param_base_.dim() + 1; }

  CVector embedding(const CVector& q) const { return map_(q); }

  std::vector<CVector> tangent_basis_at(const CVector& q) const {
    const CMatrix jac = map_.jacobian(q);
    std::vector<CVector> basis(jac.cols(), CVector(jac.rows()));
    for (std::size_t c = 0; c < jac.cols(); ++c)
      for (std::size_t r = 0; r < jac.rows(); ++r) basis[c][r] = jac(r, c);
    return basis;
  }

  /// d^2 F / dq_a dq_b, zero for untransported (linear) charts.
  CVector second_derivative(const CVector& q, std::size_t a, std::size_t b) const {
    CVector ea(q.size(), 0.0);
    CVector eb(q.size(), 0.0);
    ea.at(a) = 1.0;
    eb.at(b) = 1.0;
    return map_.second_derivative(q, ea, eb);
  }

  /// Euclidean distance from an ambient point to the slice, measured after
  /// undoing the transport (the slice itself is a linear subspace).
  double distance(const CVector& x) const {
    const CVector y = inverse_transport_ ? (*inverse_transport_)(x) : x;
    const CMatrix& lin = std::get<LinearStage>(slice_.stages().front()).matrix;
    std::vector<CVector> cols(lin.cols() + 1, CVector(lin.rows() + 1, 0.0));
    for (std::size_t c = 0; c < lin.cols(); ++c)
      for (std::size_t r = 0; r < lin.rows(); ++r) cols[c][r] = lin(r, c);
    cols.back().back() = 1.0;
    return span_residual(cols, y);
  }

  /// Seeded parameter point whose image lies in shrink-scaled fibers.
  CVector sample_param(double shrink, std::uint64_t seed) const {
    CVector q = sample(param_base_, shrink, seed);
    q.push_back(1.0);
    const CVector image = map_(q);
    const complex fiber = image.back();
    const DomainPoint zb(image.begin(), image.end() - 1);
    const auto zl = lift<double>(zb);
    const double nmu = generic_norm_pow<double>(ambient_.base(), std::span<const Cx<double>>(zl), ambient_.mu());
    std::mt19937_64 gen(seed ^ 0xd1b54a32d192ed03ULL);
    q.back() = shrink * std::sqrt(nmu) / std::abs(fiber) * uniform_disk(gen);
    return q;
  }

 private:
  std::string name_;
  HartogsSpec ambient_;
  DomainSpec param_base_;
  LiftedMap slice_;
  std::optional<LiftedMap> transport_;
  std::optional<LiftedMap> inverse_transport_;
  LiftedMap map_;
};

/// C_{Omega'} = {(phi(z'), w)} for a linear embedding phi of Omega' fixing 0.
inline Chart slice(const HartogsSpec& spec, const LinearMap& phi, const DomainSpec& param_base, std::string name = "slice") {
  if (phi.target_dim() != static_cast<std::size_t>(spec.base().dim()))
    throw DimensionError("slice: embedding target does not match the base");
  return Chart(std::move(name), spec, param_base, lift_embedding(phi));
}

/// The Hartogs polydisk {(phi(z), w) : z in Delta^r} from the standard
/// polydisk embedding of the base.
inline Chart polydisk_slice(const HartogsSpec& spec) {
  const auto phi = product_polydisk_embedding(spec.base());
  return slice(spec, phi, DomainSpec::polydisk(spec.base().rank()), "polydisk");
}

/// The whole domain as a chart of itself.
inline Chart identity_chart(const HartogsSpec& spec) {
  return slice(spec, LinearMap{CMatrix::identity(static_cast<std::size_t>(spec.base().dim()))}, spec.base(), "identity");
}

/// {(z, w) : z_j = 0 for j not in `factors`} over a polydisk base.
inline Chart factor_slice(const HartogsSpec& spec, const std::vector<int>& factors) {
  if (!spec.base().is_polydisk()) throw InvalidArgument("factor_slice: base must be a polydisk");
  if (factors.empty()) throw InvalidArgument("factor_slice: no factors selected");
  const auto n = static_cast<std::size_t>(spec.base().dim());
  CMatrix m(n, factors.size());
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (factors[k] < 0 || static_cast<std::size_t>(factors[k]) >= n) throw InvalidArgument("factor_slice: factor index out of range");
    m(static_cast<std::size_t>(factors[k]), k) = 1.0;
  }
  return slice(spec, LinearMap{std::move(m)}, DomainSpec::polydisk(static_cast<int>(factors.size())), "factor");
}

/// {((z, ..., z), w)} over a polydisk base.
inline Chart diagonal_slice(const HartogsSpec& spec) {
  if (!spec.base().is_polydisk()) throw InvalidArgument("diagonal_slice: base must be a polydisk");
  const auto n = static_cast<std::size_t>(spec.base().dim());
  CMatrix m(n, 1);
  for (std::size_t i = 0; i < n; ++i) m(i, 0) = 1.0;
  return slice(spec, LinearMap{std::move(m)}, DomainSpec::disk(), "diagonal");
}

/// Moves a slice of a polydisk-based domain by the lifted automorphism taking
/// 0 to zeta, giving a chart through (zeta, 0).
inline Chart through_point(const Chart& chart, const CVector& zeta) {
  const auto& spec = chart.ambient();
  if (chart.map().stages().size() != 1) throw InvalidArgument("through_point: chart is already transported");
  if (!spec.base().is_polydisk()) throw InvalidArgument("through_point: base must be a polydisk");
  if (zeta.size() != static_cast<std::size_t>(spec.base().dim())) throw DimensionError("through_point: zeta length mismatch");
  CVector a(zeta.size());
  for (std::size_t i = 0; i < zeta.size(); ++i) a[i] = -zeta[i];
  auto transport = lift_automorphism_polydisk(a, std::vector<double>(zeta.size(), 0.0), spec.mu());
  const auto& lin = std::get<LinearStage>(chart.map().stages().front()).matrix;
  return Chart(chart.name() + "@point", spec, chart.param_base(), LiftedMap(lin.cols(), {LinearStage{lin}}),
               std::move(transport));
}

}  // namespace hartogs
