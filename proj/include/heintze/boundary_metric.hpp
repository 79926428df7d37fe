#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "heintze/exp_poly.hpp"
#include "heintze/sampling.hpp"
#include "heintze/spectral_basis.hpp"

namespace heintze {

/// D_M(p, q) = e^{t0}. `value` may overflow to +inf for far-apart points;
/// `t0` stays finite for every p != q.
struct BoundaryDistanceResult {
  double value = 0.0;
  double t0 = 0.0;
  std::optional<WitnessLevel> witness;
};

/// D_M through the exact block exponential of A. This is the reference
/// implementation; everything else is checked against it.
BoundaryDistanceResult dM(const OrderedBasis& basis, const BoundaryPoint& p, const BoundaryPoint& q);

/// D_M from the explicit coordinate formula
///
///   1 >= max_{alpha, chain, j} e^{-alpha t} | sum_{i=j}^{ell} (-1)^i t^{i-j}/(i-j)! dx_{alpha,i} |
///
/// where ell is the length of the chain and dx_{alpha,i} is the chain's
/// coordinate on level i. The (-1)^i sign differs from the term-by-term
/// expansion of e^{-tA}, which carries (-1)^{i-j}, only by the factor (-1)^j
/// inside the absolute value, so the formula is used verbatim. The witness
/// names the (alpha, ell, j) term attaining the max at t0.
BoundaryDistanceResult dM_coordinate(const OrderedBasis& basis, const BoundaryPoint& p,
                                     const BoundaryPoint& q);

/// e^{-(-2t - d_L(p_t, q_t))/2} at t = t_cut along vertical geodesics, which
/// equals e^{t0 + 1/2} once the upper branch of d_L is active.
/// Throws PrecisionError unless t_cut <= t0 - 5.
double euclid_cygan(const OrderedBasis& basis, const BoundaryPoint& p, const BoundaryPoint& q,
                    double t_cut);

struct TriangleAuditReport {
  double max_ratio = 0.0;  // max D(a,c) / (D(a,b) + D(b,c))
  std::array<BoundaryPoint, 3> worst_triple;
  std::uint64_t worst_trial = 0;
  std::uint64_t trials = 0;
};

/// Samples triples (uniform in the sampler box; every odd trial is a collinear
/// dyadic triple a, a+v, a+2v) and records the worst triangle ratio. Ties keep
/// the lowest trial index.
TriangleAuditReport quasi_triangle_audit(const OrderedBasis& basis, const Sampler& sampler,
                                         std::uint64_t trials);

}  // namespace heintze
