#pragma once

#include "heintze/maps.hpp"
#include "heintze/sampling.hpp"

namespace heintze {

/// Normal form (t, p) -> (t + a +- eps, F p) of a height-respecting quasi-isometry.
struct HeightRespectingMap {
  MapDescriptor boundary_part;
  double height_shift = 0.0;
  double fuzz = 0.0;
};

struct InducedConstants {
  /// Geometric mean of the observed ratios D_M(Fp, Fq) / D_M(p, q).
  double factor = 1.0;
  /// exp of the largest |ln ratio - ln factor|.
  double fuzz = 1.0;
  double min_ratio = 1.0;
  double max_ratio = 1.0;
  int pairs_used = 0;
};

/// Throws ContractViolation (naming the pair) when a ratio leaves
/// [e^{a - eps}, e^{a + eps}] by more than `tol` relative.
InducedConstants induced_boundary_constants(const OrderedBasis& basis, const HeightRespectingMap& map,
                                            const Sampler& sampler, int trials, double tol = 1e-9);

/// T' - T - a, with T and T' the first-contact heights of (p, q) and (Fp, Fq).
/// Throws DomainError for p == q.
double first_contact_consistency(const OrderedBasis& basis, const HeightRespectingMap& map,
                                 const BoundaryPoint& p, const BoundaryPoint& q);

}  // namespace heintze
