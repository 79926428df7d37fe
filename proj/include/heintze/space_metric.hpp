#pragma once

#include <array>
#include <cstdint>

#include "heintze/sampling.hpp"
#include "heintze/spectral_basis.hpp"

namespace heintze {

/// A point (t, p) of G_M: height t over the fiber coordinate p.
struct SpacePoint {
  double t = 0.0;
  BoundaryPoint p;
};

/// d_{t,M}(p, q) = |e^{-tA}(p - q)|_inf.
double level_metric(const OrderedBasis& basis, double t, const BoundaryPoint& p,
                    const BoundaryPoint& q);

/// Smallest t with d_{t,M}(p, q) <= 1; -inf when p == q.
double first_contact_height(const OrderedBasis& basis, const BoundaryPoint& p,
                            const BoundaryPoint& q);

/// Both branches of d_L evaluated at (x, y) plus the one the definition selects.
struct PathMetricBranches {
  double t0 = 0.0;
  double upper = 0.0;  // |t - t0| + |t0 - t'| + 1
  double lower = 0.0;  // (t - t') + |e^{-tA}(p - q)|, t the larger height
  bool upper_selected = false;
  double value() const { return upper_selected ? upper : lower; }
};

PathMetricBranches d_L_branches(const OrderedBasis& basis, const SpacePoint& x, const SpacePoint& y);

/// The model metric on G_M: the upper branch when t0 >= max(t, t'), else the
/// lower branch with the pair relabeled so that t >= t'.
double d_L(const OrderedBasis& basis, const SpacePoint& x, const SpacePoint& y);

/// The vertical geodesic through p, evaluated at height t.
SpacePoint vertical_geodesic(const BoundaryPoint& p, double t);

struct PathMetricAuditReport {
  double max_ratio = 0.0;  // max d_L(x,z) / (d_L(x,y) + d_L(y,z))
  std::array<SpacePoint, 3> worst_triple;
  std::uint64_t worst_trial = 0;
  /// Largest |upper - lower| over sampled pairs whose t0 lies within 0.25 of
  /// max(t, t'), i.e. the size of the jump where the definition switches branch.
  double max_branch_jump = 0.0;
};

/// Quasimetric audit of d_L: fibers uniform in the sampler box, heights
/// uniform in [-height_radius, height_radius].
PathMetricAuditReport path_metric_triangle_audit(const OrderedBasis& basis, const Sampler& sampler,
                                                 std::uint64_t trials, double height_radius = 5.0);

}  // namespace heintze
