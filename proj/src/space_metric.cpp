#include "heintze/space_metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "heintze/exp_poly.hpp"

namespace heintze {

double level_metric(const OrderedBasis& basis, double t, const BoundaryPoint& p,
                    const BoundaryPoint& q) {
  const Vector d = p - q;
  if (d.isZero(0.0)) return 0.0;
  return apply_exp_tA(basis, -t, d).cwiseAbs().maxCoeff();
}

double first_contact_height(const OrderedBasis& basis, const BoundaryPoint& p,
                            const BoundaryPoint& q) {
  return first_crossing(exponential_components(basis, p - q)).t0;
}

PathMetricBranches d_L_branches(const OrderedBasis& basis, const SpacePoint& x, const SpacePoint& y) {
  PathMetricBranches b;
  b.t0 = first_contact_height(basis, x.p, y.p);
  if (std::isfinite(b.t0))
    b.upper = std::abs(x.t - b.t0) + std::abs(b.t0 - y.t) + 1.0;
  else
    b.upper = std::numeric_limits<double>::infinity();
  const SpacePoint& hi = (x.t >= y.t) ? x : y;
  const SpacePoint& lo = (x.t >= y.t) ? y : x;
  b.lower = (hi.t - lo.t) + level_metric(basis, hi.t, hi.p, lo.p);
  b.upper_selected = b.t0 >= std::max(x.t, y.t);
  return b;
}

double d_L(const OrderedBasis& basis, const SpacePoint& x, const SpacePoint& y) {
  return d_L_branches(basis, x, y).value();
}

SpacePoint vertical_geodesic(const BoundaryPoint& p, double t) { return SpacePoint{t, p}; }

PathMetricAuditReport path_metric_triangle_audit(const OrderedBasis& basis, const Sampler& sampler,
                                                 std::uint64_t trials, double height_radius) {
  PathMetricAuditReport report;
  auto measure = [&](const SpacePoint& a, const SpacePoint& b) {
    const auto br = d_L_branches(basis, a, b);
    if (std::isfinite(br.t0) && std::abs(br.t0 - std::max(a.t, b.t)) < 0.25)
      report.max_branch_jump = std::max(report.max_branch_jump, std::abs(br.upper - br.lower));
    return br.value();
  };
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Rng rng = sampler.trial_rng(trial);
    std::array<SpacePoint, 3> pts;
    for (auto& x : pts) {
      x.p = uniform_point(rng, basis.n(), sampler.radius);
      x.t = rng.uniform(-height_radius, height_radius);
    }
    const double denom = measure(pts[0], pts[1]) + measure(pts[1], pts[2]);
    if (!(denom > 0.0)) continue;
    const double ratio = measure(pts[0], pts[2]) / denom;
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.worst_triple = pts;
      report.worst_trial = trial;
    }
  }
  return report;
}

}  // namespace heintze
