#include "heintze/boundary_metric.hpp"

#include <cmath>
#include <limits>

#include "heintze/errors.hpp"
#include "heintze/space_metric.hpp"

namespace heintze {

namespace {

BoundaryDistanceResult solve(const std::vector<ExpPoly>& components) {
  BoundaryDistanceResult out;
  const auto crossing = first_crossing(components);
  out.t0 = crossing.t0;
  if (!std::isfinite(crossing.t0)) {
    out.value = 0.0;
    return out;
  }
  const auto& c = components[crossing.argmax];
  out.witness = c.witness;
  // On the envelope the crossing is |a_0| e^{-alpha t} = 1 exactly; the power
  // form avoids the round trip through log and exp.
  out.value = crossing.on_envelope ? std::pow(std::abs(c.coeffs[0]), 1.0 / c.alpha)
                                   : std::exp(crossing.t0);
  return out;
}

}  // namespace

BoundaryDistanceResult dM(const OrderedBasis& basis, const BoundaryPoint& p, const BoundaryPoint& q) {
  return solve(exponential_components(basis, p - q));
}

BoundaryDistanceResult dM_coordinate(const OrderedBasis& basis, const BoundaryPoint& p,
                                     const BoundaryPoint& q) {
  const Vector d = p - q;
  std::vector<ExpPoly> components;
  for (const auto& chain : basis.chains()) {
    const int ell = chain.size;
    auto dx = [&](int i) { return d(chain.coordinate_of_depth[static_cast<std::size_t>(i - 1)]); };
    for (int j = 1; j <= ell; ++j) {
      ExpPoly c;
      c.alpha = chain.alpha;
      c.witness = WitnessLevel{chain.alpha, ell, j};
      double fact = 1.0;
      for (int i = j; i <= ell; ++i) {
        if (i > j) fact *= (i - j);
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        c.coeffs.push_back(sign * dx(i) / fact);
      }
      while (!c.coeffs.empty() && c.coeffs.back() == 0.0) c.coeffs.pop_back();
      if (!c.coeffs.empty()) components.push_back(std::move(c));
    }
  }
  return solve(components);
}

double euclid_cygan(const OrderedBasis& basis, const BoundaryPoint& p, const BoundaryPoint& q,
                    double t_cut) {
  const double t0 = first_contact_height(basis, p, q);
  if (!std::isfinite(t0)) return 0.0;
  if (!(t_cut <= t0 - 5.0))
    throw PrecisionError("t_cut must lie at least 5 below the first contact height");
  const double dl = d_L(basis, vertical_geodesic(p, t_cut), vertical_geodesic(q, t_cut));
  return std::exp(-0.5 * (-2.0 * t_cut - dl));
}

TriangleAuditReport quasi_triangle_audit(const OrderedBasis& basis, const Sampler& sampler,
                                         std::uint64_t trials) {
  TriangleAuditReport report;
  report.trials = trials;
  const int n = basis.n();
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Rng rng = sampler.trial_rng(trial);
    BoundaryPoint a(n), b(n), c(n);
    if (trial % 2 == 1) {
      for (int i = 0; i < n; ++i) {
        const double base = rng.dyadic(sampler.radius / 2.0);
        const double step = rng.dyadic(sampler.radius / 4.0);
        a(i) = base;
        b(i) = base + step;
        c(i) = base + 2.0 * step;
      }
    } else {
      a = uniform_point(rng, n, sampler.radius);
      b = uniform_point(rng, n, sampler.radius);
      c = uniform_point(rng, n, sampler.radius);
    }
    const double denom = dM(basis, a, b).value + dM(basis, b, c).value;
    if (!(denom > 0.0) || !std::isfinite(denom)) continue;
    const double ratio = dM(basis, a, c).value / denom;
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.worst_triple = {a, b, c};
      report.worst_trial = trial;
    }
  }
  return report;
}

}  // namespace heintze
