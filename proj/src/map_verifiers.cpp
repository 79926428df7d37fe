#include "heintze/map_verifiers.hpp"

#include <algorithm>
#include <cmath>

#include "heintze/boundary_metric.hpp"
#include "heintze/errors.hpp"

namespace heintze {

BilipEstimate bilip_constant_estimate(const OrderedBasis& basis, const MapDescriptor& map,
                                      const Sampler& sampler, int trials, double similarity_tol) {
  if (trials < 1) throw DomainError("bilip_constant_estimate: trials must be >= 1");
  BilipEstimate est;
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    Rng rng = sampler.trial_rng(static_cast<std::uint64_t>(i));
    const BoundaryPoint p = uniform_point(rng, basis.n(), sampler.radius);
    const BoundaryPoint q = uniform_point(rng, basis.n(), sampler.radius);
    const double d = dM(basis, p, q).value;
    if (!(d > 0.0)) continue;
    const double ratio = dM(basis, apply(basis, map, p), apply(basis, map, q)).value / d;
    if (est.pairs_used == 0) {
      est.min_ratio = est.max_ratio = ratio;
    } else {
      est.min_ratio = std::min(est.min_ratio, ratio);
      est.max_ratio = std::max(est.max_ratio, ratio);
    }
    ++est.pairs_used;
    const double distortion = std::max(ratio, 1.0 / ratio);
    if (distortion > worst) {
      worst = distortion;
      est.witness = PointPair{p, q};
    }
  }
  if (est.pairs_used == 0) return est;
  est.raw_constant = std::max(1.0, worst);
  est.qsim_constant = std::sqrt(est.max_ratio / est.min_ratio);
  est.sim_factor = std::sqrt(est.max_ratio * est.min_ratio);
  est.is_similarity = est.max_ratio <= est.min_ratio * (1.0 + similarity_tol);
  return est;
}

std::optional<FoliationWitness> foliation_check(const OrderedBasis& basis, const MapDescriptor& map,
                                                const Level& level, const Sampler& sampler,
                                                int trials, double tol) {
  if (trials < 1) throw DomainError("foliation_check: trials must be >= 1");
  const int leaf_dim = basis.range_of(level).offset;
  if (leaf_dim == 0) return std::nullopt;
  for (int i = 0; i < trials; ++i) {
    Rng rng = sampler.trial_rng(static_cast<std::uint64_t>(i));
    const BoundaryPoint p = uniform_point(rng, basis.n(), sampler.radius);
    BoundaryPoint q = p;
    for (int c = 0; c < leaf_dim; ++c) q(c) += rng.uniform(-sampler.radius, sampler.radius);
    const BoundaryPoint fp = apply(basis, map, p);
    const BoundaryPoint fq = apply(basis, map, q);
    const double scale = std::max({1.0, fp.cwiseAbs().maxCoeff(), fq.cwiseAbs().maxCoeff()});
    const auto image_level = leaf_level_of_difference(basis, fp, fq, tol * scale);
    if (image_level && !level_less(*image_level, level))
      return FoliationWitness{p, q, *image_level};
  }
  return std::nullopt;
}

std::optional<NonbilipWitness> nonbilip_witness_via_triangle(
    const OrderedBasis& basis, const MapDescriptor& map, const Level& level, const Sampler& sampler,
    int trials, const std::vector<double>& schedule) {
  if (trials < 1) throw DomainError("nonbilip_witness_via_triangle: trials must be >= 1");
  const auto& range = basis.range_of(level);
  for (int i = 0; i < trials; ++i) {
    Rng rng = sampler.trial_rng(static_cast<std::uint64_t>(i));
    const BoundaryPoint p = uniform_point(rng, basis.n(), sampler.radius);
    BoundaryPoint q = p;
    for (int c = 0; c < range.width; ++c)
      q(range.offset + c) += rng.uniform(-sampler.radius, sampler.radius);
    const Classification source = classify_triangle(basis, p, q, level, schedule);
    if (source.kind != TriangleKind::Finite) continue;
    const BoundaryPoint fp = apply(basis, map, p);
    const BoundaryPoint fq = apply(basis, map, q);
    const Classification image = classify_triangle(basis, fp, fq, level, schedule);
    std::vector<double> ratio;
    bool growing = true;
    for (std::size_t k = 0; k < image.evidence.size(); ++k) {
      ratio.push_back(image.evidence[k].lower / source.evidence[k].upper);
      if (k > 0 && !(ratio[k] > ratio[k - 1])) growing = false;
    }
    const bool diverges = image.kind == TriangleKind::Infinite ||
                          (growing && !ratio.empty() && ratio.back() > 1e3);
    if (diverges) return NonbilipWitness{p, q, source, image, std::move(ratio)};
  }
  return std::nullopt;
}

ModulusCurve xi_modulus_curve(const OrderedBasis& basis, const MapDescriptor& map, const Level& source,
                              const Level& target, std::vector<double> grid, const Sampler& sampler,
                              int trials_per_w) {
  if (!level_less(target, source))
    throw DomainError("xi_modulus_curve: target level must be stored before the source level");
  if (trials_per_w < 1) throw DomainError("xi_modulus_curve: trials_per_w must be >= 1");
  const auto& src = basis.range_of(source);
  const auto& tgt = basis.range_of(target);
  std::sort(grid.begin(), grid.end());
  ModulusCurve curve{source, target, {}};
  double envelope = 0.0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double w = grid[g];
    if (!(w >= 0.0)) throw DomainError("xi_modulus_curve: grid entries must be nonnegative");
    double sup = 0.0;
    for (int i = 0; i < trials_per_w; ++i) {
      Rng rng = sampler.trial_rng(g * static_cast<std::uint64_t>(trials_per_w) + i);
      const BoundaryPoint p = uniform_point(rng, basis.n(), sampler.radius);
      BoundaryPoint q = p;
      q.segment(src.offset, src.width) += w * unit_direction(rng, src.width);
      const Vector diff = apply(basis, map, p) - apply(basis, map, q);
      sup = std::max(sup, diff.segment(tgt.offset, tgt.width).cwiseAbs().maxCoeff());
    }
    envelope = std::max(envelope, sup);
    curve.samples.push_back({w, sup, envelope});
  }
  return curve;
}

std::string to_string(BlowupVerdict verdict) {
  switch (verdict) {
    case BlowupVerdict::NoBlowup: return "NoBlowup";
    case BlowupVerdict::Violation: return "Violation";
    case BlowupVerdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

BlowupReport rotation_blowup_experiment(const OrderedBasis& basis, const RotationPair& pair,
                                        const std::vector<double>& radii) {
  const auto& range = basis.range_of(pair.level);
  const int w = range.width;
  const int above = basis.n() - (range.offset + w);
  const auto check_rotation = [w](const Matrix& a) {
    if (a.rows() != w || a.cols() != w) throw DomainError("rotation_blowup: rotation has wrong size");
    if ((a.transpose() * a - Matrix::Identity(w, w)).cwiseAbs().maxCoeff() > 1e-10)
      throw DomainError("rotation_blowup: rotation is not orthogonal");
  };
  check_rotation(pair.rotation_y);
  check_rotation(pair.rotation_y_prime);
  if (pair.translation_y.size() != w || pair.translation_y_prime.size() != w)
    throw DomainError("rotation_blowup: translation has wrong size");
  if (pair.y.size() != above || pair.y_prime.size() != above)
    throw DomainError("rotation_blowup: y must hold the coordinates above the level");

  BlowupReport report;
  const Matrix gap = pair.rotation_y - pair.rotation_y_prime;
  if (gap.cwiseAbs().maxCoeff() <= 1e-10) {
    report.verdict = BlowupVerdict::NoBlowup;
    return report;
  }
  Eigen::JacobiSVD<Matrix> svd(gap, Eigen::ComputeFullV);
  report.top_singular_value = svd.singularValues()(0);
  const Vector direction = svd.matrixV().col(0);

  for (double r : radii) {
    const Vector z = r * direction;
    BoundaryPoint x = BoundaryPoint::Zero(basis.n());
    BoundaryPoint xp = BoundaryPoint::Zero(basis.n());
    x.segment(range.offset, w) = z - pair.translation_y;
    xp.segment(range.offset, w) = z - pair.translation_y_prime;
    x.tail(above) = pair.y;
    xp.tail(above) = pair.y_prime;
    const double displacement = (pair.rotation_y * z - pair.rotation_y_prime * z).norm();
    const double dist = dM(basis, x, xp).value;
    report.rows.push_back({r, displacement, dist, r > 0.0 ? displacement / r : 0.0});
  }

  bool growing = report.rows.size() >= 2;
  double dmin = report.rows.empty() ? 0.0 : report.rows.front().preimage_distance;
  double dmax = dmin;
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    if (i > 0 && !(report.rows[i].displacement > report.rows[i - 1].displacement)) growing = false;
    dmin = std::min(dmin, report.rows[i].preimage_distance);
    dmax = std::max(dmax, report.rows[i].preimage_distance);
  }
  const bool constant = dmax - dmin <= 1e-9 * std::max(1.0, dmax);
  report.verdict = growing && constant ? BlowupVerdict::Violation : BlowupVerdict::Inconclusive;
  return report;
}

double cocycle_iterate_check(const OrderedBasis& basis, const UnipotentShear& shear,
                             const BoundaryPoint& p, int n) {
  if (n < 1) throw DomainError("cocycle_iterate_check: n must be >= 1");
  BoundaryPoint iterate = p;
  for (int m = 0; m < n; ++m) iterate = apply_shear_suffix(basis, shear, 0, iterate);
  double residual = 0.0;
  for (std::size_t i = 0; i < basis.ranges().size(); ++i) {
    const auto& r = basis.ranges()[i];
    const int above = suffix_offset(basis, i);
    const Vector lhs = iterate.segment(r.offset, r.width) - p.segment(r.offset, r.width);
    Vector y = p.tail(basis.n() - above);
    Vector rhs = Vector::Zero(r.width);
    for (int m = 0; m < n; ++m) {
      rhs += shear_displacement(basis, shear, i, y);
      y = apply_shear_suffix(basis, shear, i + 1, y);
    }
    const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
    residual = std::max(residual, (lhs - rhs).cwiseAbs().maxCoeff() / scale);
  }
  return residual;
}

ShearBoundReport shear_bound_experiment(const OrderedBasis& basis, const UnipotentShear& shear,
                                        std::size_t level, const Vector& y, const Vector& y_prime,
                                        int n_max) {
  if (n_max < 2) throw DomainError("shear_bound_experiment: n_max must be >= 2");
  const auto next = level + 1;
  const Vector b0 = shear_displacement(basis, shear, level, y);
  const Vector b0p = shear_displacement(basis, shear, level, y_prime);
  ShearBoundReport report;
  report.base_oscillation = (b0 - b0p).cwiseAbs().maxCoeff();

  Vector orbit = y;
  Vector orbit_p = y_prime;
  Vector sum = Vector::Zero(b0.size());
  Vector sum_p = Vector::Zero(b0.size());
  double drift = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const Vector b = shear_displacement(basis, shear, level, orbit);
    const Vector bp = shear_displacement(basis, shear, level, orbit_p);
    drift = std::max({drift, (b - b0).cwiseAbs().maxCoeff(), (bp - b0p).cwiseAbs().maxCoeff()});
    sum += b;
    sum_p += bp;
    orbit = apply_shear_suffix(basis, shear, next, orbit);
    orbit_p = apply_shear_suffix(basis, shear, next, orbit_p);

    ShearBoundRow row;
    row.n = n;
    row.oscillation = (sum - sum_p).cwiseAbs().maxCoeff();
    row.drift = drift;
    row.bound = row.oscillation / n + 2.0 * drift;
    if (report.base_oscillation > row.bound * (1.0 + 1e-12) + 1e-12) report.bound_holds = false;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace heintze
