#include "heintze/boundary_action.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "heintze/boundary_metric.hpp"
#include "heintze/errors.hpp"
#include "heintze/space_metric.hpp"

namespace heintze {

namespace {

std::string format_point(const BoundaryPoint& p) {
  std::ostringstream os;
  os.precision(17);
  os << '[';
  for (int i = 0; i < p.size(); ++i) os << (i ? "," : "") << p(i);
  os << ']';
  return os.str();
}

}  // namespace

InducedConstants induced_boundary_constants(const OrderedBasis& basis, const HeightRespectingMap& map,
                                            const Sampler& sampler, int trials, double tol) {
  if (trials < 1) throw DomainError("induced_boundary_constants: trials must be >= 1");
  if (!(map.fuzz >= 0.0)) throw DomainError("induced_boundary_constants: fuzz must be >= 0");
  const double lo = std::exp(map.height_shift - map.fuzz) * (1.0 - tol);
  const double hi = std::exp(map.height_shift + map.fuzz) * (1.0 + tol);
  std::vector<double> logs;
  InducedConstants out;
  for (int i = 0; i < trials; ++i) {
    Rng rng = sampler.trial_rng(static_cast<std::uint64_t>(i));
    const BoundaryPoint p = uniform_point(rng, basis.n(), sampler.radius);
    const BoundaryPoint q = uniform_point(rng, basis.n(), sampler.radius);
    const double d = dM(basis, p, q).value;
    if (!(d > 0.0)) continue;
    const BoundaryPoint fp = apply(basis, map.boundary_part, p);
    const BoundaryPoint fq = apply(basis, map.boundary_part, q);
    const double ratio = dM(basis, fp, fq).value / d;
    if (!(ratio >= lo && ratio <= hi)) {
      std::ostringstream os;
      os.precision(12);
      os << "ratio " << ratio << " outside [" << std::exp(map.height_shift - map.fuzz) << ", "
         << std::exp(map.height_shift + map.fuzz) << "] for p=" << format_point(p)
         << " q=" << format_point(q);
      throw ContractViolation(os.str());
    }
    logs.push_back(std::log(ratio));
  }
  out.pairs_used = static_cast<int>(logs.size());
  if (logs.empty()) return out;
  double mean = 0.0;
  for (double l : logs) mean += l;
  mean /= static_cast<double>(logs.size());
  double spread = 0.0;
  for (double l : logs) spread = std::max(spread, std::abs(l - mean));
  const auto [mn, mx] = std::minmax_element(logs.begin(), logs.end());
  out.factor = std::exp(mean);
  out.fuzz = std::exp(spread);
  out.min_ratio = std::exp(*mn);
  out.max_ratio = std::exp(*mx);
  return out;
}

double first_contact_consistency(const OrderedBasis& basis, const HeightRespectingMap& map,
                                 const BoundaryPoint& p, const BoundaryPoint& q) {
  if (p == q) throw DomainError("first_contact_consistency: p and q coincide");
  const double t = first_contact_height(basis, p, q);
  const double t_image = first_contact_height(basis, apply(basis, map.boundary_part, p),
                                              apply(basis, map.boundary_part, q));
  return t_image - t - map.height_shift;
}

}  // namespace heintze
