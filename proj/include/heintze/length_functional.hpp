#pragma once

#include <string>
#include <vector>

#include "heintze/spectral_basis.hpp"

namespace heintze {

/// eta_{alpha,j}(w) = j! w^alpha / |ln w|^j on 0 < w < 1. Throws DomainError otherwise.
double eta(double alpha, int j, double w);

/// Chain bounds at resolution k (every step of the chain has D_M = 1/k).
struct ChainBound {
  double k = 0.0;
  double upper = 0.0;
  double lower = 0.0;
};

// The functional attached to a level (alpha, ell) uses the gauge
// eta_{alpha, ell-1}: the exponent of |ln w| is the nilpotency depth of the
// level, which is what makes a difference supported on (alpha, ell) have
// finite, nonzero length.

/// Length of the concatenated straight chains, one per level on which p and q
/// differ. A straight segment along a single level has steps of D_M exactly 1/k
/// and needs |e^{(ln k)A} x_level|_inf of them, so the bound is
/// eta(1/k) * sum_levels |e^{(ln k)A} x_level|_inf. Requires k >= 3.
double chain_upper_bound(const OrderedBasis& basis, const BoundaryPoint& p, const BoundaryPoint& q,
                         const Level& level, double k);

/// Bound valid for every chain of step 1/k: each step satisfies
/// |e^{(ln k)A} step|_inf = 1, so by the triangle inequality any such chain has
/// at least |e^{(ln k)A}(p - q)|_inf steps, each costing eta(1/k). Requires k >= 3.
double chain_lower_bound(const OrderedBasis& basis, const BoundaryPoint& p, const BoundaryPoint& q,
                         const Level& level, double k);

enum class TriangleKind { Zero, Finite, Infinite, Inconclusive };

std::string to_string(TriangleKind kind);

struct Classification {
  TriangleKind kind = TriangleKind::Inconclusive;
  double value = 0.0;  // meaningful for Finite
  std::vector<ChainBound> evidence;
  /// d ln(bound) / d ln(ln k) between the last two schedule entries.
  double upper_rate = 0.0;
  double lower_rate = 0.0;
};

struct ClassifyOptions {
  double divergence_threshold = 1e3;
  double vanishing_threshold = 1e-6;
  double finite_rel_tol = 0.05;
  /// Minimum |d ln(bound) / d ln(ln k)| read as growth or decay. Bounds behave
  /// like C k^a (ln k)^b, so a converged finite value has rate ~0 while a
  /// depth mismatch moves it by at least 1.
  double rate_threshold = 0.5;
};

std::vector<double> default_schedule();

/// Schedule actually used for a basis: entries with ln k below the largest
/// nilpotency depth (where the polynomial factor of e^{tA} is not yet led by
/// its top term) are dropped, and squares of the last entry are appended until
/// at least three remain.
std::vector<double> effective_schedule(const OrderedBasis& basis, const std::vector<double>& schedule);

/// Zero / Finite / Infinite verdict for the length functional at `level`.
/// Infinite: the lower bound increases along the schedule and either exceeds
/// the divergence threshold or grows at rate >= rate_threshold. Zero: the upper
/// bound decreases along the schedule and either falls below the vanishing
/// threshold or decays at rate <= -rate_threshold. Finite: the final bounds
/// agree within finite_rel_tol and neither moves at the threshold rate.
/// Anything else is Inconclusive. Throws DomainError for a schedule that is not
/// increasing or has fewer than 3 entries.
Classification classify_triangle(const OrderedBasis& basis, const BoundaryPoint& p,
                                 const BoundaryPoint& q, const Level& level,
                                 const std::vector<double>& schedule = default_schedule(),
                                 const ClassifyOptions& options = {});

}  // namespace heintze
