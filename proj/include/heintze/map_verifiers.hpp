#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heintze/length_functional.hpp"
#include "heintze/maps.hpp"
#include "heintze/sampling.hpp"

namespace heintze {

struct PointPair {
  BoundaryPoint p;
  BoundaryPoint q;
};

/// Sampled lower bound on the bilipschitz constant. Pairs at distance 0 are skipped.
struct BilipEstimate {
  /// max over pairs of max(ratio, 1/ratio), ratio = D_M(Fp, Fq) / D_M(p, q).
  double raw_constant = 1.0;
  /// Constant after dividing out the best similarity factor: sqrt(max ratio / min ratio).
  double qsim_constant = 1.0;
  /// Geometric midpoint sqrt(max ratio * min ratio).
  double sim_factor = 1.0;
  bool is_similarity = false;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  std::optional<PointPair> witness;
  int pairs_used = 0;
};

/// Ratios within 1 + similarity_tol of each other are reported as a similarity.
BilipEstimate bilip_constant_estimate(const OrderedBasis& basis, const MapDescriptor& map,
                                      const Sampler& sampler, int trials,
                                      double similarity_tol = 1e-9);

struct FoliationWitness {
  BoundaryPoint p;
  BoundaryPoint q;
  Level image_level;
};

/// Samples p and q = p + u with u supported on the levels stored before
/// `level`, and checks that F p - F q is again supported there (to tol
/// relative to the image size). Returns the first offending pair.
std::optional<FoliationWitness> foliation_check(const OrderedBasis& basis, const MapDescriptor& map,
                                                const Level& level, const Sampler& sampler,
                                                int trials, double tol = 1e-9);

struct NonbilipWitness {
  BoundaryPoint p;
  BoundaryPoint q;
  Classification source;
  Classification image;
  /// lower(Fp, Fq) / upper(p, q) at each schedule entry.
  std::vector<double> evidence_ratio;
};

/// Searches pairs differing only on `level` whose length functional is Finite
/// while that of the image pair diverges.
std::optional<NonbilipWitness> nonbilip_witness_via_triangle(
    const OrderedBasis& basis, const MapDescriptor& map, const Level& level, const Sampler& sampler,
    int trials, const std::vector<double>& schedule = default_schedule());

struct ModulusSample {
  double w = 0.0;
  double displacement = 0.0;
  double envelope = 0.0;
};

struct ModulusCurve {
  Level source;
  Level target;
  std::vector<ModulusSample> samples;  // ascending w
};

/// Sup of the target-level displacement |F(p) - F(q)|_inf over pairs with
/// q - p of Euclidean size w on the source level, plus its running max.
/// Throws DomainError unless the target is stored before the source.
ModulusCurve xi_modulus_curve(const OrderedBasis& basis, const MapDescriptor& map, const Level& source,
                              const Level& target, std::vector<double> grid, const Sampler& sampler,
                              int trials_per_w = 64);

/// Two leaf rotations of one level and the translations paired with them. y
/// and y_prime are the coordinates of the levels stored after it.
struct RotationPair {
  Level level;
  Matrix rotation_y;
  Matrix rotation_y_prime;
  Vector translation_y;
  Vector translation_y_prime;
  Vector y;
  Vector y_prime;
};

enum class BlowupVerdict { NoBlowup, Violation, Inconclusive };
std::string to_string(BlowupVerdict verdict);

struct BlowupRow {
  double radius = 0.0;
  double displacement = 0.0;
  double preimage_distance = 0.0;
  double ratio = 0.0;  // displacement / radius
};

struct BlowupReport {
  BlowupVerdict verdict = BlowupVerdict::Inconclusive;
  double top_singular_value = 0.0;
  std::vector<BlowupRow> rows;
};

/// Throws DomainError for non-orthogonal rotations or mismatched dimensions.
BlowupReport rotation_blowup_experiment(const OrderedBasis& basis, const RotationPair& pair,
                                        const std::vector<double>& radii);

/// max over levels of |(gamma^n p - p)_i - sum_{m<n} B_i((gamma^m p)_{>i})|_inf,
/// relative to max(1, |rhs|). Throws DomainError for n < 1.
double cocycle_iterate_check(const OrderedBasis& basis, const UnipotentShear& shear,
                             const BoundaryPoint& p, int n);

struct ShearBoundRow {
  int n = 0;
  /// |B_{i,gamma^n}(y) - B_{i,gamma^n}(y')|_inf
  double oscillation = 0.0;
  /// max_{s<n} of |B_{i,gamma}(gamma^s y) - B_{i,gamma}(y)|_inf over y and y'
  double drift = 0.0;
  /// oscillation / n + 2 drift
  double bound = 0.0;
};

struct ShearBoundReport {
  /// |B_{i,gamma}(y) - B_{i,gamma}(y')|_inf
  double base_oscillation = 0.0;
  std::vector<ShearBoundRow> rows;
  bool bound_holds = true;
};

/// y and y_prime are coordinates of the levels stored after level number i.
/// Throws DomainError for n_max < 2.
ShearBoundReport shear_bound_experiment(const OrderedBasis& basis, const UnipotentShear& shear,
                                        std::size_t level, const Vector& y, const Vector& y_prime,
                                        int n_max);

}  // namespace heintze
