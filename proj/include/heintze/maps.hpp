#pragma once

#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "heintze/sampling.hpp"
#include "heintze/spectral_basis.hpp"

namespace heintze {

/// Image coordinates of one level. The argument is the suffix of the input
/// starting at that level (its own coordinates first, then every more dominant
/// level), so a triangular map has no way to read less dominant coordinates.
using LevelFunction = std::function<Vector(std::span<const double> level_and_above)>;

/// y_L = f_L(x_L, x_{L+1}, ..., x_r), one function per level in storage order.
struct TriangularMap {
  std::vector<LevelFunction> per_level;
};

/// x -> M^s (Lambda R (x + B)). R is orthogonal and block diagonal on levels;
/// Lambda is a positive scalar per level (storage order).
struct AffineQSim {
  double s = 0.0;
  Matrix rotation;
  Vector translation;
  Vector level_scale;
};

/// Displacement of level i as a function of the strictly more dominant levels.
/// The topmost level receives an empty span.
using ShearFunction = std::function<Vector(std::span<const double> above)>;

/// x_i -> x_i + B_i(x_{i+1}, ..., x_r), one function per level in storage order.
struct UnipotentShear {
  std::vector<ShearFunction> displacement;
};

/// Black-box evaluator.
struct SampledMap {
  std::function<BoundaryPoint(const BoundaryPoint&)> eval;
  std::string name = "sampled";
};

using MapDescriptor = std::variant<TriangularMap, AffineQSim, UnipotentShear, SampledMap>;

BoundaryPoint apply(const OrderedBasis& basis, const MapDescriptor& map, const BoundaryPoint& p);

TriangularMap identity_triangular(const OrderedBasis& basis);

/// Validates R^T R = I to 1e-10, block-diagonal structure on levels and
/// positive scales. Empty `level_scale` means all ones. Throws DomainError.
AffineQSim make_affine_qsim(const OrderedBasis& basis, double s, Matrix rotation, Vector translation,
                            Vector level_scale = {});
AffineQSim dilation_map(const OrderedBasis& basis, double t);
AffineQSim translation_map(const OrderedBasis& basis, const Vector& v);

/// first o second. Requires Lambda_1 R_1 to commute with M^{s_2}; throws DomainError otherwise.
AffineQSim compose(const OrderedBasis& basis, const AffineQSim& first, const AffineQSim& second);

SampledMap linear_map(Matrix matrix, std::string name = "linear");

/// One monomial coef * prod_k above[k]^powers[k] added to component `out` of a level.
struct PolyTerm {
  int out = 0;
  double coef = 0.0;
  std::vector<int> powers;
};

/// Polynomial shear; terms[i] lists the monomials of level i (storage order).
/// Powers must have one entry per more dominant coordinate of that level.
UnipotentShear polynomial_shear(const OrderedBasis& basis, std::vector<std::vector<PolyTerm>> terms);

/// Shear restricted to the levels numbered >= first_level, acting on that suffix.
Vector apply_shear_suffix(const OrderedBasis& basis, const UnipotentShear& shear,
                          std::size_t first_level, const Vector& suffix);

/// Top-down back substitution.
BoundaryPoint apply_shear_inverse(const OrderedBasis& basis, const UnipotentShear& shear,
                                  const BoundaryPoint& y);

UnipotentShear invert(const OrderedBasis& basis, const UnipotentShear& shear);

/// B_{i,gamma}(above) for level number i.
Vector shear_displacement(const OrderedBasis& basis, const UnipotentShear& shear, std::size_t level,
                          const Vector& above);

/// Random triangular map: each level is an invertible linear function of its
/// own coordinates plus a translation and bounded sinusoidal terms in the
/// dominant coordinates.
TriangularMap random_triangular_map(const OrderedBasis& basis, Rng& rng);

/// Random polynomial shear with monomials of total degree <= max_degree and
/// coefficients uniform in [-coef_radius, coef_radius].
UnipotentShear random_polynomial_shear(const OrderedBasis& basis, Rng& rng, int max_degree = 2,
                                       double coef_radius = 0.5);

/// Offset of the first coordinate strictly above level number i.
int suffix_offset(const OrderedBasis& basis, std::size_t level);

}  // namespace heintze
