#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "heintze/boundary_metric.hpp"
#include "heintze/errors.hpp"
#include "heintze/map_verifiers.hpp"
#include "heintze/maps.hpp"
#include "oracles.hpp"

using namespace heintze;

namespace {

OrderedBasis basis_of(std::vector<EigenBlocks> blocks) { return build_basis(JordanSpec::make(std::move(blocks))); }

// Swaps coordinate 0 (level (1,1)) with coordinate 2 (level (2,1)).
SampledMap swap_map() {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 2) = m(2, 0) = m(1, 1) = 1.0;
  return linear_map(m, "swap");
}

const OrderedBasis& mixed() {
  static const OrderedBasis b = basis_of({{1.0, {2}}, {2.0, {1}}});
  return b;
}

Matrix rotation2(double theta) {
  Matrix r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

// Orthogonal, block diagonal on levels.
Matrix random_level_rotation(const OrderedBasis& b, Rng& rng) {
  Matrix r = Matrix::Zero(b.n(), b.n());
  for (const auto& range : b.ranges()) {
    Matrix g(range.width, range.width);
    for (int i = 0; i < range.width; ++i)
      for (int j = 0; j < range.width; ++j) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Matrix> qr(g);
    r.block(range.offset, range.offset, range.width, range.width) = qr.householderQ();
  }
  return r;
}

double rel_diff(const Vector& a, const Vector& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

}  // namespace

TEST(Apply, TrivialMaps) {
  const auto& b = mixed();
  const Vector p = (Vector(3) << 1.0, -2.0, 3.5).finished();
  EXPECT_EQ(apply(b, identity_triangular(b), p), p);
  EXPECT_EQ(apply(b, make_affine_qsim(b, 0.0, Matrix::Identity(3, 3), Vector::Zero(3)), p), p);
  EXPECT_THROW(apply(b, identity_triangular(b), Vector::Zero(2)), DomainError);
}

TEST(Apply, ConstantTopShearAddsToLastLevel) {
  const auto& b = mixed();
  const auto shear = polynomial_shear(b, {{}, {}, {PolyTerm{0, 2.5, {}}}});
  const Vector p = (Vector(3) << 1.0, -2.0, 3.5).finished();
  const Vector out = apply(b, shear, p);
  EXPECT_EQ(out(0), 1.0);
  EXPECT_EQ(out(1), -2.0);
  EXPECT_EQ(out(2), 6.0);
}

TEST(Apply, AffineMatchesFormula) {
  const auto b = basis_of({{1.0, {1, 1}}, {2.0, {2}}});
  Rng rng(41);
  const Matrix r = random_level_rotation(b, rng);
  const Vector t = uniform_point(rng, 4, 3.0);
  Vector scale(3);
  scale << 0.5, 2.0, 2.0;
  const auto f = make_affine_qsim(b, 0.3, r, t, scale);
  const Vector x = uniform_point(rng, 4, 3.0);
  Vector lam(4);
  lam << 0.5, 0.5, 2.0, 2.0;
  const Vector expected = oracle::exp_tA_storage(b, 0.3) * (lam.asDiagonal() * (r * (x + t)));
  EXPECT_LE(rel_diff(apply(b, f, x), expected), 1e-12);
}

TEST(AffineQSim, Validation) {
  const auto& b = mixed();
  Matrix skew = Matrix::Identity(3, 3);
  skew(0, 0) = 1.1;
  EXPECT_THROW(make_affine_qsim(b, 0.0, skew, Vector::Zero(3)), DomainError);
  Matrix cross = Matrix::Zero(3, 3);
  cross(0, 2) = cross(2, 0) = cross(1, 1) = 1.0;  // orthogonal but mixes levels
  EXPECT_THROW(make_affine_qsim(b, 0.0, cross, Vector::Zero(3)), DomainError);
  EXPECT_THROW(make_affine_qsim(b, 0.0, Matrix::Identity(3, 3), Vector::Zero(3), Vector::Zero(3)), DomainError);
  EXPECT_THROW(make_affine_qsim(b, 0.0, Matrix::Identity(3, 3), Vector::Zero(3), Vector::Ones(2)), DomainError);
  EXPECT_THROW(make_affine_qsim(b, 0.0, Matrix::Identity(2, 2), Vector::Zero(3)), DomainError);
  EXPECT_THROW(dilation_map(b, 0.0), DomainError);
}

TEST(AffineQSim, CompositionClosureDiagonal) {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<EigenBlocks> blocks;
    for (int i = 0, n = rng.integer(1, 3); i < n; ++i) blocks.push_back({0.5 + i + rng.uniform(0, 0.5), {1, 1}});
    const auto b = basis_of(blocks);
    const auto levels = static_cast<int>(b.ranges().size());
    const auto random_map = [&] {
      Vector scale(levels);
      for (int i = 0; i < levels; ++i) scale(i) = rng.uniform(0.2, 5.0);
      return make_affine_qsim(b, rng.uniform(-2, 2), random_level_rotation(b, rng), uniform_point(rng, b.n(), 5.0), scale);
    };
    const auto f = random_map(), g = random_map();
    const auto fg = compose(b, f, g);
    EXPECT_NEAR(fg.s, f.s + g.s, 1e-15);
    for (int k = 0; k < 5; ++k) {
      const Vector x = uniform_point(rng, b.n(), 5.0);
      EXPECT_LE(rel_diff(apply(b, fg, x), apply(b, f, apply(b, g, x))), 1e-10);
    }
  }
}

TEST(AffineQSim, CompositionClosureJordan) {
  Rng rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const auto b = build_basis(oracle::random_spec(rng, 5, 0.5, 3.0, 3));
    const auto levels = static_cast<int>(b.ranges().size());
    // Scalar linear parts commute with every M^s.
    const auto random_map = [&] {
      const double lam = rng.uniform(0.2, 5.0);
      const double sign = rng.unit() < 0.5 ? -1.0 : 1.0;
      return make_affine_qsim(b, rng.uniform(-2, 2), sign * Matrix::Identity(b.n(), b.n()),
                              uniform_point(rng, b.n(), 5.0), Vector::Constant(levels, lam));
    };
    const auto f = random_map(), g = random_map();
    const auto fg = compose(b, f, g);
    const Vector x = uniform_point(rng, b.n(), 5.0);
    EXPECT_LE(rel_diff(apply(b, fg, x), apply(b, f, apply(b, g, x))), 1e-10);
  }
}

TEST(AffineQSim, CompositionRejectsNonCommuting) {
  const auto b = basis_of({{1.0, {2}}});
  Vector scale(2);
  scale << 1.0, 3.0;  // different scales on the two levels of one chain
  const auto f = make_affine_qsim(b, 0.0, Matrix::Identity(2, 2), Vector::Zero(2), scale);
  const auto g = make_affine_qsim(b, 1.0, Matrix::Identity(2, 2), Vector::Zero(2));
  EXPECT_THROW(compose(b, f, g), DomainError);
  EXPECT_NO_THROW(compose(b, g, f));
}

TEST(Shear, InverseRoundTrip) {
  Rng rng(44);
  for (int trial = 0; trial < 300; ++trial) {
    const auto b = build_basis(oracle::random_spec(rng));
    const auto shear = random_polynomial_shear(b, rng);
    const auto inv = invert(b, shear);
    const Vector p = uniform_point(rng, b.n(), 2.0);
    const Vector y = apply(b, shear, p);
    EXPECT_LE(rel_diff(apply_shear_inverse(b, shear, y), p), 1e-12);
    EXPECT_LE(rel_diff(apply(b, shear, apply_shear_inverse(b, shear, p)), p), 1e-12);
    EXPECT_LE(rel_diff(apply(b, inv, y), p), 1e-12);
    EXPECT_LE(rel_diff(apply(b, shear, apply(b, inv, p)), p), 1e-12);
  }
}

TEST(Shear, PolynomialValidation) {
  const auto& b = mixed();
  EXPECT_THROW(polynomial_shear(b, {{PolyTerm{1, 1.0, {}}}}), DomainError);  // level (1,1) has width 1
  EXPECT_THROW(polynomial_shear(b, {{}, {}, {PolyTerm{0, 1.0, {1}}}}), DomainError);  // top level reads nothing
  EXPECT_THROW(polynomial_shear(b, {{PolyTerm{0, 1.0, {-1, 0}}}}), DomainError);
}

TEST(Bilip, DilationIsSimilarity) {
  const auto& b = mixed();
  for (double t : {0.3, 2.0, 7.5}) {
    const auto est = bilip_constant_estimate(b, dilation_map(b, t), Sampler{10.0, 1}, 200);
    EXPECT_TRUE(est.is_similarity);
    EXPECT_NEAR(est.qsim_constant, 1.0, 1e-9);
    EXPECT_NEAR(est.sim_factor / t, 1.0, 1e-9);
    EXPECT_NEAR(est.raw_constant, std::max(t, 1 / t), 1e-9 * std::max(t, 1 / t));
  }
}

TEST(Bilip, TranslationIsIsometry) {
  const auto& b = mixed();
  const Vector v = (Vector(3) << 0.5, -0.25, 2.0).finished();
  // Dyadic sample points keep translated differences exact.
  const SampledMap dyadic_shift{[v](const BoundaryPoint& p) -> BoundaryPoint { return p + v; }, "shift"};
  const auto est = bilip_constant_estimate(b, translation_map(b, v), Sampler{10.0, 2}, 200);
  EXPECT_NEAR(est.raw_constant, 1.0, 1e-12);
  Rng rng(45);
  for (int i = 0; i < 100; ++i) {
    Vector p(3), q(3);
    for (int c = 0; c < 3; ++c) {
      p(c) = rng.dyadic(10.0);
      q(c) = rng.dyadic(10.0);
    }
    if (p == q) continue;
    EXPECT_EQ(dM(b, apply(b, dyadic_shift, p), apply(b, dyadic_shift, q)).value, dM(b, p, q).value);
  }
}

TEST(Bilip, CoordinateDoubling) {
  const auto b = basis_of({{1.0, {1}}, {2.0, {1}}});
  const SampledMap doubling{[](const BoundaryPoint& p) -> BoundaryPoint {
                              BoundaryPoint out = p;
                              out(0) *= 2.0;
                              return out;
                            },
                            "double"};
  const auto est = bilip_constant_estimate(b, doubling, Sampler{10.0, 3}, 500);
  EXPECT_NEAR(est.raw_constant, 2.0, 1e-12);
  ASSERT_TRUE(est.witness.has_value());
  EXPECT_THROW(bilip_constant_estimate(b, doubling, Sampler{}, 0), DomainError);
}

TEST(Foliation, TriangularMapsNeverLeaveLeaves) {
  Rng rng(46);
  for (int m = 0; m < 1000; ++m) {
    const auto b = build_basis(oracle::random_spec(rng, 5));
    const auto map = random_triangular_map(b, rng);
    for (const auto& r : b.ranges())
      ASSERT_FALSE(foliation_check(b, map, r.level, Sampler{10.0, rng.next()}, 3).has_value());
  }
}

TEST(Foliation, SwapHasWitnessDilationDoesNot) {
  const auto& b = mixed();
  const auto w = foliation_check(b, swap_map(), {2.0, 1}, Sampler{10.0, 5}, 100);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->image_level, (Level{2.0, 1}));
  for (const auto& r : b.ranges())
    EXPECT_FALSE(foliation_check(b, dilation_map(b, 3.0), r.level, Sampler{10.0, 6}, 200).has_value());
}

TEST(Nonbilip, SwapIsCaughtOthersAreNot) {
  const auto& b = mixed();
  const auto w = nonbilip_witness_via_triangle(b, swap_map(), {1.0, 1}, Sampler{10.0, 7}, 100);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->source.kind, TriangleKind::Finite);
  EXPECT_EQ(w->image.kind, TriangleKind::Infinite);
  EXPECT_GT(w->evidence_ratio.back(), 1e3);
  for (const auto& r : b.ranges()) {
    EXPECT_FALSE(nonbilip_witness_via_triangle(b, dilation_map(b, 2.0), r.level, Sampler{10.0, 8}, 50).has_value());
    EXPECT_FALSE(nonbilip_witness_via_triangle(b, identity_triangular(b), r.level, Sampler{10.0, 9}, 50).has_value());
  }
}

TEST(XiCurve, IdentityAndDilation) {
  const auto b = basis_of({{1.0, {2}}});
  const std::vector<double> grid = {1e-4, 1e-2, 1.0, 10.0};
  const auto id = xi_modulus_curve(b, identity_triangular(b), {1.0, 2}, {1.0, 1}, grid, Sampler{10.0, 1});
  for (const auto& s : id.samples) EXPECT_EQ(s.envelope, 0.0);
  // M^1 = e [[1, 1], [0, 1]]: a change w in the top coordinate moves the bottom one by e w.
  const auto m1 = xi_modulus_curve(b, dilation_map(b, std::exp(1.0)), {1.0, 2}, {1.0, 1}, grid, Sampler{10.0, 2});
  for (const auto& s : m1.samples) EXPECT_NEAR(s.displacement, std::exp(1.0) * s.w, 1e-12 * std::max(1.0, s.w));
  EXPECT_THROW(xi_modulus_curve(b, identity_triangular(b), {1.0, 1}, {1.0, 2}, grid, Sampler{}), DomainError);
}

TEST(XiCurve, TriangularEnvelopeVanishesAtZero) {
  Rng rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    const auto b = basis_of({{1.0, {2}}, {2.0, {1}}});
    const auto map = random_triangular_map(b, rng);
    const auto c = xi_modulus_curve(b, map, {2.0, 1}, {1.0, 1}, {1e-8, 1e-4, 1e-1, 1.0}, Sampler{10.0, rng.next()});
    for (std::size_t i = 1; i < c.samples.size(); ++i) EXPECT_GE(c.samples[i].envelope, c.samples[i - 1].envelope);
    EXPECT_LT(c.samples.front().envelope, c.samples.back().envelope);
    EXPECT_LT(c.samples.front().envelope, 1e-6);
  }
}

TEST(RotationBlowup, IdenticalRotations) {
  const auto b = basis_of({{1.0, {1, 1}}});
  const RotationPair pair{{1.0, 1}, rotation2(0.4), rotation2(0.4), Vector::Zero(2), Vector::Ones(2), Vector(), Vector()};
  EXPECT_EQ(rotation_blowup_experiment(b, pair, {1, 10}).verdict, BlowupVerdict::NoBlowup);
}

TEST(RotationBlowup, HalfTurn) {
  const auto b = basis_of({{1.0, {1, 1}}, {2.0, {1}}});
  const Vector y = Vector::Constant(1, 0.5), yp = Vector::Constant(1, -1.5);
  const RotationPair pair{{1.0, 1}, Matrix::Identity(2, 2), -Matrix::Identity(2, 2),
                          (Vector(2) << 0.3, -0.2).finished(), (Vector(2) << 1.0, 2.0).finished(), y, yp};
  const auto rep = rotation_blowup_experiment(b, pair, {1, 10, 100, 1000});
  EXPECT_EQ(rep.verdict, BlowupVerdict::Violation);
  EXPECT_NEAR(rep.top_singular_value, 2.0, 1e-12);
  for (const auto& row : rep.rows) {
    EXPECT_NEAR(row.displacement, 2 * row.radius, 1e-12 * row.radius);
    EXPECT_NEAR(row.preimage_distance, rep.rows.front().preimage_distance, 1e-9);
  }
}

TEST(RotationBlowup, RatioIsTopSingularValue) {
  const auto b = basis_of({{1.0, {1, 1, 1}}});
  Rng rng(48);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix r1 = random_level_rotation(b, rng), r2 = random_level_rotation(b, rng);
    const RotationPair pair{{1.0, 1}, r1, r2, Vector::Zero(3), uniform_point(rng, 3, 1.0), Vector(), Vector()};
    const auto rep = rotation_blowup_experiment(b, pair, {1, 10, 100, 1000});
    const double sigma = Eigen::JacobiSVD<Matrix>(r1 - r2).singularValues()(0);
    EXPECT_NEAR(rep.rows.back().ratio, sigma, 1e-9);
  }
  Matrix bad = Matrix::Identity(3, 3);
  bad(0, 0) = 2;
  EXPECT_THROW(rotation_blowup_experiment(b, {{1.0, 1}, bad, bad, Vector::Zero(3), Vector::Zero(3), Vector(), Vector()}, {1}),
               DomainError);
}

TEST(Cocycle, Identities) {
  const auto& b = mixed();
  const Vector p = (Vector(3) << 0.5, -0.75, 0.875).finished();  // dyadic: n = 1, 2 are exact
  const auto constant = polynomial_shear(b, {{PolyTerm{0, 1.5, {}}}, {PolyTerm{0, -2.0, {}}}, {PolyTerm{0, 0.25, {}}}});
  EXPECT_EQ(cocycle_iterate_check(b, constant, p, 1), 0.0);
  EXPECT_EQ(cocycle_iterate_check(b, constant, p, 2), 0.0);
  const auto poly = polynomial_shear(
      b, {{PolyTerm{0, 0.3, {2, 1}}, PolyTerm{0, -1.0, {0, 1}}}, {PolyTerm{0, 0.5, {2}}}, {PolyTerm{0, 0.7, {}}}});
  EXPECT_LE(cocycle_iterate_check(b, poly, p, 5), 1e-12);
  EXPECT_THROW(cocycle_iterate_check(b, poly, p, 0), DomainError);
  Rng rng(49);
  for (int trial = 0; trial < 100; ++trial) {
    const auto bb = build_basis(oracle::random_spec(rng));
    const auto shear = random_polynomial_shear(bb, rng);
    for (int n : {1, 2, 7, 32}) EXPECT_LE(cocycle_iterate_check(bb, shear, uniform_point(rng, bb.n(), 1.0), n), 1e-12);
  }
}

TEST(ShearBound, ConstantAndBoundedShears) {
  const auto b = basis_of({{1.0, {1}}, {2.0, {1}}, {3.0, {1}}});
  const Vector y = (Vector(2) << 0.3, 1.0).finished(), yp = (Vector(2) << -1.1, 1.0).finished();
  const auto constant = polynomial_shear(b, {{PolyTerm{0, 2.0, {}}}, {PolyTerm{0, 1.0, {}}}, {PolyTerm{0, 0.5, {}}}});
  const auto flat = shear_bound_experiment(b, constant, 0, y, yp, 10);
  EXPECT_EQ(flat.base_oscillation, 0.0);
  for (const auto& row : flat.rows) EXPECT_EQ(row.oscillation, 0.0);

  UnipotentShear sine;
  sine.displacement = {
      [](std::span<const double> a) { return Vector::Constant(1, std::sin(a[0]) + 0.5 * std::cos(a[1])); },
      [](std::span<const double> a) { return Vector::Constant(1, std::sin(3.0 * a[0])); },
      [](std::span<const double>) { return Vector::Constant(1, 0.7); }};
  const auto rep = shear_bound_experiment(b, sine, 0, y, yp, 64);
  EXPECT_TRUE(rep.bound_holds);
  EXPECT_GT(rep.base_oscillation, 0.0);
  EXPECT_LT(rep.rows.back().oscillation / 64, rep.rows.front().oscillation + 2.0);
  const auto same = shear_bound_experiment(b, sine, 0, y, y, 16);
  EXPECT_EQ(same.base_oscillation, 0.0);
  for (const auto& row : same.rows) EXPECT_EQ(row.oscillation, 0.0);
  EXPECT_THROW(shear_bound_experiment(b, sine, 0, y, yp, 1), DomainError);
}
