#include "heintze/maps.hpp"

#include <cmath>

#include "heintze/errors.hpp"

namespace heintze {

namespace {

std::span<const double> tail(const Vector& v, int offset) {
  return {v.data() + offset, static_cast<std::size_t>(v.size() - offset)};
}

void check_dim(const OrderedBasis& basis, const Vector& v, const char* what) {
  if (v.size() != basis.n()) throw DomainError(std::string(what) + ": dimension mismatch");
}

}  // namespace

int suffix_offset(const OrderedBasis& basis, std::size_t level) {
  const auto& r = basis.ranges().at(level);
  return r.offset + r.width;
}

BoundaryPoint apply(const OrderedBasis& basis, const MapDescriptor& map, const BoundaryPoint& p) {
  check_dim(basis, p, "apply");
  return std::visit(
      [&](const auto& m) -> BoundaryPoint {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, TriangularMap>) {
          BoundaryPoint out(basis.n());
          for (std::size_t i = 0; i < basis.ranges().size(); ++i) {
            const auto& r = basis.ranges()[i];
            const Vector y = m.per_level.at(i)(tail(p, r.offset));
            if (y.size() != r.width) throw DomainError("level function returned wrong width");
            out.segment(r.offset, r.width) = y;
          }
          return out;
        } else if constexpr (std::is_same_v<T, AffineQSim>) {
          Vector v = m.rotation * (p + m.translation);
          for (std::size_t i = 0; i < basis.ranges().size(); ++i) {
            const auto& r = basis.ranges()[i];
            v.segment(r.offset, r.width) *= m.level_scale(static_cast<int>(i));
          }
          return apply_exp_tA(basis, m.s, v);
        } else if constexpr (std::is_same_v<T, UnipotentShear>) {
          return apply_shear_suffix(basis, m, 0, p);
        } else {
          BoundaryPoint out = m.eval(p);
          check_dim(basis, out, "sampled map output");
          return out;
        }
      },
      map);
}

TriangularMap identity_triangular(const OrderedBasis& basis) {
  TriangularMap t;
  for (const auto& r : basis.ranges()) {
    const int w = r.width;
    t.per_level.push_back([w](std::span<const double> x) {
      return Vector(Eigen::Map<const Vector>(x.data(), w));
    });
  }
  return t;
}

AffineQSim make_affine_qsim(const OrderedBasis& basis, double s, Matrix rotation, Vector translation,
                            Vector level_scale) {
  const int n = basis.n();
  if (rotation.rows() != n || rotation.cols() != n || translation.size() != n)
    throw DomainError("affine map: dimension mismatch");
  if (!std::isfinite(s)) throw DomainError("affine map: s must be finite");
  if ((rotation.transpose() * rotation - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10)
    throw DomainError("affine map: rotation part is not orthogonal");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(basis.level_of_coordinate(i) == basis.level_of_coordinate(j)) &&
          std::abs(rotation(i, j)) > 1e-12)
        throw DomainError("affine map: rotation part must preserve each level");
  const auto levels = static_cast<int>(basis.ranges().size());
  if (level_scale.size() == 0) level_scale = Vector::Ones(levels);
  if (level_scale.size() != levels) throw DomainError("affine map: one scale per level expected");
  for (int i = 0; i < levels; ++i)
    if (!(level_scale(i) > 0.0)) throw DomainError("affine map: level scales must be positive");
  return AffineQSim{s, std::move(rotation), std::move(translation), std::move(level_scale)};
}

AffineQSim dilation_map(const OrderedBasis& basis, double t) {
  if (!(t > 0.0)) throw DomainError("dilation needs t > 0");
  return make_affine_qsim(basis, std::log(t), Matrix::Identity(basis.n(), basis.n()),
                          Vector::Zero(basis.n()));
}

AffineQSim translation_map(const OrderedBasis& basis, const Vector& v) {
  return make_affine_qsim(basis, 0.0, Matrix::Identity(basis.n(), basis.n()), v);
}

namespace {

Matrix scale_matrix(const OrderedBasis& basis, const Vector& level_scale) {
  Vector diag(basis.n());
  for (std::size_t i = 0; i < basis.ranges().size(); ++i) {
    const auto& r = basis.ranges()[i];
    diag.segment(r.offset, r.width).setConstant(level_scale(static_cast<int>(i)));
  }
  return diag.asDiagonal();
}

}  // namespace

AffineQSim compose(const OrderedBasis& basis, const AffineQSim& first, const AffineQSim& second) {
  const Matrix lin1 = scale_matrix(basis, first.level_scale) * first.rotation;
  const Matrix lin2 = scale_matrix(basis, second.level_scale) * second.rotation;
  const Matrix m2 = exp_tA(basis, second.s);
  const double scale = std::max(1.0, (lin1 * m2).cwiseAbs().maxCoeff());
  if ((lin1 * m2 - m2 * lin1).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw DomainError("compose: linear part of the outer map does not commute with M^s");
  AffineQSim out;
  out.s = first.s + second.s;
  out.rotation = first.rotation * second.rotation;
  out.level_scale = first.level_scale.cwiseProduct(second.level_scale);
  out.translation =
      second.translation + lin2.lu().solve(apply_exp_tA(basis, -second.s, first.translation));
  return out;
}

SampledMap linear_map(Matrix matrix, std::string name) {
  return SampledMap{[m = std::move(matrix)](const BoundaryPoint& p) -> BoundaryPoint { return m * p; },
                    std::move(name)};
}

UnipotentShear polynomial_shear(const OrderedBasis& basis, std::vector<std::vector<PolyTerm>> terms) {
  const auto levels = basis.ranges().size();
  if (terms.size() > levels) throw DomainError("shear: more levels than the basis has");
  terms.resize(levels);
  UnipotentShear shear;
  for (std::size_t i = 0; i < levels; ++i) {
    const int width = basis.ranges()[i].width;
    const auto above = static_cast<std::size_t>(basis.n() - suffix_offset(basis, i));
    for (const auto& t : terms[i]) {
      if (t.out < 0 || t.out >= width) throw DomainError("shear: output component out of range");
      if (t.powers.size() > above)
        throw DomainError("shear: monomial reads a coordinate that is not above its level");
      for (int e : t.powers)
        if (e < 0) throw DomainError("shear: negative exponent");
    }
    shear.displacement.push_back([width, ts = terms[i]](std::span<const double> y) {
      Vector out = Vector::Zero(width);
      for (const auto& t : ts) {
        double v = t.coef;
        for (std::size_t k = 0; k < t.powers.size(); ++k) v *= std::pow(y[k], t.powers[k]);
        out(t.out) += v;
      }
      return out;
    });
  }
  return shear;
}

Vector shear_displacement(const OrderedBasis& basis, const UnipotentShear& shear, std::size_t level,
                          const Vector& above) {
  const Vector out = shear.displacement.at(level)({above.data(), static_cast<std::size_t>(above.size())});
  if (out.size() != basis.ranges().at(level).width) throw DomainError("shear returned wrong width");
  return out;
}

Vector apply_shear_suffix(const OrderedBasis& basis, const UnipotentShear& shear,
                          std::size_t first_level, const Vector& suffix) {
  const int base = first_level < basis.ranges().size() ? basis.ranges()[first_level].offset : basis.n();
  if (suffix.size() != basis.n() - base) throw DomainError("shear: suffix dimension mismatch");
  Vector out = suffix;
  for (std::size_t i = first_level; i < basis.ranges().size(); ++i) {
    const auto& r = basis.ranges()[i];
    const int above = suffix_offset(basis, i) - base;
    const Vector y = suffix.tail(suffix.size() - above);
    out.segment(r.offset - base, r.width) += shear_displacement(basis, shear, i, y);
  }
  return out;
}

BoundaryPoint apply_shear_inverse(const OrderedBasis& basis, const UnipotentShear& shear,
                                  const BoundaryPoint& y) {
  check_dim(basis, y, "shear inverse");
  BoundaryPoint x = y;
  for (std::size_t i = basis.ranges().size(); i-- > 0;) {
    const auto& r = basis.ranges()[i];
    const int above = suffix_offset(basis, i);
    const Vector xs = x.tail(basis.n() - above);
    x.segment(r.offset, r.width) -= shear_displacement(basis, shear, i, xs);
  }
  return x;
}

UnipotentShear invert(const OrderedBasis& basis, const UnipotentShear& shear) {
  UnipotentShear inv;
  const auto levels = basis.ranges().size();
  for (std::size_t i = 0; i < levels; ++i) {
    // B'_i(y) = -B_i(x_above) where x_above is the preimage of y under the
    // shear restricted to the levels above i.
    inv.displacement.push_back([basis, shear, i, levels](std::span<const double> above) {
      Vector x = Eigen::Map<const Vector>(above.data(), static_cast<Eigen::Index>(above.size()));
      const int base = suffix_offset(basis, i);
      for (std::size_t j = levels; j-- > i + 1;) {
        const auto& r = basis.ranges()[j];
        const int off = suffix_offset(basis, j) - base;
        const Vector xs = x.tail(x.size() - off);
        x.segment(r.offset - base, r.width) -= shear_displacement(basis, shear, j, xs);
      }
      return Vector(-shear_displacement(basis, shear, i, x));
    });
  }
  return inv;
}

TriangularMap random_triangular_map(const OrderedBasis& basis, Rng& rng) {
  TriangularMap t;
  for (std::size_t i = 0; i < basis.ranges().size(); ++i) {
    const int w = basis.ranges()[i].width;
    const int above = basis.n() - suffix_offset(basis, i);
    // Diagonally dominant, hence invertible.
    Matrix lin(w, w);
    for (int r = 0; r < w; ++r)
      for (int c = 0; c < w; ++c) lin(r, c) = r == c ? rng.uniform(1.0, 2.0) * (rng.unit() < 0.5 ? -1 : 1)
                                                     : rng.uniform(-0.9, 0.9) / w;
    Vector shift(w);
    for (int r = 0; r < w; ++r) shift(r) = rng.uniform(-5.0, 5.0);
    Matrix amp(w, above), freq(w, above);
    for (int r = 0; r < w; ++r)
      for (int c = 0; c < above; ++c) {
        amp(r, c) = rng.uniform(-3.0, 3.0);
        freq(r, c) = rng.uniform(-2.0, 2.0);
      }
    t.per_level.push_back([w, above, lin, shift, amp, freq](std::span<const double> x) {
      const Vector own = Eigen::Map<const Vector>(x.data(), w);
      Vector y = lin * own + shift;
      for (int r = 0; r < w; ++r)
        for (int c = 0; c < above; ++c) y(r) += amp(r, c) * std::sin(freq(r, c) * x[w + c]);
      return y;
    });
  }
  return t;
}

UnipotentShear random_polynomial_shear(const OrderedBasis& basis, Rng& rng, int max_degree,
                                       double coef_radius) {
  std::vector<std::vector<PolyTerm>> terms(basis.ranges().size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const int w = basis.ranges()[i].width;
    const int above = basis.n() - suffix_offset(basis, i);
    const int count = rng.integer(1, 3);
    for (int k = 0; k < count; ++k) {
      PolyTerm t;
      t.out = rng.integer(0, w - 1);
      t.coef = rng.uniform(-coef_radius, coef_radius);
      t.powers.assign(static_cast<std::size_t>(above), 0);
      int degree = above == 0 ? 0 : rng.integer(0, max_degree);
      while (degree-- > 0) ++t.powers[static_cast<std::size_t>(rng.integer(0, above - 1))];
      terms[i].push_back(std::move(t));
    }
  }
  return polynomial_shear(basis, std::move(terms));
}

}  // namespace heintze
