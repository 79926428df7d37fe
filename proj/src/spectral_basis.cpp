#include "heintze/spectral_basis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "heintze/errors.hpp"

namespace heintze {

JordanSpec JordanSpec::make(std::vector<EigenBlocks> blocks) {
  if (blocks.empty()) throw SpecError("JordanSpec needs at least one block");
  for (const auto& b : blocks) {
    if (!std::isfinite(b.alpha) || b.alpha <= 0.0)
      throw SpecError("eigenvalue alpha must be finite and positive");
    if (b.sizes.empty()) throw SpecError("eigenvalue without Jordan blocks");
    for (int s : b.sizes)
      if (s <= 0) throw SpecError("Jordan block sizes must be positive");
  }
  // Stable sort keeps declaration order among equal alphas.
  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const EigenBlocks& a, const EigenBlocks& b) { return a.alpha < b.alpha; });
  JordanSpec spec;
  for (auto& b : blocks) {
    if (!spec.blocks_.empty() && spec.blocks_.back().alpha == b.alpha) {
      auto& sizes = spec.blocks_.back().sizes;
      sizes.insert(sizes.end(), b.sizes.begin(), b.sizes.end());
    } else {
      spec.blocks_.push_back(std::move(b));
    }
  }
  for (const auto& b : spec.blocks_)
    for (int s : b.sizes) spec.n_ += s;
  return spec;
}

OrderedBasis::OrderedBasis(JordanSpec spec) : spec_(std::move(spec)) {
  index_of_.resize(static_cast<std::size_t>(spec_.n()));
  int pos = 0;
  for (const auto& eb : spec_.blocks()) {
    const std::size_t first_chain = chains_.size();
    int largest = 0;
    for (int s : eb.sizes) {
      chains_.push_back(Chain{eb.alpha, s, std::vector<int>(static_cast<std::size_t>(s), -1)});
      largest = std::max(largest, s);
    }
    for (int ell = 1; ell <= largest; ++ell) {
      LevelRange range{Level{eb.alpha, ell}, pos, 0};
      for (std::size_t c = first_chain; c < chains_.size(); ++c) {
        if (chains_[c].size < ell) continue;
        chains_[c].coordinate_of_depth[static_cast<std::size_t>(ell - 1)] = pos;
        index_of_[static_cast<std::size_t>(pos)] =
            CoordIndex{eb.alpha, ell, range.width, static_cast<int>(c)};
        ++range.width;
        ++pos;
      }
      ranges_.push_back(range);
    }
    max_depth_ = std::max(max_depth_, largest - 1);
  }
}

std::vector<Level> OrderedBasis::levels() const {
  std::vector<Level> out;
  out.reserve(ranges_.size());
  for (auto it = ranges_.rbegin(); it != ranges_.rend(); ++it) out.push_back(it->level);
  return out;
}

std::optional<std::size_t> OrderedBasis::find_level(const Level& level) const {
  for (std::size_t i = 0; i < ranges_.size(); ++i) {
    const Level& l = ranges_[i].level;
    if (l.ell == level.ell && std::abs(l.alpha - level.alpha) <= 1e-12 * std::max(1.0, l.alpha))
      return i;
  }
  return std::nullopt;
}

const LevelRange& OrderedBasis::range_of(const Level& level) const {
  auto i = find_level(level);
  if (!i) throw IndexError("level " + to_string(level) + " is not present in the basis");
  return ranges_[*i];
}

std::size_t OrderedBasis::level_number(const Level& level) const {
  auto i = find_level(level);
  if (!i) throw IndexError("level " + to_string(level) + " is not present in the basis");
  return *i;
}

Level OrderedBasis::level_of_coordinate(int pos) const {
  const auto& ci = index_of_.at(static_cast<std::size_t>(pos));
  return Level{ci.alpha, ci.ell};
}

double OrderedBasis::min_alpha() const { return spec_.blocks().front().alpha; }

OrderedBasis build_basis(const JordanSpec& spec) { return OrderedBasis(spec); }

bool level_less(const Level& a, const Level& b) {
  if (a.alpha != b.alpha) return a.alpha < b.alpha;
  return a.ell < b.ell;
}

std::strong_ordering compare_levels(const OrderedBasis& basis, const Level& a, const Level& b) {
  const std::size_t ia = basis.level_number(a);
  const std::size_t ib = basis.level_number(b);
  // Later storage position means earlier precedence.
  return ib <=> ia;
}

Matrix exp_tA(const OrderedBasis& basis, double t) {
  const int n = basis.n();
  Matrix E = Matrix::Zero(n, n);
  for (const auto& chain : basis.chains()) {
    const double scale = std::exp(t * chain.alpha);
    double tm = 1.0;  // t^m / m!
    for (int m = 0; m < chain.size; ++m) {
      if (m > 0) tm *= t / m;
      for (int d = 0; d + m < chain.size; ++d) {
        const auto row = chain.coordinate_of_depth[static_cast<std::size_t>(d)];
        const auto col = chain.coordinate_of_depth[static_cast<std::size_t>(d + m)];
        E(row, col) = scale * tm;
      }
    }
  }
  return E;
}

Vector apply_exp_tA(const OrderedBasis& basis, double t, const Vector& v) {
  Vector out = Vector::Zero(basis.n());
  for (const auto& chain : basis.chains()) {
    const double scale = std::exp(t * chain.alpha);
    for (int d = 0; d < chain.size; ++d) {
      double acc = 0.0;
      double tm = 1.0;
      for (int m = 0; d + m < chain.size; ++m) {
        if (m > 0) tm *= t / m;
        acc += tm * v(chain.coordinate_of_depth[static_cast<std::size_t>(d + m)]);
      }
      out(chain.coordinate_of_depth[static_cast<std::size_t>(d)]) = scale * acc;
    }
  }
  return out;
}

BoundaryPoint standard_dilation(const OrderedBasis& basis, double t, const BoundaryPoint& p) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("standard dilation needs t > 0");
  if (t == 1.0) return p;
  return apply_exp_tA(basis, std::log(t), p);
}

std::optional<Level> leaf_level_of_difference(const OrderedBasis& basis, const BoundaryPoint& p,
                                              const BoundaryPoint& q, double tol) {
  for (int pos = basis.n() - 1; pos >= 0; --pos)
    if (std::abs(p(pos) - q(pos)) > tol) return basis.level_of_coordinate(pos);
  return std::nullopt;
}

bool in_leaf_subspace(const OrderedBasis& basis, const Level& level, const Vector& v, double tol) {
  const auto& range = basis.range_of(level);
  for (int pos = range.offset; pos < basis.n(); ++pos)
    if (std::abs(v(pos)) > tol) return false;
  return true;
}

void validate_certificate(const OrderedBasis& basis, const Matrix& M, const Matrix& P, double tol) {
  const int n = basis.n();
  if (M.rows() != n || M.cols() != n || P.rows() != n || P.cols() != n)
    throw SpecError("certificate dimensions do not match the spec");
  Eigen::FullPivLU<Matrix> lu(P);
  if (!lu.isInvertible()) throw SpecError("change-of-basis matrix is singular");
  const Matrix J = exp_tA(basis, 1.0);
  const Matrix conj = lu.solve(M * P);
  const double err = (conj - J).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, J.cwiseAbs().maxCoeff());
  if (!(err <= tol * scale))
    throw SpecError("certificate rejected: P^-1 M P differs from exp(A) by " + std::to_string(err));
}

std::string to_string(const Level& level) {
  std::ostringstream os;
  os << "(" << level.alpha << "," << level.ell << ")";
  return os.str();
}

}  // namespace heintze
