#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace heintze {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// A point of the boundary R^n, in ordered-basis coordinates.
using BoundaryPoint = Eigen::VectorXd;

/// Jordan blocks of A = log M sharing one positive real eigenvalue.
struct EigenBlocks {
  double alpha = 0.0;
  std::vector<int> sizes;
};

/// Exact spectral description of A. Construct through `JordanSpec::make`,
/// which validates and canonicalizes (alphas strictly increasing, equal
/// alphas merged in declaration order).
class JordanSpec {
 public:
  static JordanSpec make(std::vector<EigenBlocks> blocks);

  const std::vector<EigenBlocks>& blocks() const { return blocks_; }
  int n() const { return n_; }

 private:
  std::vector<EigenBlocks> blocks_;
  int n_ = 0;
};

/// A stratum B_{alpha,ell}: basis vectors of the alpha-generalized eigenspace
/// killed by (A - alpha)^ell but not by (A - alpha)^(ell-1).
struct Level {
  double alpha = 0.0;
  int ell = 1;

  /// Nilpotency depth ell - 1, the power of (A - alpha) that reaches an eigenvector.
  int depth() const { return ell - 1; }

  friend bool operator==(const Level&, const Level&) = default;
};

/// Position of one coordinate inside the ordered basis.
struct CoordIndex {
  double alpha = 0.0;
  int ell = 1;
  int slot = 0;   // position inside B_{alpha,ell}
  int chain = 0;  // index into OrderedBasis::chains()
};

/// One Jordan chain; coordinate_of_depth[d] is the storage position of the
/// chain vector at depth d (d = 0 is the eigenvector).
struct Chain {
  double alpha = 0.0;
  int size = 0;
  std::vector<int> coordinate_of_depth;
};

/// Contiguous run of storage positions holding one level.
struct LevelRange {
  Level level;
  int offset = 0;
  int width = 0;
};

/// The flag-ordered coordinate system.
///
/// Storage order (the public coordinate contract): alpha ascending, then ell
/// ascending, then chains in declaration order. Coordinate vectors therefore
/// read (x_{a,1}, x_{a,2}, ..., x_{b,1}, ...) with a < b. In storage order a
/// level L is numerically smaller than every level stored after it; the
/// leaf subspace U_L is the span of the coordinates stored before L, and a
/// level takes precedence over every level stored before it.
class OrderedBasis {
 public:
  explicit OrderedBasis(JordanSpec spec);

  const JordanSpec& spec() const { return spec_; }
  int n() const { return spec_.n(); }

  const std::vector<CoordIndex>& index_of() const { return index_of_; }
  const std::vector<Chain>& chains() const { return chains_; }

  /// Distinct levels in precedence order: the dominant level comes first.
  std::vector<Level> levels() const;
  /// Level ranges in storage order (least dominant first).
  const std::vector<LevelRange>& ranges() const { return ranges_; }

  std::optional<std::size_t> find_level(const Level& level) const;
  /// Throws IndexError for a level absent from the basis.
  const LevelRange& range_of(const Level& level) const;
  Level level_of_coordinate(int pos) const;

  int max_depth() const { return max_depth_; }
  double min_alpha() const;

  /// Storage-order position of each level, i.e. x_1, ..., x_r numbering (0-based).
  std::size_t level_number(const Level& level) const;

 private:
  JordanSpec spec_;
  std::vector<CoordIndex> index_of_;
  std::vector<Chain> chains_;
  std::vector<LevelRange> ranges_;
  int max_depth_ = 0;
};

OrderedBasis build_basis(const JordanSpec& spec);

/// Precedence comparison. `std::strong_ordering::less` means `a` takes
/// precedence over `b`: larger alpha first, then larger ell.
/// Throws IndexError when either level is absent from the basis.
std::strong_ordering compare_levels(const OrderedBasis& basis, const Level& a, const Level& b);

/// Numeric order used by the foliation: a < b iff alpha_a < alpha_b, or equal
/// alpha and ell_a < ell_b. The reverse of precedence.
bool level_less(const Level& a, const Level& b);

/// exp(tA) in the ordered basis, evaluated blockwise as e^{t alpha} sum_m t^m N^m / m!.
Matrix exp_tA(const OrderedBasis& basis, double t);

/// exp(tA) applied to a vector without forming the matrix.
Vector apply_exp_tA(const OrderedBasis& basis, double t, const Vector& v);

/// delta_t(p) = M^{ln t} p. Throws DomainError for t <= 0.
BoundaryPoint standard_dilation(const OrderedBasis& basis, double t, const BoundaryPoint& p);

/// The most dominant level carrying a coordinate of p - q above `tol` in
/// absolute value; nullopt when p and q agree to within tol.
std::optional<Level> leaf_level_of_difference(const OrderedBasis& basis, const BoundaryPoint& p,
                                              const BoundaryPoint& q, double tol = 1e-12);

/// True when v vanishes (to within tol) on every level numerically >= `level`,
/// i.e. v lies in the leaf subspace U_level.
bool in_leaf_subspace(const OrderedBasis& basis, const Level& level, const Vector& v,
                      double tol = 1e-12);

/// Checks a change-of-basis certificate for a general matrix M: the columns of
/// P are the ordered basis vectors, so P^{-1} M P must equal exp(A) in the
/// ordered basis to within `tol` (relative to max(1, |exp A|)). Throws SpecError
/// otherwise. The matrices are discarded afterwards; only the spec is kept.
void validate_certificate(const OrderedBasis& basis, const Matrix& M, const Matrix& P,
                          double tol = 1e-9);

std::string to_string(const Level& level);

}  // namespace heintze
