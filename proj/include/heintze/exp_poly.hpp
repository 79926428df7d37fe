#pragma once

#include <cstddef>
#include <vector>

#include "heintze/spectral_basis.hpp"

namespace heintze {

/// Names the term of the coordinate formula a component comes from: the
/// Jordan chain of eigenvalue `alpha` and length `ell`, summed from index `j`.
struct WitnessLevel {
  double alpha = 0.0;
  int ell = 1;
  int j = 1;

  friend bool operator==(const WitnessLevel&, const WitnessLevel&) = default;
};

/// c(t) = e^{-alpha t} * sum_m coeffs[m] t^m.
struct ExpPoly {
  double alpha = 0.0;
  std::vector<double> coeffs;
  WitnessLevel witness;

  double value(double t) const;
  double derivative(double t) const;
  /// Bound on |c''| over [t, t + h], h >= 0.
  double second_derivative_bound(double t, double h) const;
  bool is_zero() const;
  /// Nonzero constant polynomial: |c| is strictly monotone in t.
  bool is_monomial_constant() const;
};

/// max_k |c_k(t)|.
double sup_norm(const std::vector<ExpPoly>& components, double t);

struct CrossingResult {
  double t0 = 0.0;            // -inf when every component vanishes identically
  std::size_t argmax = 0;     // component attaining the max at t0
  bool on_envelope = false;   // t0 equals the single-term lower bracket
};

/// Smallest t with max_k |c_k(t)| <= 1.
///
/// Every nonzero chain contributes a constant-polynomial component, so
/// t_lo = max ln|a_0| / alpha over those is a hard lower bound. From t_lo the
/// solver advances by steps that are certified from a second-order Taylor
/// bound to keep some component above 1; when the certified step drops below
/// `floor_step` it probes ahead and bisects the first crossing to ~1e-14.
/// Throws PrecisionError if `max_iterations` is exhausted.
CrossingResult first_crossing(const std::vector<ExpPoly>& components, double floor_step = 1e-9,
                              long max_iterations = 10'000'000);

/// Components of e^{-tA} d in the ordered basis, one per (chain, depth).
std::vector<ExpPoly> exponential_components(const OrderedBasis& basis, const Vector& d);

}  // namespace heintze
