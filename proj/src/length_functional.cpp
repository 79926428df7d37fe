#include "heintze/length_functional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heintze/errors.hpp"

namespace heintze {

namespace {

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

/// eta_{alpha,d}(1/k) * e^{gamma ln k}, computed without forming k^gamma.
double scaled_step_cost(double gamma, const Level& level, double log_k) {
  const int d = level.depth();
  return std::exp((gamma - level.alpha) * log_k) * factorial(d) / std::pow(log_k, d);
}

double checked_log_k(double k) {
  if (!(k >= 3.0) || !std::isfinite(k)) throw DomainError("chain resolution k must be >= 3");
  return std::log(k);
}

}  // namespace

double eta(double alpha, int j, double w) {
  if (!(w > 0.0 && w < 1.0)) throw DomainError("eta is defined on 0 < w < 1");
  if (j < 0) throw DomainError("eta needs j >= 0");
  return factorial(j) * std::pow(w, alpha) / std::pow(std::abs(std::log(w)), j);
}

double chain_upper_bound(const OrderedBasis& basis, const BoundaryPoint& p, const BoundaryPoint& q,
                         const Level& level, double k) {
  basis.range_of(level);
  const double L = checked_log_k(k);
  const Vector d = p - q;
  double total = 0.0;
  for (const auto& range : basis.ranges()) {
    double amplitude = 0.0;
    for (int i = 0; i < range.width; ++i) amplitude = std::max(amplitude, std::abs(d(range.offset + i)));
    if (amplitude == 0.0) continue;
    // |e^{LA} x|_inf for x on one level: the largest L^m / m!, m <= depth.
    double poly = 1.0;
    double term = 1.0;
    for (int m = 1; m <= range.level.depth(); ++m) {
      term *= L / m;
      poly = std::max(poly, term);
    }
    total += scaled_step_cost(range.level.alpha, level, L) * poly * amplitude;
  }
  return total;
}

double chain_lower_bound(const OrderedBasis& basis, const BoundaryPoint& p, const BoundaryPoint& q,
                         const Level& level, double k) {
  basis.range_of(level);
  const double L = checked_log_k(k);
  const Vector d = p - q;
  double best = 0.0;
  for (const auto& chain : basis.chains()) {
    const double cost = scaled_step_cost(chain.alpha, level, L);
    for (int depth = 0; depth < chain.size; ++depth) {
      double acc = 0.0;
      double term = 1.0;
      for (int m = 0; depth + m < chain.size; ++m) {
        if (m > 0) term *= L / m;
        acc += term * d(chain.coordinate_of_depth[static_cast<std::size_t>(depth + m)]);
      }
      if (acc != 0.0) best = std::max(best, cost * std::abs(acc));
    }
  }
  return best;
}

std::string to_string(TriangleKind kind) {
  switch (kind) {
    case TriangleKind::Zero: return "Zero";
    case TriangleKind::Finite: return "Finite";
    case TriangleKind::Infinite: return "Infinite";
    case TriangleKind::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::vector<double> default_schedule() { return {0x1p10, 0x1p14, 0x1p18, 0x1p22}; }

std::vector<double> effective_schedule(const OrderedBasis& basis, const std::vector<double>& schedule) {
  const double min_log = std::max(std::log(3.0), static_cast<double>(basis.max_depth()));
  std::vector<double> out;
  for (double k : schedule)
    if (std::log(k) >= min_log) out.push_back(k);
  if (out.empty()) out.push_back(std::max(3.0, std::exp(min_log)));
  while (out.size() < 3) {
    const double next = out.back() * out.back();
    if (!std::isfinite(next)) throw DomainError("cannot extend the chain schedule any further");
    out.push_back(next);
  }
  return out;
}

namespace {

bool strictly_increasing(const std::vector<ChainBound>& ev, double ChainBound::*field) {
  for (std::size_t i = 1; i < ev.size(); ++i)
    if (!(ev[i].*field > ev[i - 1].*field)) return false;
  return true;
}

bool strictly_decreasing(const std::vector<ChainBound>& ev, double ChainBound::*field) {
  for (std::size_t i = 1; i < ev.size(); ++i)
    if (!(ev[i].*field < ev[i - 1].*field)) return false;
  return true;
}

double log_rate(const ChainBound& a, const ChainBound& b, double ChainBound::*field) {
  const double dx = std::log(std::log(b.k)) - std::log(std::log(a.k));
  const double ya = a.*field;
  const double yb = b.*field;
  if (ya == yb) return 0.0;
  if (ya <= 0.0 || !std::isfinite(ya)) return std::numeric_limits<double>::quiet_NaN();
  if (yb <= 0.0) return -std::numeric_limits<double>::infinity();
  if (!std::isfinite(yb)) return std::numeric_limits<double>::infinity();
  return (std::log(yb) - std::log(ya)) / dx;
}

}  // namespace

Classification classify_triangle(const OrderedBasis& basis, const BoundaryPoint& p,
                                 const BoundaryPoint& q, const Level& level,
                                 const std::vector<double>& schedule, const ClassifyOptions& options) {
  if (schedule.size() < 3) throw DomainError("classification needs at least 3 schedule entries");
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (!(schedule[i] > schedule[i - 1])) throw DomainError("schedule must be increasing");
  basis.range_of(level);

  Classification out;
  for (double k : effective_schedule(basis, schedule))
    out.evidence.push_back(ChainBound{k, chain_upper_bound(basis, p, q, level, k),
                                      chain_lower_bound(basis, p, q, level, k)});
  const auto& last = out.evidence.back();
  const auto& prev = out.evidence[out.evidence.size() - 2];
  if (last.upper == 0.0) {
    out.kind = TriangleKind::Zero;
    return out;
  }
  out.upper_rate = log_rate(prev, last, &ChainBound::upper);
  out.lower_rate = log_rate(prev, last, &ChainBound::lower);

  const bool lower_grows = strictly_increasing(out.evidence, &ChainBound::lower);
  const bool upper_shrinks = strictly_decreasing(out.evidence, &ChainBound::upper);
  if (lower_grows &&
      (last.lower > options.divergence_threshold || out.lower_rate >= options.rate_threshold)) {
    out.kind = TriangleKind::Infinite;
    return out;
  }
  if (upper_shrinks &&
      (last.upper < options.vanishing_threshold || out.upper_rate <= -options.rate_threshold)) {
    out.kind = TriangleKind::Zero;
    return out;
  }
  const bool settled = std::abs(out.upper_rate) < options.rate_threshold &&
                       std::abs(out.lower_rate) < options.rate_threshold;
  if (settled && last.upper - last.lower <= options.finite_rel_tol * last.upper) {
    out.kind = TriangleKind::Finite;
    out.value = 0.5 * (last.upper + last.lower);
    return out;
  }
  out.kind = TriangleKind::Inconclusive;
  return out;
}

}  // namespace heintze
