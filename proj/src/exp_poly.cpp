#include "heintze/exp_poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heintze/errors.hpp"

namespace heintze {

namespace {

double horner(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::vector<double> differentiate(const std::vector<double>& c) {
  std::vector<double> out;
  for (std::size_t m = 1; m < c.size(); ++m) out.push_back(static_cast<double>(m) * c[m]);
  return out;
}

double abs_bound(const std::vector<double>& c, double T) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * T + std::abs(*it);
  return acc;
}

}  // namespace

double ExpPoly::value(double t) const { return std::exp(-alpha * t) * horner(coeffs, t); }

double ExpPoly::derivative(double t) const {
  // (e^{-a t} P)' = e^{-a t} (P' - a P)
  return std::exp(-alpha * t) * (horner(differentiate(coeffs), t) - alpha * horner(coeffs, t));
}

double ExpPoly::second_derivative_bound(double t, double h) const {
  // (e^{-a t} P)'' = e^{-a t} (a^2 P - 2a P' + P'')
  const auto d1 = differentiate(coeffs);
  const auto d2 = differentiate(d1);
  std::vector<double> r(coeffs.size(), 0.0);
  for (std::size_t m = 0; m < coeffs.size(); ++m) r[m] += alpha * alpha * coeffs[m];
  for (std::size_t m = 0; m < d1.size(); ++m) r[m] -= 2.0 * alpha * d1[m];
  for (std::size_t m = 0; m < d2.size(); ++m) r[m] += d2[m];
  const double T = std::max(std::abs(t), std::abs(t + h));
  return std::exp(-alpha * t) * abs_bound(r, T);
}

bool ExpPoly::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](double c) { return c == 0.0; });
}

bool ExpPoly::is_monomial_constant() const {
  if (coeffs.empty() || coeffs[0] == 0.0) return false;
  return std::all_of(coeffs.begin() + 1, coeffs.end(), [](double c) { return c == 0.0; });
}

double sup_norm(const std::vector<ExpPoly>& components, double t) {
  double best = 0.0;
  for (const auto& c : components) best = std::max(best, std::abs(c.value(t)));
  return best;
}

namespace {

std::size_t argmax_at(const std::vector<ExpPoly>& components, double t) {
  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t k = 0; k < components.size(); ++k) {
    const double v = std::abs(components[k].value(t));
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  return best;
}

}  // namespace

CrossingResult first_crossing(const std::vector<ExpPoly>& components, double floor_step,
                              long max_iterations) {
  CrossingResult result;
  double t_lo = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < components.size(); ++k) {
    const auto& c = components[k];
    if (!c.is_monomial_constant()) continue;
    const double t = std::log(std::abs(c.coeffs[0])) / c.alpha;
    if (t > t_lo) {
      t_lo = t;
      result.argmax = k;
    }
  }
  result.t0 = t_lo;
  if (!std::isfinite(t_lo)) return result;

  constexpr double kEnvelopeSlack = 8.0 * std::numeric_limits<double>::epsilon();
  if (sup_norm(components, t_lo) <= 1.0 + kEnvelopeSlack) {
    result.on_envelope = true;
    return result;
  }

  constexpr double kReach = 1.0;
  double t = t_lo;
  for (long it = 0; it < max_iterations; ++it) {
    double step = 0.0;
    bool above = false;
    for (const auto& c : components) {
      const double v = std::abs(c.value(t));
      if (v <= 1.0) continue;
      above = true;
      const double g = v - 1.0;
      const double d = std::abs(c.derivative(t));
      const double l2 = c.second_derivative_bound(t, kReach);
      // Largest s with g - d s - l2 s^2 / 2 >= 0.
      const double s = 2.0 * g / (d + std::sqrt(d * d + 2.0 * l2 * g));
      step = std::max(step, std::min(s, kReach));
    }
    if (!above) {
      result.t0 = t;
      result.argmax = argmax_at(components, t);
      return result;
    }
    const double floor = floor_step * std::max(1.0, std::abs(t));
    if (step >= floor) {
      t += step;
      continue;
    }
    const double probe = t + floor;
    if (sup_norm(components, probe) > 1.0) {
      t = probe;
      continue;
    }
    double a = t;
    double b = probe;
    while (b - a > 1e-14 * std::max(1.0, std::abs(a))) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (sup_norm(components, mid) > 1.0)
        a = mid;
      else
        b = mid;
    }
    result.t0 = b;
    result.argmax = argmax_at(components, b);
    return result;
  }
  throw PrecisionError("first-crossing solver did not converge");
}

std::vector<ExpPoly> exponential_components(const OrderedBasis& basis, const Vector& d) {
  // (e^{-tA} d) at depth k of a chain = e^{-alpha t} sum_m (-t)^m / m! d_{k+m}.
  std::vector<ExpPoly> out;
  for (const auto& chain : basis.chains()) {
    for (int k = 0; k < chain.size; ++k) {
      ExpPoly c;
      c.alpha = chain.alpha;
      c.witness = WitnessLevel{chain.alpha, chain.size, k + 1};
      double fact = 1.0;
      for (int m = 0; k + m < chain.size; ++m) {
        if (m > 0) fact *= m;
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        c.coeffs.push_back(sign * d(chain.coordinate_of_depth[static_cast<std::size_t>(k + m)]) /
                           fact);
      }
      while (!c.coeffs.empty() && c.coeffs.back() == 0.0) c.coeffs.pop_back();
      if (!c.coeffs.empty()) out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace heintze
