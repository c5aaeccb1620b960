#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dyadlab {

/// p' = p/(p-1) for 1 < p < infinity.
inline double dual_exponent(double p) {
  if (!(p > 1.0)) throw std::domain_error("dual_exponent: requires p > 1");
  return p / (p - 1.0);
}

/// r with 1/q = 1/r + 1/p, the exponent carrying both Wolff-condition norms.
inline double exponent_r(double p, double q) {
  if (!(1.0 < q && q < p)) throw std::domain_error("exponent_r: requires 1 < q < p");
  return 1.0 / (1.0 / q - 1.0 / p);
}

/// Exponent bundle (p, q) with 1 < q < p < infinity and the derived p', q', r.
struct ExponentTriple {
  double p = 0.0;
  double q = 0.0;
  double p_dual = 0.0;
  double q_dual = 0.0;
  double r = 0.0;

  static ExponentTriple make(double p, double q) {
    if (!(1.0 < q && q < p && std::isfinite(p))) {
      throw std::domain_error("ExponentTriple: requires 1 < q < p < infinity");
    }
    ExponentTriple e;
    e.p = p;
    e.q = q;
    e.p_dual = dual_exponent(p);
    e.q_dual = dual_exponent(q);
    e.r = exponent_r(p, q);

    // theta := q'/p' must exceed 1 and satisfy theta' p' = r.
    const double theta = e.q_dual / e.p_dual;
    if (!(theta > 1.0)) throw std::domain_error("ExponentTriple: theta = q'/p' must exceed 1");
    const double theta_dual_p_dual = dual_exponent(theta) * e.p_dual;
    if (std::abs(theta_dual_p_dual - e.r) > 1e-9 * (1.0 + std::abs(e.r))) {
      throw std::domain_error("ExponentTriple: theta' p' != r beyond tolerance");
    }
    // 1/q = 1/r + 1/p must hold to machine precision.
    if (std::abs(1.0 / e.q - (1.0 / e.r + 1.0 / e.p)) > 1e-12) {
      throw std::domain_error("ExponentTriple: 1/q = 1/r + 1/p violated");
    }
    return e;
  }

  /// Exponents of the dual trace inequality: (p, q) -> (q', p').
  ExponentTriple dual() const { return make(q_dual, p_dual); }
};

}  // namespace dyadlab
