#pragma once

#include "dyadlab/corona.hpp"
#include "dyadlab/instance.hpp"

namespace dyadlab {

/// The bilinear sum split along the two stopping families: terms whose joint
/// stopping parent has G inside F land in s_f, those with F inside G land in
/// s_g, coinciding pairs land in both. Always total <= s_f + s_g.
struct CoronaSplit {
  double total = 0.0;
  double s_f = 0.0;
  double s_g = 0.0;
};
CoronaSplit corona_split(const Instance& instance, const LeafFunction& f, const LeafFunction& g);

/// I1 = (sum_F avg_F(f)^p sigma(F))^{1/p} over the members of `forest_f`.
/// Bounded by 2^{1/p} p' ||f||_{L^p(d sigma)}.
double i1(const Instance& instance, const LeafFunction& f, const PrincipalForest& forest_f);

/// I21 = [sum_F {sigma(F)^{-1/p} (int_F (sum_{Q in F} K(Q) sigma(Q) 1_Q)^q
/// d omega)^{1/q}}^r]^{1/r}. Bounded by 2^{1/q} c(q)^{1/q} (r/q)' times the
/// sigma-side Wolff norm.
double i21(const Instance& instance, const PrincipalForest& forest_f);

/// I22 with I22^{q'} = sum_F int_{E(F)} g^{q'} d omega
///   + sum_F sum_{F' in ch*(F)} avg_{F'}(g)^{q'} omega(F'),
/// where members F' of zero omega-mass contribute only through the E-sets.
/// Satisfies I22^{q'} <= (1 + 2  2^{q'} q^{q'}) ||g||_{q'}^{q'}.
double i22(const Instance& instance, const LeafFunction& g, const PrincipalForest& forest_f,
           const PrincipalForest& forest_g);

/// Left side of the testing-sum estimate derived from the Wolff lemma with
/// alpha_Q = K(Q) omega(Q) int_Q f d sigma, plus the norm it is tested
/// against: lhs24 <= c(q)^{1/(q-1)} (q')^q ||T_K[f d sigma]||_{L^q(d omega)}^q.
struct NecessityChain {
  double lhs24 = 0.0;
  double tf_norm_q = 0.0;
  double bound = 0.0;
};
NecessityChain necessity_chain(const Instance& instance, const LeafFunction& f);

/// kappa = [c(q)^{1/(q-1)} (q')^q (p/q)']^{1/q}, the constant through which a
/// trace bound controls the sigma-side Wolff norm.
double kappa_nec(const ExponentTriple& exponents);

/// Both Wolff-norm bounds implied by a trace constant c1: the sigma side with
/// kappa_nec of (p, q), the omega side through the dual instance's exponents.
struct NecessityBound {
  double kappa_sigma = 0.0;
  double kappa_omega = 0.0;
  double sigma_bound = 0.0;  // kappa_sigma * c1
  double omega_bound = 0.0;  // kappa_omega * c1
};
NecessityBound necessity_bound(const Instance& instance, double c1);

/// Constant assembled from the I1, I21, I22 chains plus the half with the
/// roles of (f, sigma, p) and (g, omega, q') exchanged. For unit-norm
/// nonnegative f, g the bilinear sum never exceeds kappa_suf * C2.
double kappa_suf(const ExponentTriple& exponents);

struct SufficiencyBound {
  double kappa = 0.0;
  double c2 = 0.0;
  double bound = 0.0;  // kappa * c2
};
SufficiencyBound sufficiency_bound(const Instance& instance);

}  // namespace dyadlab
