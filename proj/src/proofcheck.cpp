#include "dyadlab/proofcheck.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dyadlab/conditions.hpp"
#include "dyadlab/operators.hpp"

namespace dyadlab {

CoronaSplit corona_split(const Instance& instance, const LeafFunction& f,
                         const LeafFunction& g) {
  const auto& tree = instance.tree;
  const PrincipalForest forest_f = principal_cubes(tree, f, instance.sigma, tree.root());
  const PrincipalForest forest_g = principal_cubes(tree, g, instance.omega, tree.root());

  const std::vector<double> f_integral = aggregate(tree, f, instance.sigma);
  const std::vector<double> g_integral = aggregate(tree, g, instance.omega);

  CoronaSplit split;
  for (std::size_t cube = 0; cube < tree.cube_count(); ++cube) {
    const double term = instance.kernel[cube] * f_integral[cube] * g_integral[cube];
    if (term == 0.0) continue;
    split.total += term;
    const std::size_t member_f = stopping_parent(forest_f, cube);
    const std::size_t member_g = stopping_parent(forest_g, cube);
    if (tree.contains(member_f, member_g)) split.s_f += term;
    if (tree.contains(member_g, member_f)) split.s_g += term;
  }
  return split;
}

double i1(const Instance& instance, const LeafFunction& f, const PrincipalForest& forest_f) {
  const std::vector<double> integral = aggregate(instance.tree, f, instance.sigma);
  const double p = instance.exponents.p;
  double sum = 0.0;
  for (std::size_t id = 0; id < forest_f.member_count(); ++id) {
    const double mass = forest_f.member_mass[id];
    sum += std::pow(integral[forest_f.member_cube[id]] / mass, p) * mass;
  }
  return std::pow(sum, 1.0 / p);
}

double i21(const Instance& instance, const PrincipalForest& forest_f) {
  const auto& tree = instance.tree;
  const auto& e = instance.exponents;

  // Path sums of K * sigma localize the inner function to each member.
  std::vector<double> down(tree.cube_count());
  down[0] = instance.kernel[0] * instance.sigma.total(0);
  for (std::size_t cube = 1; cube < tree.cube_count(); ++cube) {
    down[cube] = down[tree.parent(cube)] + instance.kernel[cube] * instance.sigma.total(cube);
  }

  const std::size_t first_leaf_cube = tree.leaf_cube(0);
  double sum = 0.0;
  for (std::size_t id = 0; id < forest_f.member_count(); ++id) {
    const std::size_t member = forest_f.member_cube[id];
    const double above = member == 0 ? 0.0 : down[tree.parent(member)];
    double integral = 0.0;
    for (std::size_t leaf = tree.leaf_begin(member); leaf < tree.leaf_end(member); ++leaf) {
      const double m = instance.omega.leaf_mass(leaf);
      if (m > 0.0) integral += std::pow(down[first_leaf_cube + leaf] - above, e.q) * m;
    }
    const double value =
        std::pow(integral, 1.0 / e.q) * std::pow(forest_f.member_mass[id], -1.0 / e.p);
    sum += std::pow(value, e.r);
  }
  return std::pow(sum, 1.0 / e.r);
}

double i22(const Instance& instance, const LeafFunction& g, const PrincipalForest& forest_f,
           const PrincipalForest& forest_g) {
  const auto& tree = instance.tree;
  const double q_dual = instance.exponents.q_dual;
  const std::vector<double> g_integral = aggregate(tree, g, instance.omega);

  double total = 0.0;
  for (std::size_t id = 0; id < forest_f.member_count(); ++id) {
    for (std::size_t leaf : forest_f.e_set[id]) {
      const double m = instance.omega.leaf_mass(leaf);
      if (m > 0.0) total += std::pow(g[leaf], q_dual) * m;
    }
    for (std::size_t child :
         ch_star(tree, forest_f, forest_g, forest_f.member_cube[id])) {
      const double mass = instance.omega.total(child);
      if (mass > 0.0) total += std::pow(g_integral[child] / mass, q_dual) * mass;
    }
  }
  return std::pow(total, 1.0 / q_dual);
}

NecessityChain necessity_chain(const Instance& instance, const LeafFunction& f) {
  const auto& tree = instance.tree;
  const auto& e = instance.exponents;
  const std::vector<double> f_integral = aggregate(tree, f, instance.sigma);

  std::vector<double> alpha(tree.cube_count());
  for (std::size_t cube = 0; cube < alpha.size(); ++cube) {
    alpha[cube] = instance.kernel[cube] * instance.omega.total(cube) * f_integral[cube];
  }
  std::vector<double> subtree(alpha);
  const std::size_t branching = tree.branching();
  for (std::size_t cube = tree.leaf_cube(0); cube-- > 0;) {
    const std::size_t base = tree.child(cube, 0);
    for (std::size_t d = 0; d < branching; ++d) subtree[cube] += subtree[base + d];
  }

  NecessityChain chain;
  for (std::size_t cube = 0; cube < alpha.size(); ++cube) {
    const double mass = instance.omega.total(cube);
    if (mass > 0.0 && alpha[cube] > 0.0) {
      chain.lhs24 += alpha[cube] * std::pow(subtree[cube] / mass, e.q - 1.0);
    }
  }
  chain.tf_norm_q = lp_norm(apply_T(instance, Base::sigma, f), e.q, instance.omega);
  chain.bound = std::pow(c_of_s(e.q), 1.0 / (e.q - 1.0)) * std::pow(e.q_dual, e.q) *
                std::pow(chain.tf_norm_q, e.q);
  return chain;
}

double kappa_nec(const ExponentTriple& e) {
  const double inner = std::pow(c_of_s(e.q), 1.0 / (e.q - 1.0)) * std::pow(e.q_dual, e.q) *
                       dual_exponent(e.p / e.q);
  return std::pow(inner, 1.0 / e.q);
}

NecessityBound necessity_bound(const Instance& instance, double c1) {
  NecessityBound bound;
  bound.kappa_sigma = kappa_nec(instance.exponents);
  bound.kappa_omega = kappa_nec(instance.exponents.dual());
  bound.sigma_bound = bound.kappa_sigma * c1;
  bound.omega_bound = bound.kappa_omega * c1;
  return bound;
}

namespace {

// One half of the final estimate: 2 I1 I21 I22 with every factor replaced by
// its bound, normalized by the f and g norms it absorbs.
double kappa_suf_half(const ExponentTriple& e) {
  const double i1_factor = std::pow(2.0, 1.0 / e.p) * e.p_dual;
  const double i21_factor =
      std::pow(2.0, 1.0 / e.q) * std::pow(c_of_s(e.q), 1.0 / e.q) * dual_exponent(e.r / e.q);
  const double i22_factor =
      std::pow(1.0 + 2.0 * std::pow(2.0, e.q_dual) * std::pow(e.q, e.q_dual), 1.0 / e.q_dual);
  return 2.0 * i1_factor * i21_factor * i22_factor;
}

}  // namespace

double kappa_suf(const ExponentTriple& e) { return kappa_suf_half(e) + kappa_suf_half(e.dual()); }

SufficiencyBound sufficiency_bound(const Instance& instance) {
  SufficiencyBound bound;
  bound.kappa = kappa_suf(instance.exponents);
  bound.c2 = wolff_norms(instance).c2;
  bound.bound = bound.kappa * bound.c2;
  return bound;
}

}  // namespace dyadlab
