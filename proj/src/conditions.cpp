#include "dyadlab/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "dyadlab/operators.hpp"

namespace dyadlab {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Per-leaf ancestor-path sums of K(Q) * weight(Q): path[l] = sum over cubes
// containing leaf l of K(Q) * weight(Q). Also returns the per-cube partial
// path sums (ancestors of Q inclusive) used to localize to subtrees.
std::vector<double> path_sums(const DyadicTree& tree, const Kernel& kernel,
                              const MeasureView& weight) {
  std::vector<double> down(tree.cube_count());
  down[0] = kernel[0] * weight.total(0);
  for (std::size_t cube = 1; cube < tree.cube_count(); ++cube) {
    down[cube] = down[tree.parent(cube)] + kernel[cube] * weight.total(cube);
  }
  return down;
}

// max_Q over cubes of positive `norm_mass` of
//   norm_mass(Q)^{-1/norm_exp} * (int_Q (sum_{Q' in Q} K(Q')w(Q')1_{Q'})^{inner_exp} d nu)^{1/inner_exp}
double localized_test_max(const DyadicTree& tree, const Kernel& kernel, const MeasureView& w,
                          const MeasureView& nu, const MeasureView& norm_mass, double inner_exp,
                          double norm_exp) {
  const std::vector<double> down = path_sums(tree, kernel, w);
  const std::size_t first_leaf_cube = tree.leaf_cube(0);
  double best = 0.0;
  for (std::size_t cube = 0; cube < tree.cube_count(); ++cube) {
    const double mass = norm_mass.total(cube);
    if (!(mass > 0.0)) continue;
    const double above = cube == 0 ? 0.0 : down[tree.parent(cube)];
    double integral = 0.0;
    for (std::size_t leaf = tree.leaf_begin(cube); leaf < tree.leaf_end(cube); ++leaf) {
      const double m = nu.leaf_mass(leaf);
      if (m > 0.0) integral += std::pow(down[first_leaf_cube + leaf] - above, inner_exp) * m;
    }
    const double value = std::pow(integral, 1.0 / inner_exp) * std::pow(mass, -1.0 / norm_exp);
    best = std::max(best, value);
  }
  return best;
}

}  // namespace

double dlbo_constant(const DyadicTree& tree, const Kernel& kernel, const MeasureView& base,
                     DlboMode mode) {
  // sup/inf over leaves of Q of S_Q(x) = sum_{x in Q' in Q} K(Q') base(Q'),
  // built bottom-up: the base(Q) normalization cancels in the ratio.
  const std::size_t branching = tree.branching();
  const std::size_t first_leaf_cube = tree.leaf_cube(0);
  std::vector<double> sup(tree.cube_count()), inf(tree.cube_count());
  std::vector<char> has_mass_leaf(tree.cube_count(), 0);

  for (std::size_t leaf = 0; leaf < tree.leaf_count(); ++leaf) {
    const std::size_t cube = first_leaf_cube + leaf;
    const double own = kernel[cube] * base.total(cube);
    sup[cube] = own;
    inf[cube] = own;
    has_mass_leaf[cube] = base.leaf_mass(leaf) > 0.0 ? 1 : 0;
    if (mode == DlboMode::almost_everywhere && !has_mass_leaf[cube]) inf[cube] = kInfinity;
  }
  for (std::size_t cube = first_leaf_cube; cube-- > 0;) {
    const std::size_t base_child = tree.child(cube, 0);
    double child_sup = -kInfinity;
    double child_inf = kInfinity;
    for (std::size_t d = 0; d < branching; ++d) {
      child_sup = std::max(child_sup, sup[base_child + d]);
      child_inf = std::min(child_inf, inf[base_child + d]);
      has_mass_leaf[cube] |= has_mass_leaf[base_child + d];
    }
    const double own = kernel[cube] * base.total(cube);
    sup[cube] = own + child_sup;
    inf[cube] = own + child_inf;
  }

  double a = 1.0;
  for (std::size_t cube = 0; cube < tree.cube_count(); ++cube) {
    if (!(base.total(cube) > 0.0)) continue;
    if (!(sup[cube] > 0.0)) continue;  // kbar identically zero on Q
    if (!(inf[cube] > 0.0)) return kInfinity;
    a = std::max(a, sup[cube] / inf[cube]);
  }
  return a;
}

SawyerConstants sawyer_constants(const Instance& instance) {
  const auto& e = instance.exponents;
  SawyerConstants c;
  c.forward = localized_test_max(instance.tree, instance.kernel, instance.omega, instance.omega,
                                 instance.sigma, e.q, e.p);
  c.backward = localized_test_max(instance.tree, instance.kernel, instance.sigma, instance.sigma,
                                  instance.omega, e.p_dual, e.q_dual);
  return c;
}

WolffNorms wolff_norms(const Instance& instance) {
  const auto& e = instance.exponents;
  WolffNorms n;

  LeafFunction w = wolff_potential(instance, e.q, Base::omega, Base::sigma);
  for (double& v : w) v = std::pow(v, 1.0 / e.q);
  n.sigma_side = lp_norm(w, e.r, instance.sigma);

  LeafFunction w_dual = wolff_potential(instance, e.p_dual, Base::sigma, Base::omega);
  for (double& v : w_dual) v = std::pow(v, 1.0 / e.p_dual);
  n.omega_side = lp_norm(w_dual, e.r, instance.omega);

  n.c2 = std::max(n.sigma_side, n.omega_side);
  return n;
}

}  // namespace dyadlab
