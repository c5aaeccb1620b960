#include "dyadlab/measure.hpp"

#include <cmath>
#include <stdexcept>

namespace dyadlab {

MeasureView::MeasureView(const DyadicTree& tree, LeafFunction leaf_masses)
    : leaf_mass_(std::move(leaf_masses)) {
  if (leaf_mass_.size() != tree.leaf_count()) {
    throw std::invalid_argument("MeasureView: leaf mass vector does not match the tree");
  }
  for (double m : leaf_mass_) {
    if (!(m >= 0.0)) throw std::invalid_argument("MeasureView: leaf masses must be >= 0");
  }

  cube_total_.assign(tree.cube_count(), 0.0);
  const std::size_t first_leaf_cube = tree.leaf_cube(0);
  for (std::size_t leaf = 0; leaf < leaf_mass_.size(); ++leaf) {
    cube_total_[first_leaf_cube + leaf] = leaf_mass_[leaf];
  }
  const std::size_t branching = tree.branching();
  for (std::size_t cube = first_leaf_cube; cube-- > 0;) {
    double sum = 0.0;
    const std::size_t base = tree.child(cube, 0);
    for (std::size_t d = 0; d < branching; ++d) sum += cube_total_[base + d];
    cube_total_[cube] = sum;
  }
}

std::vector<double> aggregate(const DyadicTree& tree, const LeafFunction& f,
                              const MeasureView& mu) {
  if (f.size() != tree.leaf_count() || mu.leaf_count() != tree.leaf_count()) {
    throw std::invalid_argument("aggregate: shape mismatch");
  }
  std::vector<double> integral(tree.cube_count(), 0.0);
  const std::size_t first_leaf_cube = tree.leaf_cube(0);
  for (std::size_t leaf = 0; leaf < f.size(); ++leaf) {
    integral[first_leaf_cube + leaf] = f[leaf] * mu.leaf_mass(leaf);
  }
  const std::size_t branching = tree.branching();
  for (std::size_t cube = first_leaf_cube; cube-- > 0;) {
    double sum = 0.0;
    const std::size_t base = tree.child(cube, 0);
    for (std::size_t d = 0; d < branching; ++d) sum += integral[base + d];
    integral[cube] = sum;
  }
  return integral;
}

double lp_norm(const LeafFunction& f, double s, const MeasureView& mu) {
  if (f.size() != mu.leaf_count()) throw std::invalid_argument("lp_norm: shape mismatch");
  if (!(s > 0.0)) throw std::invalid_argument("lp_norm: exponent must be > 0");
  double sum = 0.0;
  for (std::size_t leaf = 0; leaf < f.size(); ++leaf) {
    const double m = mu.leaf_mass(leaf);
    if (m > 0.0) sum += std::pow(std::abs(f[leaf]), s) * m;
  }
  return std::pow(sum, 1.0 / s);
}

}  // namespace dyadlab
