#pragma once

#include <vector>

#include "dyadlab/tree.hpp"

namespace dyadlab {

/// Real values constant on the leaf cells, one entry per leaf.
using LeafFunction = std::vector<double>;

/// A discrete nonnegative measure given by one atom per leaf cell, with the
/// per-cube totals cached so that mu(Q) is a lookup for every cube of the tree.
class MeasureView {
 public:
  MeasureView(const DyadicTree& tree, LeafFunction leaf_masses);

  const LeafFunction& leaf_masses() const { return leaf_mass_; }
  double leaf_mass(std::size_t leaf) const { return leaf_mass_[leaf]; }

  /// mu(Q) for any cube index.
  double total(std::size_t cube) const { return cube_total_[cube]; }
  /// mu(Q0), the whole-tree mass.
  double total() const { return cube_total_[0]; }

  std::size_t leaf_count() const { return leaf_mass_.size(); }
  std::size_t cube_count() const { return cube_total_.size(); }

 private:
  LeafFunction leaf_mass_;
  std::vector<double> cube_total_;
};

/// Per-cube integrals: result[Q] = sum over leaves of Q of f * leaf mass,
/// computed bottom-up in one pass.
std::vector<double> aggregate(const DyadicTree& tree, const LeafFunction& f,
                              const MeasureView& mu);

/// (sum_l |f(l)|^s mass(l))^{1/s} for s > 0.
double lp_norm(const LeafFunction& f, double s, const MeasureView& mu);

}  // namespace dyadlab
