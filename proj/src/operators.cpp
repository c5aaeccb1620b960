#include "dyadlab/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace dyadlab {

namespace {

// Pushes per-cube contributions down the tree: down[Q] = sum of contrib over
// ancestors of Q (inclusive). Returns the per-leaf values.
LeafFunction accumulate_down(const DyadicTree& tree, const std::vector<double>& contrib) {
  std::vector<double> down(tree.cube_count(), 0.0);
  down[0] = contrib[0];
  for (std::size_t cube = 1; cube < tree.cube_count(); ++cube) {
    down[cube] = down[tree.parent(cube)] + contrib[cube];
  }
  LeafFunction out(tree.leaf_count());
  const std::size_t first_leaf_cube = tree.leaf_cube(0);
  for (std::size_t leaf = 0; leaf < out.size(); ++leaf) out[leaf] = down[first_leaf_cube + leaf];
  return out;
}

// Subtree sums of a per-cube weight vector: up[Q] = sum over cubes inside Q.
std::vector<double> accumulate_up(const DyadicTree& tree, std::vector<double> weight) {
  const std::size_t branching = tree.branching();
  const std::size_t first_leaf_cube = tree.leaf_cube(0);
  for (std::size_t cube = first_leaf_cube; cube-- > 0;) {
    const std::size_t base = tree.child(cube, 0);
    for (std::size_t d = 0; d < branching; ++d) weight[cube] += weight[base + d];
  }
  return weight;
}

}  // namespace

LeafFunction apply_T(const DyadicTree& tree, const Kernel& kernel, const MeasureView& base,
                     const LeafFunction& f) {
  const std::vector<double> integral = aggregate(tree, f, base);
  std::vector<double> contrib(tree.cube_count());
  for (std::size_t cube = 0; cube < contrib.size(); ++cube) {
    contrib[cube] = kernel[cube] * integral[cube];
  }
  return accumulate_down(tree, contrib);
}

LeafFunction kbar(const DyadicTree& tree, const Kernel& kernel, const MeasureView& base,
                  std::size_t cube) {
  LeafFunction out(tree.leaf_count(), 0.0);
  const double mass = base.total(cube);
  if (mass <= 0.0) return out;  // kbar(Q) := 0 when base(Q) = 0

  // Accumulate K(Q') base(Q') along paths of the subtree rooted at `cube`.
  const int top_level = tree.level_of(cube);
  const std::size_t top_offset = tree.offset_in_level(cube);
  std::vector<double> previous{kernel[cube] * base.total(cube)};
  const std::size_t branching = tree.branching();
  std::size_t width = 1;
  for (int level = top_level; level < tree.depth(); ++level) {
    width *= branching;
    const std::size_t row_begin = tree.cube_at(level + 1, top_offset * width);
    std::vector<double> current(width);
    for (std::size_t i = 0; i < width; ++i) {
      const std::size_t c = row_begin + i;
      current[i] = previous[i / branching] + kernel[c] * base.total(c);
    }
    previous = std::move(current);
  }
  const std::size_t leaf0 = tree.leaf_begin(cube);
  for (std::size_t i = 0; i < previous.size(); ++i) out[leaf0 + i] = previous[i] / mass;
  return out;
}

LeafFunction wolff_potential(const DyadicTree& tree, const Kernel& kernel,
                             const MeasureView& base, const MeasureView& target, double s) {
  if (!(s > 1.0)) throw std::invalid_argument("wolff_potential: requires s > 1");
  std::vector<double> weight(tree.cube_count());
  for (std::size_t cube = 0; cube < weight.size(); ++cube) {
    weight[cube] = kernel[cube] * base.total(cube) * target.total(cube);
  }
  const std::vector<double> subtree = accumulate_up(tree, std::move(weight));

  std::vector<double> contrib(tree.cube_count(), 0.0);
  for (std::size_t cube = 0; cube < contrib.size(); ++cube) {
    const double mass = base.total(cube);
    if (mass > 0.0 && kernel[cube] > 0.0) {
      contrib[cube] = kernel[cube] * mass * std::pow(subtree[cube] / mass, s - 1.0);
    }
  }
  return accumulate_down(tree, contrib);
}

LeafFunction maximal_function(const DyadicTree& tree, const MeasureView& mu,
                              const LeafFunction& f) {
  for (double v : f) {
    if (!(v >= 0.0)) throw std::invalid_argument("maximal_function: requires f >= 0");
  }
  const std::vector<double> integral = aggregate(tree, f, mu);

  // -1 marks "no positive-mass cube seen along this path yet".
  std::vector<double> best(tree.cube_count());
  best[0] = mu.total(0) > 0.0 ? integral[0] / mu.total(0) : -1.0;
  for (std::size_t cube = 1; cube < tree.cube_count(); ++cube) {
    double candidate = best[tree.parent(cube)];
    if (mu.total(cube) > 0.0) {
      const double average = integral[cube] / mu.total(cube);
      if (average > candidate) candidate = average;
    }
    best[cube] = candidate;
  }
  LeafFunction out(tree.leaf_count());
  const std::size_t first_leaf_cube = tree.leaf_cube(0);
  for (std::size_t leaf = 0; leaf < out.size(); ++leaf) {
    const double value = best[first_leaf_cube + leaf];
    out[leaf] = value < 0.0 ? 0.0 : value;
  }
  return out;
}

double bilinear_form(const DyadicTree& tree, const Kernel& kernel, const MeasureView& sigma,
                     const MeasureView& omega, const LeafFunction& f, const LeafFunction& g) {
  const std::vector<double> f_integral = aggregate(tree, f, sigma);
  const std::vector<double> g_integral = aggregate(tree, g, omega);
  double sum = 0.0;
  for (std::size_t cube = 0; cube < tree.cube_count(); ++cube) {
    sum += kernel[cube] * f_integral[cube] * g_integral[cube];
  }
  return sum;
}

LeafFunction apply_T(const Instance& instance, Base base, const LeafFunction& f) {
  return apply_T(instance.tree, instance.kernel, instance.measure(base), f);
}

LeafFunction wolff_potential(const Instance& instance, double s, Base base, Base target) {
  return wolff_potential(instance.tree, instance.kernel, instance.measure(base),
                         instance.measure(target), s);
}

double bilinear_form(const Instance& instance, const LeafFunction& f, const LeafFunction& g) {
  return bilinear_form(instance.tree, instance.kernel, instance.sigma, instance.omega, f, g);
}

}  // namespace dyadlab
