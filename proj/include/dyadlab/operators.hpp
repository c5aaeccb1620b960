#pragma once

#include "dyadlab/instance.hpp"
#include "dyadlab/kernel.hpp"
#include "dyadlab/measure.hpp"
#include "dyadlab/tree.hpp"

namespace dyadlab {

/// T_K[f d(base)](x) = sum_Q K(Q) (integral of f over Q d(base)) 1_Q(x),
/// evaluated per leaf via one bottom-up aggregation pass and one top-down
/// accumulation pass, O(#cubes) total.
LeafFunction apply_T(const DyadicTree& tree, const Kernel& kernel, const MeasureView& base,
                     const LeafFunction& f);

/// Averaged kernel on the cube Q:
///   (1/base(Q)) sum_{Q' in Q} K(Q') base(Q') 1_{Q'}(x) on Q,
/// identically zero off Q and also on all of Q when base(Q) = 0.
LeafFunction kbar(const DyadicTree& tree, const Kernel& kernel, const MeasureView& base,
                  std::size_t cube);

/// Discrete Wolff potential with exponent s > 1:
///   x -> sum_Q K(Q) base(Q) (integral of kbar_base(Q) d(target))^{s-1} 1_Q(x).
/// Cubes with base(Q) = 0 contribute nothing (their averaged kernel vanishes).
LeafFunction wolff_potential(const DyadicTree& tree, const Kernel& kernel,
                             const MeasureView& base, const MeasureView& target, double s);

/// Dyadic maximal operator: the largest mu-average of f over cubes of positive
/// mass containing the point; 0 where no such cube exists. Requires f >= 0.
LeafFunction maximal_function(const DyadicTree& tree, const MeasureView& mu,
                              const LeafFunction& f);

/// sum_Q K(Q) (integral of f d sigma over Q)(integral of g d omega over Q).
double bilinear_form(const DyadicTree& tree, const Kernel& kernel, const MeasureView& sigma,
                     const MeasureView& omega, const LeafFunction& f, const LeafFunction& g);

// Instance-level conveniences.
LeafFunction apply_T(const Instance& instance, Base base, const LeafFunction& f);
LeafFunction wolff_potential(const Instance& instance, double s, Base base, Base target);
double bilinear_form(const Instance& instance, const LeafFunction& f, const LeafFunction& g);

}  // namespace dyadlab
